/*
   Copyright 2026 The hdgeom Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "hdgeom/concentration.hpp"
#include "hdgeom/geodesic.hpp"
#include "hdgeom/homology.hpp"

#include <nlohmann/json.hpp>

namespace hdgeom {

using Json = nlohmann::ordered_json;

/// Non-finite values become the strings "inf", "-inf" or "nan".
Json number(double value);

Json to_json(const DeviationReport& report);
Json to_json(const PersistenceDiagram& dgm);
Json to_json(const BettiEstimate& betti);
Json to_json(const BottleneckResult& result);
Json to_json(const IsometryReport& report, bool with_moving_average = false);
Json to_json(const RateStudy& study);

} // namespace hdgeom
