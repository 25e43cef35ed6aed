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

#include "hdgeom/serialize.hpp"

#include <cmath>

namespace hdgeom {

Json number(double value)
{
   if (std::isnan(value))
   {
      return "nan";
   }
   if (std::isinf(value))
   {
      return value > 0 ? "inf" : "-inf";
   }
   return value;
}

Json to_json(const DeviationReport& report)
{
   Json j;
   j["max_abs_deviation"] = number(report.max_abs_deviation);
   j["normalization"] = to_string(report.normalization);
   j["sigma_sq_used"] = number(report.sigma_sq_used);
   j["diagonal_excluded"] = report.diagonal_excluded;
   j["argmax"] = {report.argmax_i, report.argmax_j};
   return j;
}

Json to_json(const PersistenceDiagram& dgm)
{
   Json j;
   j["max_dim"] = dgm.max_dim;
   j["max_edge"] = number(dgm.max_edge);
   Json counts = Json::array();
   for (int d = 0; d <= dgm.max_dim; ++d)
   {
      counts.push_back(dgm.count(d));
   }
   j["pairs_per_dim"] = counts;
   return j;
}

Json to_json(const BettiEstimate& betti)
{
   Json j;
   j["counts"] = betti.counts;
   j["rule"] = betti.rule;
   Json ratios = Json::array();
   for (const double r : betti.persistence_ratios)
   {
      ratios.push_back(number(r));
   }
   j["persistence_ratios"] = ratios;
   return j;
}

Json to_json(const BottleneckResult& result)
{
   Json j;
   j["distance"] = number(result.distance);
   j["infinite_mismatch"] = result.infinite_mismatch;
   return j;
}

Json to_json(const IsometryReport& report, bool with_moving_average)
{
   Json j;
   j["slope"] = number(report.slope);
   j["intercept"] = number(report.intercept);
   j["rho"] = number(report.rho);
   j["pairs_used"] = report.pairs_used;
   j["pairs_total"] = report.pairs_total;
   j["window"] = report.window;
   if (with_moving_average)
   {
      Json bins = Json::array();
      for (const auto& bin : report.moving_average)
      {
         bins.push_back({number(bin.center), number(bin.mean), number(bin.std)});
      }
      j["moving_average"] = bins;
   }
   return j;
}

Json to_json(const RateStudy& study)
{
   Json j;
   j["label"] = study.label;
   j["seeds"] = study.seeds;
   j["fitted_slope"] = number(study.fitted_slope);
   j["fitted_intercept"] = number(study.fitted_intercept);
   Json cells = Json::array();
   for (const auto& cell : study.cells)
   {
      Json c;
      c["n"] = cell.n;
      c["p"] = cell.p;
      c["p_int"] = number(cell.p_int);
      c["median"] = number(cell.median);
      Json per_seed = Json::array();
      for (const double v : cell.per_seed)
      {
         per_seed.push_back(number(v));
      }
      c["per_seed"] = per_seed;
      cells.push_back(c);
   }
   j["cells"] = cells;
   return j;
}

} // namespace hdgeom
