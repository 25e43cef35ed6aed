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
#include "hdgeom/harness.hpp"
#include "hdgeom/homology.hpp"
#include "hdgeom/io.hpp"
#include "hdgeom/model.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hdgeom::detail {

/// Adds the elapsed wall-clock time of a scope to report.timings_seconds.
class StageTimer
{
public:
   StageTimer(ExperimentReport& report, std::string stage);
   ~StageTimer();
   StageTimer(const StageTimer&) = delete;
   StageTimer& operator=(const StageTimer&) = delete;

private:
   ExperimentReport& report_;
   std::string stage_;
   std::chrono::steady_clock::time_point start_;
};

/// Seeded uniform subsample of min(m, n) indices out of n, in increasing order.
std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t m, std::uint64_t seed);

Matrix select_rows(const Matrix& m, const std::vector<std::size_t>& rows);

struct TopSvd
{
   Matrix coords;          // n x rank, Y V_rank
   Vector singular_values; // descending
   double energy = 0.0;    // share of the squared Frobenius norm in the top `rank`
};

/// Top singular directions through the eigendecomposition of the smaller Gram
/// matrix. Each right singular vector's largest-magnitude entry is made positive.
TopSvd top_svd(const Matrix& y, std::size_t rank);

/// Coordinates on the top `dims` principal components of the column-centred data.
Matrix pca_project(const Matrix& y, std::size_t dims);

/// True when the first expected.size() Betti counts match.
bool betti_matches(const BettiEstimate& betti, const std::vector<std::size_t>& expected);

std::string betti_text(const BettiEstimate& betti, std::size_t dims);

SamplingScheme scheme_from(const std::string& name);

int checked_max_dim(const ExperimentConfig& cfg);

RipsOptions rips_options(const ExperimentConfig& cfg);

/// "3" -> "3", 2.5 -> "2.5" for artifact names.
std::string tag(double value);

Check fraction_check(const std::string& name, bool hard, std::size_t hits, std::size_t total, double min_fraction);

/// Returns g when connected; otherwise the graph from auto_build. Records the
/// k used in info.
KnnGraph connected_graph(const KnnGraph& g, const std::function<KnnGraph()>& auto_build, Json& info);

} // namespace hdgeom::detail
