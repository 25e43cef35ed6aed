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


// Brute-force reference implementations used by the unit and acceptance tests.

#pragma once

#include "hdgeom/common.hpp"
#include "hdgeom/geodesic.hpp"
#include "hdgeom/homology.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hdgeom::oracle {

/// Rips persistence by enumerating every simplex up to max_dim + 1 and
/// reducing the full boundary matrix over Z/2 without any optimisation.
/// Zero-persistence pairs are dropped; output is sorted.
PersistenceDiagram naive_rips(const DistanceMatrix& dm, int max_dim, double max_edge);

/// Bottleneck distance by enumerating every partial matching.
/// Suitable for at most about six points per side.
double exhaustive_bottleneck(const std::vector<PersistencePair>& a, const std::vector<PersistencePair>& b);

/// All-pairs shortest paths by Floyd-Warshall on the adjacency of g.
Matrix floyd_warshall(const KnnGraph& g);

/// Max over both directed nearest-point distances, double loop.
double brute_hausdorff(const Matrix& a, const Matrix& b);

/// Triple-loop Gram matrix.
Matrix brute_gram(const Matrix& y);

/// Random symmetric distance matrix from points in the plane, rounded to a
/// coarse grid so that ties are common.
DistanceMatrix random_cloud(std::mt19937_64& rng, std::size_t n, bool with_ties);

/// Random diagram in one dimension with up to max_points finite points and the
/// given number of essential points.
std::vector<PersistencePair> random_diagram(std::mt19937_64& rng, std::size_t max_points, std::size_t essential,
                                            bool integer_grid);

/// Random connected graph on n vertices with integer-valued weights in [1, max_weight].
KnnGraph random_integer_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra_edges, int max_weight);

} // namespace hdgeom::oracle
