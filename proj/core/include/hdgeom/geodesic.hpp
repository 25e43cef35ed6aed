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

#include "hdgeom/common.hpp"
#include "hdgeom/model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hdgeom {

// ---------------------------------------------------------------------------
// Latent metrics
// ---------------------------------------------------------------------------

/// Plain Euclidean distance on physical positions.
struct OpenFieldEuclid
{
};

/// Euclidean distance between points superimposed on the rhombus.
struct RhombusEuclid
{
   FlatTorusRhombus rhombus;
};

/// Flat-torus distance: minimum over the 9 lattice translates of z'.
struct RhombusTeleport
{
   FlatTorusRhombus rhombus;
};

/// Points are torus angles (theta1, theta2) mapped to the ring torus in R^3.
struct Torus3D
{
   double major_radius = 2.0;
   double minor_radius = 1.0;
};

using LatentMetric = std::variant<OpenFieldEuclid, RhombusEuclid, RhombusTeleport, Torus3D>;

/// Euclidean distance between rows of an arbitrary-dimension matrix.
struct AmbientEuclid
{
};

void validate(const LatentMetric& metric);
std::string name_of(const LatentMetric& metric);

/// Throws when a point is outside the metric's domain.
double latent_distance(const LatentMetric& metric, std::span<const double> z, std::span<const double> zp);

/// Checks every row against the metric's domain (rhombus membership, dimension).
void check_domain(const LatentMetric& metric, const Matrix& points, double tol = 1e-9);

/// Rows of angles mapped to ((R + r cos t2) cos t1, (R + r cos t2) sin t1, r sin t2).
Matrix torus3d_embedding(const Torus3D& torus, const Matrix& angles);

/// Reduces arbitrary planar points modulo the rhombus lattice into the
/// fundamental cell.
Matrix superimpose_on_rhombus(const FlatTorusRhombus& rhombus, const Matrix& points);

// ---------------------------------------------------------------------------
// k-NN graphs
// ---------------------------------------------------------------------------

struct GraphEdge
{
   std::uint32_t to = 0;
   double weight = 0.0;
};

struct KnnGraph
{
   std::size_t n = 0;
   std::size_t k = 0;
   bool symmetrized = true;
   std::vector<std::vector<GraphEdge>> adjacency; // sorted by target index

   std::size_t edge_count() const;
   bool connected() const;
};

struct KnnOptions
{
   /// Neighbours per vertex; nullopt selects the smallest k that connects the
   /// symmetrized graph.
   std::optional<std::size_t> k = 10;
   bool symmetrize = true;
};

/// k nearest neighbours under the metric, ties broken by the smaller index,
/// symmetrized by union.
KnnGraph knn_graph(const Matrix& points, const LatentMetric& metric, const KnnOptions& options = {});
KnnGraph knn_graph(const Matrix& points, AmbientEuclid metric, const KnnOptions& options = {});

/// Undirected graph from an explicit edge list (u, v, w). Parallel edges keep
/// the smallest weight. Negative weights are accepted here and rejected by
/// shortest_paths.
struct WeightedEdge
{
   std::size_t u = 0;
   std::size_t v = 0;
   double w = 0.0;
};
KnnGraph graph_from_edges(std::size_t n, std::span<const WeightedEdge> edges);

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

struct GeodesicMatrix
{
   Matrix lengths;                   // |sources| x n
   std::vector<std::size_t> sources; // row s holds paths from sources[s]
   bool all_sources = true;
   bool has_unreachable = false;

   std::size_t n() const { return static_cast<std::size_t>(lengths.cols()); }
};

/// Dijkstra from each source (all vertices when `sources` is empty).
/// Unreachable targets get +inf and set has_unreachable.
GeodesicMatrix shortest_paths(const KnnGraph& g, std::span<const std::size_t> sources = {});

/// The vertex-level re-tessellation of the teleport metric: the superimposed
/// points are copied into the 8 surrounding rhombi, a Euclidean k-NN graph is
/// built on all 9n points, and the path length to j is the minimum over its 9
/// copies with the source held in the central cell.
GeodesicMatrix retessellated_teleport_paths(const Matrix& points, const FlatTorusRhombus& rhombus,
                                            std::size_t k, std::span<const std::size_t> sources = {});

// ---------------------------------------------------------------------------
// Smoothing and regression
// ---------------------------------------------------------------------------

struct SmoothedPaths
{
   GeodesicMatrix paths;
   /// Neighbourhoods whose distances to the source were all equal.
   std::size_t uniform_fallbacks = 0;
};

/// Smoothing weights over a neighbourhood given the distances of its members
/// to the source: w_k proportional to max_l D_l - D_k. Falls back to uniform
/// weights (returning false) when every D is equal.
bool smoothing_weights(std::span<const double> distances_to_source, std::span<double> weights);

/// L~(i, j) = sum_{k in N_j} w_k L(i, k), N_j the k_smooth nearest positions
/// of j (j included, ties by index), weights from the positions' distances to
/// the source i.
SmoothedPaths smooth_path_lengths(const GeodesicMatrix& lengths, const Matrix& positions,
                                  std::size_t k_smooth = 10);

struct MovingAverageBin
{
   double center = 0.0;
   double mean = 0.0;
   double std = 0.0;
};

struct IsometryOptions
{
   /// Pairs per moving-average window; nullopt uses ceil(0.01 * pairs).
   std::optional<std::size_t> window;
   /// Point sets up to this size always use every pair.
   std::size_t all_pairs_max_n = 2000;
   /// Pairs drawn (seeded, without replacement) above all_pairs_max_n.
   std::size_t max_pairs = 1'000'000;
   std::uint64_t seed = 0;
};

struct IsometryReport
{
   double slope = 0.0;
   double intercept = 0.0;
   double rho = 0.0;
   std::size_t pairs_used = 0;
   std::size_t pairs_total = 0;
   std::size_t window = 0;
   std::vector<MovingAverageBin> moving_average;
};

/// OLS of Ly on Lz over the unordered pairs covered by both matrices, with
/// Pearson correlation and a fixed-count moving average over Lz-sorted pairs.
IsometryReport isometry_regression(const GeodesicMatrix& lz, const GeodesicMatrix& ly,
                                   const IsometryOptions& options = {});

} // namespace hdgeom
