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

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hdgeom {

enum class Scaling
{
   Raw,            // ||Y_i - Y_j||
   InvSqrtP,       // ||Y_i - Y_j|| / sqrt(p)
   SelfNormalized, // ||Y_i/|Y_i| - Y_j/|Y_j|||
};

std::string to_string(Scaling s);
Scaling scaling_from_string(const std::string& s);

struct DistanceMatrix
{
   Matrix d;
   Scaling scaling = Scaling::Raw;

   std::size_t size() const { return static_cast<std::size_t>(d.rows()); }
};

/// Square, zero diagonal, symmetric, finite and nonnegative.
void validate(const DistanceMatrix& dm);

DistanceMatrix distance_matrix(const Matrix& y, Scaling scaling);

/// Applies a scaling to the rows of Y (identity for Raw).
Matrix scaled_rows(const Matrix& y, Scaling scaling);

/// min_i max_j d_ij. Rips complexes at or above this scale are cones.
double enclosing_radius(const DistanceMatrix& dm);

/// Restricts a distance matrix to the given indices, in order.
DistanceMatrix submatrix(const DistanceMatrix& dm, std::span<const std::size_t> indices);

// ---------------------------------------------------------------------------
// Persistence diagrams
// ---------------------------------------------------------------------------

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair
{
   int dim = 0;
   double birth = 0.0;
   double death = kInfinity;

   bool infinite() const { return death == kInfinity; }
   double persistence() const { return death - birth; }

   friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
   friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram
{
   std::vector<PersistencePair> pairs; // sorted by (dim, birth, death)
   int max_dim = 0;
   double max_edge = 0.0;

   std::vector<PersistencePair> in_dim(int dim) const;
   std::size_t count(int dim) const;
};

struct RipsOptions
{
   int max_dim = 1;
   /// Filtration threshold; defaults to the enclosing radius.
   std::optional<double> max_edge;
   /// Upper bound on the number of columns reduced in any one dimension.
   std::size_t column_budget = 60'000'000;
};

/// Vietoris-Rips persistent homology over Z/2 for dimensions 0..max_dim (<= 2).
///
/// Works on the implicit coboundary matrix: simplices are addressed through the
/// combinatorial number system and never materialised above the column
/// dimension. Columns are reduced in reverse filtration order with clearing and
/// the emergent-pair shortcut. Zero-persistence pairs are not reported.
PersistenceDiagram rips_persistence(const DistanceMatrix& dm, const RipsOptions& options = {});

// ---------------------------------------------------------------------------
// Betti number estimation
// ---------------------------------------------------------------------------

struct BettiEstimate
{
   std::array<int, 3> counts{0, 0, 0};
   std::string rule;
   /// Ratio pers_k / pers_{k+1} at the selected gap for each dimension (0 when empty).
   std::vector<double> persistence_ratios;
};

/// Per dimension, persistences are sorted in decreasing order with infinite
/// deaths first; the count is the smallest k with pers_k >= threshold * pers_{k+1}.
/// A tail value of machine epsilon stands in for pers_{m+1}.
BettiEstimate betti_estimate(const PersistenceDiagram& dgm, double ratio_threshold = 3.0);

// ---------------------------------------------------------------------------
// Distances between diagrams and point clouds
// ---------------------------------------------------------------------------

struct BottleneckResult
{
   double distance = 0.0;
   /// Diagrams have different numbers of infinite-death points.
   bool infinite_mismatch = false;
};

/// Exact bottleneck distance between two lists of points (dimension ignored).
///
/// Finite points: binary search over the candidate set of pairwise L-inf
/// distances and half-persistences, with Hopcroft-Karp feasibility. Infinite
/// points are matched by sorted birth.
BottleneckResult bottleneck(std::span<const PersistencePair> a, std::span<const PersistencePair> b);
BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

/// Hausdorff distance between the row sets of two matrices (same column count).
double hausdorff_distance(const Matrix& a, const Matrix& b);

/// sqrt(max_ij |gramY_ij - gramPhi_ij| / p): the distortion bound of the
/// index correspondence, an upper bound on d_GH(p^{-1/2} Y, p^{-1/2} Phi).
double gh_upper_bound(const Matrix& gram_y, const Matrix& gram_phi, std::size_t p);

} // namespace hdgeom
