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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hdgeom {

// ---------------------------------------------------------------------------
// Latent spaces
// ---------------------------------------------------------------------------

struct Circle
{
   double radius = 1.0;
};

struct Interval
{
   double a = 0.0;
   double b = 1.0;
};

struct Square
{
   double side = 1.0;
   Vec2 center = Vec2::Zero();
};

/// Fundamental cell {origin + a*r1 + b*r2 : a, b in [0, 1)} of a flat torus.
struct FlatTorusRhombus
{
   Vec2 r1 = Vec2(1.0, 0.0);
   Vec2 r2 = Vec2(0.0, 1.0);
   Vec2 origin = Vec2::Zero();
};

/// Standard ring torus in R^3 with major radius R and tube radius r.
struct EmbeddedTorus3D
{
   double major_radius = 2.0;
   double minor_radius = 1.0;
};

/// Externally supplied points of a fixed dimension; cannot be sampled.
struct CustomPointSet
{
   int dim = 2;
};

using LatentSpace =
   std::variant<Circle, Interval, Square, FlatTorusRhombus, EmbeddedTorus3D, CustomPointSet>;

void validate(const LatentSpace& space);
int ambient_dim(const LatentSpace& space);
std::string name_of(const LatentSpace& space);

struct LatentSample
{
   Matrix points; // one point per row
   LatentSpace space;

   std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
};

enum class SamplingScheme
{
   UniformGrid,
   UniformRandom,
};

/// Grid sampling is seed independent. On the square and the rhombus it uses a
/// floor(sqrt(n)) x floor(sqrt(n)) lattice and drops the remainder.
LatentSample sample_latent(const LatentSpace& space, std::size_t n, SamplingScheme scheme,
                           std::uint64_t seed);

/// True when every point lies on the declared space (within tol).
bool lies_on_space(const LatentSample& sample, double tol = 1e-9);

/// Barycentric coordinates (a, b) with z = origin + a*r1 + b*r2.
Vec2 rhombus_coordinates(const FlatTorusRhombus& rhombus, const Vec2& z);

/// Maps rhombus points (rows) to torus angles 2*pi*(a, b).
Matrix rhombus_angles(const FlatTorusRhombus& rhombus, const Matrix& points);

// ---------------------------------------------------------------------------
// Feature maps
// ---------------------------------------------------------------------------

enum class FeatureMapKind
{
   ToyCircle,
   TorusFourier,
   Custom,
};

/// Finite-rank feature map phi(z) = sqrt(p) * (w_k * psi_k(z))_k.
///
/// The kernel phi(z).phi(z') is the expected dot product of noise-free
/// observations. A closed form for kernel/p may be attached; evaluate_kernel
/// uses it when present so the two routes can be checked against each other.
class FeatureMap
{
public:
   using Basis = std::function<void(std::span<const double> z, std::span<double> out)>;
   using ClosedForm = std::function<double(std::span<const double> z, std::span<const double> zp)>;

   FeatureMap(FeatureMapKind kind, std::size_t scale, int latent_dim, std::vector<double> weights,
              Basis basis, ClosedForm closed_form = {});

   FeatureMapKind kind() const { return kind_; }
   std::size_t rank() const { return weights_.size(); }
   std::size_t scale() const { return scale_; }
   int latent_dim() const { return latent_dim_; }
   const std::vector<double>& weights() const { return weights_; }

   /// Same basis and scale with new weights. Drops the closed form.
   FeatureMap with_weights(std::vector<double> weights) const;

   Vector operator()(std::span<const double> z) const;
   /// phi evaluated on every row: n x rank.
   Matrix evaluate(const Matrix& points) const;

   bool has_closed_form() const { return static_cast<bool>(closed_form_); }
   /// Closed-form kernel(z, z') / p. Requires has_closed_form().
   double closed_form_over_p(std::span<const double> z, std::span<const double> zp) const;

private:
   FeatureMapKind kind_;
   std::size_t scale_;
   int latent_dim_;
   std::vector<double> weights_;
   Basis basis_;
   ClosedForm closed_form_;
};

/// phi(z) = sqrt(p) [z1, (2/pi) sin(pi z2 / 2), (2/pi) cos(pi z2 / 2)], rank 3.
FeatureMap make_toy_circle(std::size_t p);

/// Clifford torus phi(theta) = sqrt(p/2) (cos t1, sin t1, cos t2, sin t2), rank 4,
/// taking torus angles as input. kernel(z, z) / p = 1.
FeatureMap make_torus_fourier(std::size_t p);

/// Same map composed with the rhombus chart: input points are Cartesian
/// positions in the rhombus, converted to angles 2*pi*(a, b).
FeatureMap make_torus_fourier(std::size_t p, const FlatTorusRhombus& chart);

FeatureMap make_custom(std::size_t p, int latent_dim, std::vector<double> weights,
                       FeatureMap::Basis basis);

/// Dispatch by kind for config-driven construction. Custom is rejected.
FeatureMap make_feature_map(FeatureMapKind kind, std::size_t p);

/// kernel(z, z') = phi(z).phi(z') via the closed form when available.
double evaluate_kernel(const FeatureMap& fm, std::span<const double> z, std::span<const double> zp);

/// kernel computed as an explicit sum over the rank-r feature vector.
double kernel_by_features(const FeatureMap& fm, std::span<const double> z,
                          std::span<const double> zp);

// ---------------------------------------------------------------------------
// Random function model
// ---------------------------------------------------------------------------

struct IdentityScaled
{
   double c = 1.0;
};

/// Sigma(z) = diag(spectrum) for every z; spectrum length must equal p.
struct DiagonalSpectrum
{
   std::vector<double> spectrum;
};

using CovarianceRule = std::variant<IdentityScaled, DiagonalSpectrum>;

enum class Family
{
   Gaussian,
   Rademacher,
};

using MeanRule = std::function<Vector(std::span<const double> z)>;

struct ModelSpec
{
   FeatureMap feature_map;
   std::size_t p = 0;
   double sigma = 0.0;
   CovarianceRule covariance = IdentityScaled{};
   MeanRule mean{}; // empty means zero
   Family noise = Family::Gaussian;
   Family coefficients = Family::Gaussian;
   /// Sub-Gaussian norm bound K. Metadata only; the sampler does not use it.
   double subgaussian_bound = 1.0;
   std::uint64_t seed = 0;
   /// Reject latent points where kernel(z, z)/p != 1 under IdentityScaled(1).
   bool strict_unit_variance = false;
};

void validate(const ModelSpec& spec);

/// Ambient intrinsic dimension of Sigma(z) (constant in z for the supported rules).
double covariance_intrinsic_dim(const ModelSpec& spec);

struct DataMatrix
{
   Matrix values;
   std::vector<std::size_t> row_meta; // optional latent indices

   std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
   std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

/// All entries finite and p >= 1 when n >= 1.
void validate(const DataMatrix& data);

/// Draws Y_i = Sigma^{1/2} X(z_i) + mu(z_i) + sigma E_i with
/// X_j(z) = sum_k g_jk phi_k(z) / sqrt(p). The coefficient matrix g is shared by
/// all rows; noise row i comes from its own stream. n = 0 gives an empty matrix.
DataMatrix sample_data(const ModelSpec& spec, const LatentSample& latent);

/// Noise-free mean structure: rows phi(z_i), n x rank.
Matrix feature_matrix(const FeatureMap& fm, const LatentSample& latent);

} // namespace hdgeom
