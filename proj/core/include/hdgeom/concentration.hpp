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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hdgeom {

/// p_int = tr(Sigma) / ||Sigma|| from the eigenvalues of Sigma.
double ambient_intrinsic_dim(std::span<const double> spectrum);

struct GramStats
{
   Matrix gram;   // Y_i . Y_j
   Matrix cosine; // empty unless requested
   Vector norms;
};

/// Throws naming the first zero row when cosine similarities are requested.
GramStats gram_stats(const Matrix& y, bool with_cosine = true);
inline GramStats gram_stats(const DataMatrix& y, bool with_cosine = true)
{
   return gram_stats(y.values, with_cosine);
}

/// Generalised Hanson-Wright tail bound
/// 2 exp(-c min{t^2 / (K^4 ||A||_F^2), t / (K^2 ||A||)}).
/// The absolute constant c is unknown in closed form and must be supplied.
double ghw_tail_bound(double frobenius_norm, double spectral_norm, double subgaussian_bound, double t,
                      double c = 1.0);

enum class Normalization
{
   ByP,             // |Y_i.Y_j/p - T_ij/p - sigma^2 [i=j]|
   ByExpectedNorms, // |Y_i.Y_j - E[Y_i.Y_j]| / sqrt(E|Y_i|^2 E|Y_j|^2)
   SelfNormalized,  // |cos(Y_i,Y_j) - cos_T(i,j) / gamma_ij(sigma)|, i != j
};

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

struct DeviationOptions
{
   Normalization normalization = Normalization::ByP;
   bool exclude_diagonal = false; // forced on for SelfNormalized
   bool keep_per_pair = false;
};

struct DeviationReport
{
   double max_abs_deviation = 0.0;
   Normalization normalization = Normalization::ByP;
   double sigma_sq_used = 0.0;
   bool diagonal_excluded = false;
   std::size_t argmax_i = 0;
   std::size_t argmax_j = 0;
   std::optional<Matrix> per_pair;
};

/// Max deviation of observed dot products from a target Gram matrix
/// (phi(z_i).phi(z_j) for synthetic runs). p is taken from y.cols().
DeviationReport max_gram_deviation(const Matrix& y, const Matrix& target_gram, double sigma,
                                   const DeviationOptions& options = {});

// ---------------------------------------------------------------------------
// Rate studies
// ---------------------------------------------------------------------------

struct GridPoint
{
   std::size_t n = 0;
   std::size_t p = 0;
};

/// How to build one Monte-Carlo replicate of a grid cell.
struct RateTemplate
{
   std::string label;
   /// Model for ambient dimension p and replicate seed.
   std::function<ModelSpec(std::size_t p, std::uint64_t seed)> make_spec;
   /// Latent sample of size n.
   std::function<LatentSample(std::size_t n)> make_latent;
   DeviationOptions deviation;
   std::uint64_t base_seed = 0;
};

struct RateCell
{
   std::size_t n = 0;
   std::size_t p = 0;
   double p_int = 0.0;
   double median = 0.0;
   std::vector<double> per_seed;
};

struct RateStudy
{
   std::string label;
   std::vector<RateCell> cells;
   double fitted_slope = 0.0;
   double fitted_intercept = 0.0;
   std::size_t seeds = 0;
};

/// Runs every cell for `seeds` replicates (replicate s uses base_seed + s in
/// every cell) and fits log(median) ~ log(sqrt(log n / p_int)) by OLS.
RateStudy rate_study(const RateTemplate& tmpl, std::span<const GridPoint> grid, std::size_t seeds);

/// The Monte-Carlo cells of rate_study without the fit.
std::vector<RateCell> rate_cells(const RateTemplate& tmpl, std::span<const GridPoint> grid, std::size_t seeds);

/// Median of the rescaled deviations median * sqrt(p_int / log n) per cell.
std::vector<double> rescaled_medians(const RateStudy& study);

/// i.i.d. zero-mean vectors with identity covariance: rank-0 signal, sigma = 1.
RateTemplate iid_rate_template(Family family, std::uint64_t base_seed);

/// Toy circle random function model on a uniform grid of the unit circle.
RateTemplate toy_circle_rate_template(double sigma, Family coefficients, std::uint64_t base_seed);

/// Median with ties resolved by a full sort; even counts average the middle pair.
double median(std::vector<double> values);

} // namespace hdgeom
