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

#include "hdgeom/concentration.hpp"
#include "hdgeom/model.hpp"
#include "hdgeom/parallel.hpp"
#include "hdgeom/rng.hpp"

#include <cmath>

namespace hdgeom {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
   using Ts::operator()...;
};

template <typename Rng>
double draw(Family family, Rng& rng, std::normal_distribution<double>& normal)
{
   if (family == Family::Gaussian)
   {
      return normal(rng);
   }
   return (rng() >> 63) != 0 ? 1.0 : -1.0;
}

constexpr std::uint64_t kCoefficientStream = 0;
constexpr std::uint64_t kFirstNoiseStream = 1;

} // namespace

void validate(const ModelSpec& spec)
{
   require(spec.p >= 1, "model: p must be >= 1");
   require(spec.p >= spec.feature_map.rank(),
           "model: p must be >= the feature map rank (p = " + std::to_string(spec.p) +
              ", rank = " + std::to_string(spec.feature_map.rank()) + ")");
   require(spec.sigma >= 0.0 && std::isfinite(spec.sigma), "model: sigma must be finite and >= 0");
   require(spec.subgaussian_bound > 0.0, "model: sub-Gaussian bound K must be > 0");
   std::visit(overloaded{
                 [](const IdentityScaled& id) {
                    require(id.c >= 0.0, "model: IdentityScaled factor must be >= 0");
                 },
                 [&](const DiagonalSpectrum& d) {
                    require(d.spectrum.size() == spec.p,
                            "model: diagonal spectrum length must equal p");
                    for (double v : d.spectrum)
                    {
                       require(v >= 0.0, "model: spectrum entries must be >= 0");
                    }
                 },
              },
              spec.covariance);
}

double covariance_intrinsic_dim(const ModelSpec& spec)
{
   return std::visit(overloaded{
                        [&](const IdentityScaled&) { return static_cast<double>(spec.p); },
                        [](const DiagonalSpectrum& d) {
                           return ambient_intrinsic_dim(d.spectrum);
                        },
                     },
                     spec.covariance);
}

void validate(const DataMatrix& data)
{
   require(data.values.allFinite(), "data matrix has non-finite entries");
   require(data.values.rows() == 0 || data.values.cols() >= 1, "data matrix needs p >= 1");
   require(data.row_meta.empty() || data.row_meta.size() == data.rows(),
           "data matrix row metadata length mismatch");
}

Matrix feature_matrix(const FeatureMap& fm, const LatentSample& latent)
{
   return fm.evaluate(latent.points);
}

DataMatrix sample_data(const ModelSpec& spec, const LatentSample& latent)
{
   validate(spec);
   const auto n = static_cast<Eigen::Index>(latent.size());
   const auto p = static_cast<Eigen::Index>(spec.p);
   const auto r = static_cast<Eigen::Index>(spec.feature_map.rank());

   DataMatrix out;
   out.values.setZero(n, p);
   if (n == 0)
   {
      return out;
   }
   require(latent.points.cols() == spec.feature_map.latent_dim(),
           "sample_data: latent points are not in the feature map's domain");

   const Matrix phi = spec.feature_map.evaluate(latent.points);

   if (spec.strict_unit_variance)
   {
      const auto* id = std::get_if<IdentityScaled>(&spec.covariance);
      if (id != nullptr && id->c == 1.0)
      {
         for (Eigen::Index i = 0; i < n; ++i)
         {
            const double ratio = phi.row(i).squaredNorm() / static_cast<double>(spec.p);
            require(std::abs(ratio - 1.0) <= 1e-9,
                    "sample_data: kernel(z,z)/p = " + std::to_string(ratio) + " at row " +
                       std::to_string(i) + " but unit variance E|X_j(z)|^2 = 1 is required");
         }
      }
   }

   // Random function coefficients, shared by every row.
   Matrix g(p, r);
   {
      auto rng = make_stream(spec.seed, kCoefficientStream);
      std::normal_distribution<double> normal;
      for (Eigen::Index j = 0; j < p; ++j)
      {
         for (Eigen::Index k = 0; k < r; ++k)
         {
            g(j, k) = draw(spec.coefficients, rng, normal);
         }
      }
   }

   out.values.noalias() = phi * g.transpose();
   out.values /= std::sqrt(static_cast<double>(spec.p));

   std::visit(overloaded{
                 [&](const IdentityScaled& id) {
                    if (id.c != 1.0)
                    {
                       out.values *= std::sqrt(id.c);
                    }
                 },
                 [&](const DiagonalSpectrum& d) {
                    for (Eigen::Index j = 0; j < p; ++j)
                    {
                       out.values.col(j) *= std::sqrt(d.spectrum[static_cast<std::size_t>(j)]);
                    }
                 },
              },
              spec.covariance);

   if (spec.mean)
   {
      for (Eigen::Index i = 0; i < n; ++i)
      {
         const Vector mu = spec.mean(std::span<const double>(
            latent.points.row(i).data(), static_cast<std::size_t>(latent.points.cols())));
         require(mu.size() == p, "sample_data: mean rule must return a p-vector");
         out.values.row(i) += mu.transpose();
      }
   }

   if (spec.sigma > 0.0)
   {
      parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
         auto rng = make_stream(spec.seed, kFirstNoiseStream + i);
         std::normal_distribution<double> normal;
         auto row = out.values.row(static_cast<Eigen::Index>(i));
         for (Eigen::Index j = 0; j < p; ++j)
         {
            row[j] += spec.sigma * draw(spec.noise, rng, normal);
         }
      });
   }

   out.row_meta.resize(static_cast<std::size_t>(n));
   for (std::size_t i = 0; i < out.row_meta.size(); ++i)
   {
      out.row_meta[i] = i;
   }
   return out;
}

} // namespace hdgeom
