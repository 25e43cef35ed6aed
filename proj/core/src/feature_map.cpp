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

#include "hdgeom/model.hpp"

#include <cmath>
#include <numbers>

namespace hdgeom {

FeatureMap::FeatureMap(FeatureMapKind kind, std::size_t scale, int latent_dim,
                       std::vector<double> weights, Basis basis, ClosedForm closed_form)
   : kind_(kind),
     scale_(scale),
     latent_dim_(latent_dim),
     weights_(std::move(weights)),
     basis_(std::move(basis)),
     closed_form_(std::move(closed_form))
{
   require(scale_ >= 1, "feature map scale p must be >= 1");
   require(!weights_.empty(), "feature map rank must be >= 1");
   require(scale_ >= weights_.size(), "feature map requires p >= rank (p = " +
                                         std::to_string(scale_) +
                                         ", rank = " + std::to_string(weights_.size()) + ")");
   require(static_cast<bool>(basis_), "feature map basis must be callable");
}

FeatureMap FeatureMap::with_weights(std::vector<double> weights) const
{
   require(weights.size() == weights_.size(), "with_weights: rank mismatch");
   return FeatureMap(kind_, scale_, latent_dim_, std::move(weights), basis_);
}

Vector FeatureMap::operator()(std::span<const double> z) const
{
   require(static_cast<int>(z.size()) == latent_dim_, "feature map: latent point has dimension " +
                                                         std::to_string(z.size()) + ", expected " +
                                                         std::to_string(latent_dim_));
   Vector out(static_cast<Eigen::Index>(rank()));
   basis_(z, std::span<double>(out.data(), rank()));
   const double root_p = std::sqrt(static_cast<double>(scale_));
   for (std::size_t k = 0; k < rank(); ++k)
   {
      out[static_cast<Eigen::Index>(k)] *= root_p * weights_[k];
   }
   return out;
}

Matrix FeatureMap::evaluate(const Matrix& points) const
{
   require(points.cols() == latent_dim_, "feature map: latent dimension mismatch");
   Matrix phi(points.rows(), static_cast<Eigen::Index>(rank()));
   for (Eigen::Index i = 0; i < points.rows(); ++i)
   {
      phi.row(i) = (*this)(std::span<const double>(points.row(i).data(),
                                                   static_cast<std::size_t>(points.cols())))
                      .transpose();
   }
   return phi;
}

double FeatureMap::closed_form_over_p(std::span<const double> z, std::span<const double> zp) const
{
   require(has_closed_form(), "feature map has no closed-form kernel");
   return closed_form_(z, zp);
}

FeatureMap make_toy_circle(std::size_t p)
{
   constexpr double pi = std::numbers::pi;
   auto basis = [](std::span<const double> z, std::span<double> out) {
      out[0] = z[0];
      out[1] = std::sin(pi * z[1] / 2.0);
      out[2] = std::cos(pi * z[1] / 2.0);
   };
   auto closed = [](std::span<const double> z, std::span<const double> zp) {
      return z[0] * zp[0] + 4.0 / (pi * pi) * std::cos((z[1] - zp[1]) * pi / 2.0);
   };
   return FeatureMap(FeatureMapKind::ToyCircle, p, 2, {1.0, 2.0 / pi, 2.0 / pi}, basis, closed);
}

FeatureMap make_torus_fourier(std::size_t p)
{
   auto basis = [](std::span<const double> t, std::span<double> out) {
      out[0] = std::cos(t[0]);
      out[1] = std::sin(t[0]);
      out[2] = std::cos(t[1]);
      out[3] = std::sin(t[1]);
   };
   auto closed = [](std::span<const double> t, std::span<const double> tp) {
      return (std::cos(t[0] - tp[0]) + std::cos(t[1] - tp[1])) / 2.0;
   };
   const double w = 1.0 / std::sqrt(2.0);
   return FeatureMap(FeatureMapKind::TorusFourier, p, 2, {w, w, w, w}, basis, closed);
}

FeatureMap make_torus_fourier(std::size_t p, const FlatTorusRhombus& chart)
{
   validate(LatentSpace{chart});
   auto to_angles = [chart](std::span<const double> z) {
      const Vec2 ab = rhombus_coordinates(chart, Vec2(z[0], z[1]));
      return Vec2(2.0 * std::numbers::pi * ab.x(), 2.0 * std::numbers::pi * ab.y());
   };
   auto basis = [to_angles](std::span<const double> z, std::span<double> out) {
      const Vec2 t = to_angles(z);
      out[0] = std::cos(t.x());
      out[1] = std::sin(t.x());
      out[2] = std::cos(t.y());
      out[3] = std::sin(t.y());
   };
   auto closed = [to_angles](std::span<const double> z, std::span<const double> zp) {
      const Vec2 d = to_angles(z) - to_angles(zp);
      return (std::cos(d.x()) + std::cos(d.y())) / 2.0;
   };
   const double w = 1.0 / std::sqrt(2.0);
   return FeatureMap(FeatureMapKind::TorusFourier, p, 2, {w, w, w, w}, basis, closed);
}

FeatureMap make_custom(std::size_t p, int latent_dim, std::vector<double> weights,
                       FeatureMap::Basis basis)
{
   return FeatureMap(FeatureMapKind::Custom, p, latent_dim, std::move(weights), std::move(basis));
}

FeatureMap make_feature_map(FeatureMapKind kind, std::size_t p)
{
   switch (kind)
   {
   case FeatureMapKind::ToyCircle:
      return make_toy_circle(p);
   case FeatureMapKind::TorusFourier:
      return make_torus_fourier(p);
   case FeatureMapKind::Custom:
      break;
   }
   throw InvalidArgument("custom feature maps need an explicit basis; use make_custom");
}

double kernel_by_features(const FeatureMap& fm, std::span<const double> z,
                          std::span<const double> zp)
{
   return fm(z).dot(fm(zp));
}

double evaluate_kernel(const FeatureMap& fm, std::span<const double> z, std::span<const double> zp)
{
   require(static_cast<int>(z.size()) == fm.latent_dim() &&
              static_cast<int>(zp.size()) == fm.latent_dim(),
           "evaluate_kernel: latent point dimension does not match the feature map");
   if (fm.has_closed_form())
   {
      return static_cast<double>(fm.scale()) * fm.closed_form_over_p(z, zp);
   }
   return kernel_by_features(fm, z, zp);
}

} // namespace hdgeom
