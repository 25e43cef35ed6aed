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
#include "hdgeom/rng.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>

namespace hdgeom {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
   using Ts::operator()...;
};

Eigen::Matrix2d rhombus_basis(const FlatTorusRhombus& rhombus)
{
   Eigen::Matrix2d basis;
   basis.col(0) = rhombus.r1;
   basis.col(1) = rhombus.r2;
   return basis;
}

std::size_t lattice_side(std::size_t n)
{
   auto m = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
   while ((m + 1) * (m + 1) <= n)
   {
      ++m;
   }
   while (m * m > n)
   {
      --m;
   }
   return m;
}

} // namespace

void validate(const LatentSpace& space)
{
   std::visit(overloaded{
                 [](const Circle& c) { require(c.radius > 0.0, "Circle radius must be > 0"); },
                 [](const Interval& iv) { require(iv.a < iv.b, "Interval requires a < b"); },
                 [](const Square& s) { require(s.side > 0.0, "Square side must be > 0"); },
                 [](const FlatTorusRhombus& r) {
                    const double det = r.r1.x() * r.r2.y() - r.r1.y() * r.r2.x();
                    require(std::abs(det) > 1e-12 * r.r1.norm() * r.r2.norm(),
                            "rhombus vectors r1, r2 must be linearly independent");
                 },
                 [](const EmbeddedTorus3D& t) {
                    require(t.minor_radius > 0.0 && t.major_radius > t.minor_radius,
                            "EmbeddedTorus3D requires R > r > 0");
                 },
                 [](const CustomPointSet& c) { require(c.dim >= 1, "CustomPointSet dim must be >= 1"); },
              },
              space);
}

int ambient_dim(const LatentSpace& space)
{
   return std::visit(overloaded{
                        [](const Circle&) { return 2; },
                        [](const Interval&) { return 1; },
                        [](const Square&) { return 2; },
                        [](const FlatTorusRhombus&) { return 2; },
                        [](const EmbeddedTorus3D&) { return 3; },
                        [](const CustomPointSet& c) { return c.dim; },
                     },
                     space);
}

std::string name_of(const LatentSpace& space)
{
   return std::visit(overloaded{
                        [](const Circle&) { return std::string("circle"); },
                        [](const Interval&) { return std::string("interval"); },
                        [](const Square&) { return std::string("square"); },
                        [](const FlatTorusRhombus&) { return std::string("flat_torus_rhombus"); },
                        [](const EmbeddedTorus3D&) { return std::string("embedded_torus_3d"); },
                        [](const CustomPointSet&) { return std::string("custom"); },
                     },
                     space);
}

Vec2 rhombus_coordinates(const FlatTorusRhombus& rhombus, const Vec2& z)
{
   return rhombus_basis(rhombus).inverse() * (z - rhombus.origin);
}

Matrix rhombus_angles(const FlatTorusRhombus& rhombus, const Matrix& points)
{
   require(points.cols() == 2, "rhombus points must be 2-dimensional");
   const Eigen::Matrix2d inverse = rhombus_basis(rhombus).inverse();
   Matrix angles(points.rows(), 2);
   for (Eigen::Index i = 0; i < points.rows(); ++i)
   {
      const Vec2 ab = inverse * (points.row(i).transpose() - rhombus.origin);
      angles.row(i) = 2.0 * std::numbers::pi * ab.transpose();
   }
   return angles;
}

LatentSample sample_latent(const LatentSpace& space, std::size_t n, SamplingScheme scheme,
                           std::uint64_t seed)
{
   validate(space);
   const bool grid = scheme == SamplingScheme::UniformGrid;
   auto rng = make_stream(seed, 0);
   std::uniform_real_distribution<double> unit(0.0, 1.0);
   constexpr double two_pi = 2.0 * std::numbers::pi;

   LatentSample sample{Matrix(0, ambient_dim(space)), space};

   std::visit(
      overloaded{
         [&](const Circle& c) {
            sample.points.resize(static_cast<Eigen::Index>(n), 2);
            for (std::size_t i = 0; i < n; ++i)
            {
               const double t = grid ? two_pi * static_cast<double>(i) / static_cast<double>(n)
                                     : two_pi * unit(rng);
               sample.points.row(static_cast<Eigen::Index>(i)) << c.radius * std::cos(t),
                  c.radius * std::sin(t);
            }
         },
         [&](const Interval& iv) {
            sample.points.resize(static_cast<Eigen::Index>(n), 1);
            for (std::size_t i = 0; i < n; ++i)
            {
               double u = unit(rng);
               if (grid)
               {
                  u = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
               }
               sample.points(static_cast<Eigen::Index>(i), 0) = iv.a + (iv.b - iv.a) * u;
            }
         },
         [&](const Square& s) {
            const Vec2 corner = s.center - Vec2::Constant(s.side / 2.0);
            if (grid)
            {
               const std::size_t m = lattice_side(n);
               sample.points.resize(static_cast<Eigen::Index>(m * m), 2);
               for (std::size_t a = 0; a < m; ++a)
               {
                  for (std::size_t b = 0; b < m; ++b)
                  {
                     const double u = (static_cast<double>(a) + 0.5) / static_cast<double>(m);
                     const double v = (static_cast<double>(b) + 0.5) / static_cast<double>(m);
                     sample.points.row(static_cast<Eigen::Index>(a * m + b))
                        << corner.x() + s.side * u,
                        corner.y() + s.side * v;
                  }
               }
               return;
            }
            sample.points.resize(static_cast<Eigen::Index>(n), 2);
            for (std::size_t i = 0; i < n; ++i)
            {
               const double u = unit(rng);
               const double v = unit(rng);
               sample.points.row(static_cast<Eigen::Index>(i)) << corner.x() + s.side * u,
                  corner.y() + s.side * v;
            }
         },
         [&](const FlatTorusRhombus& r) {
            auto place = [&](Eigen::Index row, double a, double b) {
               sample.points.row(row) = (r.origin + a * r.r1 + b * r.r2).transpose();
            };
            if (grid)
            {
               const std::size_t m = lattice_side(n);
               sample.points.resize(static_cast<Eigen::Index>(m * m), 2);
               for (std::size_t a = 0; a < m; ++a)
               {
                  for (std::size_t b = 0; b < m; ++b)
                  {
                     place(static_cast<Eigen::Index>(a * m + b),
                           static_cast<double>(a) / static_cast<double>(m),
                           static_cast<double>(b) / static_cast<double>(m));
                  }
               }
               return;
            }
            sample.points.resize(static_cast<Eigen::Index>(n), 2);
            for (std::size_t i = 0; i < n; ++i)
            {
               const double a = unit(rng);
               const double b = unit(rng);
               place(static_cast<Eigen::Index>(i), a, b);
            }
         },
         [&](const EmbeddedTorus3D& t) {
            auto place = [&](Eigen::Index row, double t1, double t2) {
               const double ring = t.major_radius + t.minor_radius * std::cos(t2);
               sample.points.row(row) << ring * std::cos(t1), ring * std::sin(t1),
                  t.minor_radius * std::sin(t2);
            };
            if (grid)
            {
               const std::size_t m = lattice_side(n);
               sample.points.resize(static_cast<Eigen::Index>(m * m), 3);
               for (std::size_t a = 0; a < m; ++a)
               {
                  for (std::size_t b = 0; b < m; ++b)
                  {
                     place(static_cast<Eigen::Index>(a * m + b),
                           two_pi * static_cast<double>(a) / static_cast<double>(m),
                           two_pi * static_cast<double>(b) / static_cast<double>(m));
                  }
               }
               return;
            }
            sample.points.resize(static_cast<Eigen::Index>(n), 3);
            for (std::size_t i = 0; i < n; ++i)
            {
               const double t1 = two_pi * unit(rng);
               const double t2 = two_pi * unit(rng);
               place(static_cast<Eigen::Index>(i), t1, t2);
            }
         },
         [&](const CustomPointSet&) {
            throw InvalidArgument(std::string("cannot sample a custom point set with the ") +
                                  (grid ? "UniformGrid" : "UniformRandom") +
                                  " scheme; supply the points directly");
         },
      },
      space);
   return sample;
}

bool lies_on_space(const LatentSample& sample, double tol)
{
   const auto& pts = sample.points;
   if (pts.cols() != ambient_dim(sample.space))
   {
      return false;
   }
   for (Eigen::Index i = 0; i < pts.rows(); ++i)
   {
      const bool ok = std::visit(
         overloaded{
            [&](const Circle& c) {
               return std::abs(pts.row(i).squaredNorm() - c.radius * c.radius) <= tol;
            },
            [&](const Interval& iv) { return pts(i, 0) >= iv.a - tol && pts(i, 0) <= iv.b + tol; },
            [&](const Square& s) {
               const Vec2 d = pts.row(i).transpose() - s.center;
               return d.cwiseAbs().maxCoeff() <= s.side / 2.0 + tol;
            },
            [&](const FlatTorusRhombus& r) {
               const Vec2 ab = rhombus_coordinates(r, pts.row(i).transpose());
               return ab.minCoeff() >= -tol && ab.maxCoeff() <= 1.0 + tol;
            },
            [&](const EmbeddedTorus3D& t) {
               const double ring = std::hypot(pts(i, 0), pts(i, 1)) - t.major_radius;
               return std::abs(ring * ring + pts(i, 2) * pts(i, 2) -
                               t.minor_radius * t.minor_radius) <= tol;
            },
            [&](const CustomPointSet&) { return pts.row(i).allFinite(); },
         },
         sample.space);
      if (!ok)
      {
         return false;
      }
   }
   return true;
}

} // namespace hdgeom
