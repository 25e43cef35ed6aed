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

#include "hdgeom/geodesic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hdgeom {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
   using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kDomainTol = 1e-9;

void check_in_rhombus(const FlatTorusRhombus& rhombus, std::span<const double> z, double tol)
{
   require(z.size() == 2, "rhombus metrics take 2-dimensional points");
   const Vec2 ab = rhombus_coordinates(rhombus, Vec2(z[0], z[1]));
   if (ab.minCoeff() < -tol || ab.maxCoeff() > 1.0 + tol)
   {
      throw InvalidArgument("point (" + std::to_string(z[0]) + ", " + std::to_string(z[1]) +
                            ") lies outside the rhombus");
   }
}

double euclid(std::span<const double> z, std::span<const double> zp)
{
   require(z.size() == zp.size(), "points differ in dimension");
   double sum = 0.0;
   for (std::size_t i = 0; i < z.size(); ++i)
   {
      const double d = z[i] - zp[i];
      sum += d * d;
   }
   return std::sqrt(sum);
}

Eigen::Vector3d embed(const Torus3D& t, double theta1, double theta2)
{
   const double ring = t.major_radius + t.minor_radius * std::cos(theta2);
   return {ring * std::cos(theta1), ring * std::sin(theta1), t.minor_radius * std::sin(theta2)};
}

} // namespace

void validate(const LatentMetric& metric)
{
   std::visit(overloaded{
                 [](const OpenFieldEuclid&) {},
                 [](const RhombusEuclid& m) { validate(LatentSpace{m.rhombus}); },
                 [](const RhombusTeleport& m) { validate(LatentSpace{m.rhombus}); },
                 [](const Torus3D& m) {
                    require(m.minor_radius > 0.0 && m.major_radius > m.minor_radius,
                            "Torus3D needs R > r > 0");
                 },
              },
              metric);
}

std::string name_of(const LatentMetric& metric)
{
   return std::visit(overloaded{
                        [](const OpenFieldEuclid&) { return std::string("OpenFieldEuclid"); },
                        [](const RhombusEuclid&) { return std::string("RhombusEuclid"); },
                        [](const RhombusTeleport&) { return std::string("RhombusTeleport"); },
                        [](const Torus3D&) { return std::string("Torus3D"); },
                     },
                     metric);
}

double latent_distance(const LatentMetric& metric, std::span<const double> z, std::span<const double> zp)
{
   return std::visit(
      overloaded{
         [&](const OpenFieldEuclid&) { return euclid(z, zp); },
         [&](const RhombusEuclid& m) {
            check_in_rhombus(m.rhombus, z, kDomainTol);
            check_in_rhombus(m.rhombus, zp, kDomainTol);
            return euclid(z, zp);
         },
         [&](const RhombusTeleport& m) {
            check_in_rhombus(m.rhombus, z, kDomainTol);
            check_in_rhombus(m.rhombus, zp, kDomainTol);
            const Vec2 base(zp[0] - z[0], zp[1] - z[1]);
            double best = std::numeric_limits<double>::infinity();
            for (int a = -1; a <= 1; ++a)
            {
               for (int b = -1; b <= 1; ++b)
               {
                  const Vec2 d = base + a * m.rhombus.r1 + b * m.rhombus.r2;
                  best = std::min(best, d.norm());
               }
            }
            return best;
         },
         [&](const Torus3D& m) {
            require(z.size() == 2 && zp.size() == 2, "Torus3D takes (theta1, theta2) angle pairs");
            return (embed(m, z[0], z[1]) - embed(m, zp[0], zp[1])).norm();
         },
      },
      metric);
}

void check_domain(const LatentMetric& metric, const Matrix& points, double tol)
{
   validate(metric);
   std::visit(overloaded{
                 [&](const OpenFieldEuclid&) {},
                 [&](const RhombusEuclid& m) {
                    for (Eigen::Index i = 0; i < points.rows(); ++i)
                    {
                       check_in_rhombus(m.rhombus, {points.row(i).data(), 2}, tol);
                    }
                 },
                 [&](const RhombusTeleport& m) {
                    for (Eigen::Index i = 0; i < points.rows(); ++i)
                    {
                       check_in_rhombus(m.rhombus, {points.row(i).data(), 2}, tol);
                    }
                 },
                 [&](const Torus3D&) { require(points.cols() == 2, "Torus3D takes angle pairs"); },
              },
              metric);
   if (!std::holds_alternative<OpenFieldEuclid>(metric))
   {
      require(points.cols() == 2, name_of(metric) + " takes 2-dimensional points");
   }
}

Matrix torus3d_embedding(const Torus3D& torus, const Matrix& angles)
{
   validate(LatentMetric{torus});
   require(angles.cols() == 2, "torus3d_embedding takes (theta1, theta2) rows");
   Matrix out(angles.rows(), 3);
   for (Eigen::Index i = 0; i < angles.rows(); ++i)
   {
      out.row(i) = embed(torus, angles(i, 0), angles(i, 1)).transpose();
   }
   return out;
}

Matrix superimpose_on_rhombus(const FlatTorusRhombus& rhombus, const Matrix& points)
{
   validate(LatentSpace{rhombus});
   require(points.cols() == 2, "superimpose_on_rhombus takes planar points");
   Eigen::Matrix2d basis;
   basis.col(0) = rhombus.r1;
   basis.col(1) = rhombus.r2;
   Matrix out(points.rows(), 2);
   for (Eigen::Index i = 0; i < points.rows(); ++i)
   {
      Vec2 ab = rhombus_coordinates(rhombus, points.row(i).transpose());
      ab = ab.array() - ab.array().floor();
      // floor can leave exactly 1.0 after rounding
      for (int c = 0; c < 2; ++c)
      {
         if (ab[c] >= 1.0)
         {
            ab[c] = 0.0;
         }
      }
      out.row(i) = (rhombus.origin + basis * ab).transpose();
   }
   return out;
}

} // namespace hdgeom
