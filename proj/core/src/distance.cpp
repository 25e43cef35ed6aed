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

#include "hdgeom/homology.hpp"
#include "hdgeom/parallel.hpp"

#include <cmath>

namespace hdgeom {

std::string to_string(Scaling s)
{
   switch (s)
   {
   case Scaling::Raw:
      return "Raw";
   case Scaling::InvSqrtP:
      return "InvSqrtP";
   case Scaling::SelfNormalized:
      return "SelfNormalized";
   }
   return "?";
}

Scaling scaling_from_string(const std::string& s)
{
   if (s == "Raw")
   {
      return Scaling::Raw;
   }
   if (s == "InvSqrtP")
   {
      return Scaling::InvSqrtP;
   }
   if (s == "SelfNormalized")
   {
      return Scaling::SelfNormalized;
   }
   throw InvalidArgument("unknown scaling '" + s + "' (expected Raw, InvSqrtP or SelfNormalized)");
}

void validate(const DistanceMatrix& dm)
{
   const auto& d = dm.d;
   require(d.rows() == d.cols(), "distance matrix must be square");
   for (Eigen::Index i = 0; i < d.rows(); ++i)
   {
      require(d(i, i) == 0.0, "distance matrix diagonal must be zero (row " + std::to_string(i) + ")");
      for (Eigen::Index j = 0; j < i; ++j)
      {
         require(std::isfinite(d(i, j)) && d(i, j) >= 0.0,
                 "distance matrix entries must be finite and >= 0");
         require(d(i, j) == d(j, i), "distance matrix must be symmetric");
      }
   }
}

Matrix scaled_rows(const Matrix& y, Scaling scaling)
{
   switch (scaling)
   {
   case Scaling::Raw:
      return y;
   case Scaling::InvSqrtP:
      require(y.cols() >= 1, "InvSqrtP scaling needs p >= 1");
      return y / std::sqrt(static_cast<double>(y.cols()));
   case Scaling::SelfNormalized:
   {
      Matrix out = y;
      for (Eigen::Index i = 0; i < y.rows(); ++i)
      {
         const double norm = y.row(i).norm();
         require(norm > 0.0, "SelfNormalized scaling: row " + std::to_string(i) + " is zero");
         out.row(i) /= norm;
      }
      return out;
   }
   }
   return y;
}

DistanceMatrix distance_matrix(const Matrix& y, Scaling scaling)
{
   const Matrix x = scaled_rows(y, scaling);
   const Eigen::Index n = x.rows();
   DistanceMatrix dm{Matrix::Zero(n, n), scaling};
   parallel_for(static_cast<std::size_t>(n), [&](std::size_t ui) {
      const auto i = static_cast<Eigen::Index>(ui);
      for (Eigen::Index j = 0; j < i; ++j)
      {
         dm.d(i, j) = (x.row(i) - x.row(j)).norm();
      }
   });
   for (Eigen::Index i = 0; i < n; ++i)
   {
      for (Eigen::Index j = 0; j < i; ++j)
      {
         dm.d(j, i) = dm.d(i, j);
      }
   }
   return dm;
}

double enclosing_radius(const DistanceMatrix& dm)
{
   require(dm.size() >= 1, "enclosing_radius of an empty distance matrix");
   double radius = kInfinity;
   for (Eigen::Index i = 0; i < dm.d.rows(); ++i)
   {
      radius = std::min(radius, dm.d.row(i).maxCoeff());
   }
   return radius;
}

DistanceMatrix submatrix(const DistanceMatrix& dm, std::span<const std::size_t> indices)
{
   const auto m = static_cast<Eigen::Index>(indices.size());
   DistanceMatrix out{Matrix(m, m), dm.scaling};
   for (Eigen::Index a = 0; a < m; ++a)
   {
      require(indices[static_cast<std::size_t>(a)] < dm.size(), "submatrix: index out of range");
      for (Eigen::Index b = 0; b < m; ++b)
      {
         out.d(a, b) = dm.d(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(a)]),
                            static_cast<Eigen::Index>(indices[static_cast<std::size_t>(b)]));
      }
   }
   return out;
}

} // namespace hdgeom
