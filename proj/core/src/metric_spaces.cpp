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

#include <algorithm>
#include <cmath>

namespace hdgeom {

namespace {

/// Sequential coordinate sum so results do not depend on vector width.
double squared_distance(const Matrix& a, Eigen::Index i, const Matrix& b, Eigen::Index j)
{
   double s = 0.0;
   for (Eigen::Index c = 0; c < a.cols(); ++c)
   {
      const double t = a(i, c) - b(j, c);
      s += t * t;
   }
   return s;
}

/// max_i min_j |a_i - b_j|.
double directed_hausdorff(const Matrix& a, const Matrix& b)
{
   std::vector<double> row_min(static_cast<std::size_t>(a.rows()), 0.0);
   parallel_for(static_cast<std::size_t>(a.rows()), [&](std::size_t ui) {
      const auto i = static_cast<Eigen::Index>(ui);
      double best = kInfinity;
      for (Eigen::Index j = 0; j < b.rows() && best > 0.0; ++j)
      {
         best = std::min(best, squared_distance(a, i, b, j));
      }
      row_min[ui] = best;
   });
   double worst = 0.0;
   for (const double v : row_min)
   {
      worst = std::max(worst, v);
   }
   return std::sqrt(worst);
}

} // namespace

double hausdorff_distance(const Matrix& a, const Matrix& b)
{
   require(a.cols() == b.cols(), "hausdorff_distance: point sets live in different dimensions");
   require(a.rows() > 0 && b.rows() > 0, "hausdorff_distance: empty point set");
   return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double gh_upper_bound(const Matrix& gram_y, const Matrix& gram_phi, std::size_t p)
{
   require(p > 0, "gh_upper_bound: p must be positive");
   require(gram_y.rows() == gram_phi.rows() && gram_y.cols() == gram_phi.cols(),
           "gh_upper_bound: Gram matrices differ in shape");
   if (gram_y.size() == 0)
   {
      return 0.0;
   }
   const double distortion = (gram_y - gram_phi).cwiseAbs().maxCoeff();
   return std::sqrt(distortion / static_cast<double>(p));
}

} // namespace hdgeom
