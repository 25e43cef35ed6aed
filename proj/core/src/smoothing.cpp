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
#include "hdgeom/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace hdgeom {

bool smoothing_weights(std::span<const double> distances_to_source, std::span<double> weights)
{
   require(!distances_to_source.empty(), "smoothing_weights: empty neighbourhood");
   require(weights.size() == distances_to_source.size(), "smoothing_weights: size mismatch");
   const double top = *std::max_element(distances_to_source.begin(), distances_to_source.end());
   double total = 0.0;
   for (std::size_t k = 0; k < weights.size(); ++k)
   {
      weights[k] = top - distances_to_source[k];
      total += weights[k];
   }
   if (!(total > 0.0))
   {
      std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(weights.size()));
      return false;
   }
   for (double& w : weights)
   {
      w /= total;
   }
   return true;
}

SmoothedPaths smooth_path_lengths(const GeodesicMatrix& lengths, const Matrix& positions, std::size_t k_smooth)
{
   const std::size_t n = lengths.n();
   require(static_cast<std::size_t>(positions.rows()) == n, "smooth_path_lengths: one position per vertex");
   require(k_smooth >= 2, "smooth_path_lengths: k_smooth must be >= 2");
   require(k_smooth <= n, "smooth_path_lengths: k_smooth exceeds the number of points");
   require(lengths.sources.size() == static_cast<std::size_t>(lengths.lengths.rows()),
           "smooth_path_lengths: malformed geodesic matrix");

   // N_j: j itself followed by its k_smooth - 1 nearest positions.
   std::vector<std::vector<std::size_t>> hoods(n);
   parallel_for(n, [&](std::size_t j) {
      std::vector<std::pair<double, std::size_t>> row;
      row.reserve(n - 1);
      for (std::size_t m = 0; m < n; ++m)
      {
         if (m != j)
         {
            row.emplace_back(
               (positions.row(static_cast<Eigen::Index>(m)) - positions.row(static_cast<Eigen::Index>(j)))
                  .squaredNorm(),
               m);
         }
      }
      std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k_smooth - 1), row.end());
      hoods[j].push_back(j);
      for (std::size_t t = 0; t + 1 < k_smooth; ++t)
      {
         hoods[j].push_back(row[t].second);
      }
   });

   SmoothedPaths out;
   out.paths = lengths;
   std::vector<std::size_t> fallbacks(lengths.sources.size(), 0);
   parallel_for(lengths.sources.size(), [&](std::size_t s) {
      const auto source = positions.row(static_cast<Eigen::Index>(lengths.sources[s]));
      std::vector<double> dist(k_smooth);
      std::vector<double> w(k_smooth);
      for (std::size_t j = 0; j < n; ++j)
      {
         const auto& hood = hoods[j];
         for (std::size_t t = 0; t < k_smooth; ++t)
         {
            dist[t] = (positions.row(static_cast<Eigen::Index>(hood[t])) - source).norm();
         }
         if (!smoothing_weights(dist, w))
         {
            ++fallbacks[s];
         }
         double value = 0.0;
         for (std::size_t t = 0; t < k_smooth; ++t)
         {
            value += w[t] * lengths.lengths(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(hood[t]));
         }
         out.paths.lengths(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) = value;
      }
   });
   out.uniform_fallbacks = std::accumulate(fallbacks.begin(), fallbacks.end(), std::size_t{0});
   out.paths.has_unreachable = !out.paths.lengths.allFinite();
   return out;
}

} // namespace hdgeom
