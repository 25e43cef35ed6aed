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

#include <algorithm>
#include <functional>
#include <limits>

namespace hdgeom {

namespace {

bool is_gap(double current, double next, double ratio_threshold)
{
   if (current == kInfinity)
   {
      return next != kInfinity;
   }
   return current >= ratio_threshold * next;
}

} // namespace

BettiEstimate betti_estimate(const PersistenceDiagram& dgm, double ratio_threshold)
{
   require(ratio_threshold > 1.0, "betti_estimate: ratio threshold must be > 1");
   BettiEstimate est;
   est.rule = "smallest k with pers_k >= " + std::to_string(ratio_threshold) + " * pers_{k+1}";
   const int top = std::min(dgm.max_dim, 2);
   const double tail = std::numeric_limits<double>::epsilon();

   for (int dim = 0; dim <= top; ++dim)
   {
      std::vector<double> pers;
      for (const auto& pair : dgm.pairs)
      {
         if (pair.dim == dim)
         {
            pers.push_back(pair.infinite() ? kInfinity : pair.persistence());
         }
      }
      std::sort(pers.begin(), pers.end(), std::greater<>());
      const std::size_t m = pers.size();
      int count = static_cast<int>(m);
      double ratio = 0.0;
      for (std::size_t k = 1; k <= m; ++k)
      {
         const double current = pers[k - 1];
         const double next = k < m ? pers[k] : tail;
         if (is_gap(current, next, ratio_threshold))
         {
            count = static_cast<int>(k);
            ratio = current == kInfinity ? kInfinity : current / next;
            break;
         }
      }
      est.counts[static_cast<std::size_t>(dim)] = count;
      est.persistence_ratios.push_back(ratio);
   }
   return est;
}

} // namespace hdgeom
