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
#include <cmath>
#include <limits>
#include <queue>

namespace hdgeom {

namespace {

/// Hopcroft-Karp on a bipartite graph given as adjacency lists.
class BipartiteMatcher
{
public:
   BipartiteMatcher(std::size_t left, std::size_t right)
      : adj_(left), match_left_(left), match_right_(right), dist_(left)
   {
   }

   void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(v); }

   std::size_t max_matching()
   {
      std::fill(match_left_.begin(), match_left_.end(), kNone);
      std::fill(match_right_.begin(), match_right_.end(), kNone);
      std::size_t size = 0;
      while (bfs())
      {
         for (std::size_t u = 0; u < adj_.size(); ++u)
         {
            if (match_left_[u] == kNone && dfs(u))
            {
               ++size;
            }
         }
      }
      return size;
   }

private:
   static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

   bool bfs()
   {
      std::queue<std::size_t> queue;
      bool reachable_free = false;
      for (std::size_t u = 0; u < adj_.size(); ++u)
      {
         if (match_left_[u] == kNone)
         {
            dist_[u] = 0;
            queue.push(u);
         }
         else
         {
            dist_[u] = kNone;
         }
      }
      while (!queue.empty())
      {
         const std::size_t u = queue.front();
         queue.pop();
         for (const std::size_t v : adj_[u])
         {
            const std::size_t w = match_right_[v];
            if (w == kNone)
            {
               reachable_free = true;
            }
            else if (dist_[w] == kNone)
            {
               dist_[w] = dist_[u] + 1;
               queue.push(w);
            }
         }
      }
      return reachable_free;
   }

   bool dfs(std::size_t u)
   {
      for (const std::size_t v : adj_[u])
      {
         const std::size_t w = match_right_[v];
         if (w == kNone || (dist_[w] == dist_[u] + 1 && dfs(w)))
         {
            match_left_[u] = v;
            match_right_[v] = u;
            return true;
         }
      }
      dist_[u] = kNone;
      return false;
   }

   std::vector<std::vector<std::size_t>> adj_;
   std::vector<std::size_t> match_left_;
   std::vector<std::size_t> match_right_;
   std::vector<std::size_t> dist_;
};

double linf(const PersistencePair& a, const PersistencePair& b)
{
   return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

/// Left vertices: A then diagonal copies of B. Right: B then diagonal copies of A.
bool perfect_matching_within(const std::vector<PersistencePair>& a, const std::vector<PersistencePair>& b,
                             double t)
{
   const std::size_t na = a.size();
   const std::size_t nb = b.size();
   BipartiteMatcher matcher(na + nb, na + nb);
   for (std::size_t i = 0; i < na; ++i)
   {
      for (std::size_t j = 0; j < nb; ++j)
      {
         if (linf(a[i], b[j]) <= t)
         {
            matcher.add_edge(i, j);
         }
      }
      if (a[i].persistence() / 2.0 <= t)
      {
         matcher.add_edge(i, nb + i);
      }
   }
   for (std::size_t j = 0; j < nb; ++j)
   {
      if (b[j].persistence() / 2.0 <= t)
      {
         matcher.add_edge(na + j, j);
      }
      for (std::size_t i = 0; i < na; ++i)
      {
         matcher.add_edge(na + j, nb + i);
      }
   }
   return matcher.max_matching() == na + nb;
}

double finite_bottleneck(const std::vector<PersistencePair>& a, const std::vector<PersistencePair>& b)
{
   if (a.empty() && b.empty())
   {
      return 0.0;
   }
   std::vector<double> candidates{0.0};
   candidates.reserve(a.size() * b.size() + a.size() + b.size() + 1);
   for (const auto& x : a)
   {
      candidates.push_back(x.persistence() / 2.0);
      for (const auto& y : b)
      {
         candidates.push_back(linf(x, y));
      }
   }
   for (const auto& y : b)
   {
      candidates.push_back(y.persistence() / 2.0);
   }
   std::sort(candidates.begin(), candidates.end());
   candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

   // Matching everything to the diagonal is always feasible at the largest
   // half-persistence, so the last candidate is feasible.
   std::size_t lo = 0;
   std::size_t hi = candidates.size() - 1;
   while (lo < hi)
   {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (perfect_matching_within(a, b, candidates[mid]))
      {
         hi = mid;
      }
      else
      {
         lo = mid + 1;
      }
   }
   return candidates[lo];
}

} // namespace

BottleneckResult bottleneck(std::span<const PersistencePair> a, std::span<const PersistencePair> b)
{
   std::vector<PersistencePair> fa;
   std::vector<PersistencePair> fb;
   std::vector<double> ia;
   std::vector<double> ib;
   for (const auto& x : a)
   {
      require(!std::isnan(x.birth) && !std::isnan(x.death) && x.death >= x.birth,
              "bottleneck: malformed diagram point");
      if (x.infinite())
      {
         ia.push_back(x.birth);
      }
      else
      {
         fa.push_back(x);
      }
   }
   for (const auto& y : b)
   {
      require(!std::isnan(y.birth) && !std::isnan(y.death) && y.death >= y.birth,
              "bottleneck: malformed diagram point");
      if (y.infinite())
      {
         ib.push_back(y.birth);
      }
      else
      {
         fb.push_back(y);
      }
   }

   BottleneckResult result;
   if (ia.size() != ib.size())
   {
      result.distance = kInfinity;
      result.infinite_mismatch = true;
      return result;
   }
   std::sort(ia.begin(), ia.end());
   std::sort(ib.begin(), ib.end());
   double infinite_part = 0.0;
   for (std::size_t k = 0; k < ia.size(); ++k)
   {
      infinite_part = std::max(infinite_part, std::abs(ia[k] - ib[k]));
   }
   result.distance = std::max(infinite_part, finite_bottleneck(fa, fb));
   return result;
}

BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim)
{
   const auto pa = a.in_dim(dim);
   const auto pb = b.in_dim(dim);
   return bottleneck(std::span<const PersistencePair>(pa), std::span<const PersistencePair>(pb));
}

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim)
{
   return bottleneck(a, b, dim).distance;
}

} // namespace hdgeom
