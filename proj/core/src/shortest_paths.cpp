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

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>

namespace hdgeom {

namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

void dijkstra(const KnnGraph& g, std::size_t source, double* out)
{
   using Item = std::pair<double, std::uint32_t>;
   std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
   std::fill(out, out + g.n, kUnreachable);
   out[source] = 0.0;
   heap.emplace(0.0, static_cast<std::uint32_t>(source));
   while (!heap.empty())
   {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > out[u])
      {
         continue;
      }
      for (const auto& e : g.adjacency[u])
      {
         const double candidate = d + e.weight;
         if (candidate < out[e.to])
         {
            out[e.to] = candidate;
            heap.emplace(candidate, e.to);
         }
      }
   }
}

std::vector<std::size_t> resolve_sources(std::size_t n, std::span<const std::size_t> sources)
{
   std::vector<std::size_t> out;
   if (sources.empty())
   {
      out.resize(n);
      std::iota(out.begin(), out.end(), std::size_t{0});
      return out;
   }
   for (const std::size_t s : sources)
   {
      require(s < n, "shortest_paths: source " + std::to_string(s) + " out of range");
      out.push_back(s);
   }
   return out;
}

} // namespace

GeodesicMatrix shortest_paths(const KnnGraph& g, std::span<const std::size_t> sources)
{
   require(g.adjacency.size() == g.n, "shortest_paths: malformed graph");
   for (std::size_t u = 0; u < g.n; ++u)
   {
      for (const auto& e : g.adjacency[u])
      {
         if (!(e.weight >= 0.0))
         {
            throw InvalidArgument("shortest_paths: edge " + std::to_string(u) + "-" + std::to_string(e.to) +
                                  " has negative or NaN weight " + std::to_string(e.weight));
         }
      }
   }

   GeodesicMatrix out;
   out.all_sources = sources.empty();
   out.sources = resolve_sources(g.n, sources);
   out.lengths.resize(static_cast<Eigen::Index>(out.sources.size()), static_cast<Eigen::Index>(g.n));
   parallel_for(out.sources.size(), [&](std::size_t s) {
      dijkstra(g, out.sources[s], out.lengths.row(static_cast<Eigen::Index>(s)).data());
   });
   out.has_unreachable = !out.lengths.allFinite();
   return out;
}

GeodesicMatrix retessellated_teleport_paths(const Matrix& points, const FlatTorusRhombus& rhombus,
                                            std::size_t k, std::span<const std::size_t> sources)
{
   check_domain(LatentMetric{RhombusTeleport{rhombus}}, points);
   const Eigen::Index n = points.rows();
   require(n >= 2, "retessellated_teleport_paths needs at least 2 points");

   // Copy c = 3 * (a + 1) + (b + 1); the central cell is c = 4.
   constexpr int kCentral = 4;
   Matrix tiled(9 * n, 2);
   int c = 0;
   for (int a = -1; a <= 1; ++a)
   {
      for (int b = -1; b <= 1; ++b, ++c)
      {
         const Vec2 shift = a * rhombus.r1 + b * rhombus.r2;
         tiled.middleRows(c * n, n) = points.rowwise() + shift.transpose();
      }
   }
   const KnnGraph g = knn_graph(tiled, AmbientEuclid{}, KnnOptions{k, true});

   const auto local = resolve_sources(static_cast<std::size_t>(n), sources);
   std::vector<std::size_t> tiled_sources;
   for (const std::size_t s : local)
   {
      tiled_sources.push_back(static_cast<std::size_t>(kCentral * n) + s);
   }
   const GeodesicMatrix full = shortest_paths(g, tiled_sources);

   GeodesicMatrix out;
   out.all_sources = sources.empty();
   out.sources = local;
   out.lengths.resize(static_cast<Eigen::Index>(local.size()), n);
   for (Eigen::Index s = 0; s < out.lengths.rows(); ++s)
   {
      for (Eigen::Index j = 0; j < n; ++j)
      {
         double best = kUnreachable;
         for (int copy = 0; copy < 9; ++copy)
         {
            best = std::min(best, full.lengths(s, copy * n + j));
         }
         out.lengths(s, j) = best;
      }
   }
   out.has_unreachable = !out.lengths.allFinite();
   return out;
}

} // namespace hdgeom
