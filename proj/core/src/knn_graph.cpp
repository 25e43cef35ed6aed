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
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace hdgeom {

namespace {

/// Points plus a set of lattice offsets; distance is the minimum over offsets
/// (a single zero offset for plain Euclidean metrics).
struct PeriodicCloud
{
   Matrix points;
   std::vector<Eigen::VectorXd> offsets;

   double distance(std::size_t i, std::size_t j) const
   {
      const auto a = points.row(static_cast<Eigen::Index>(i));
      const auto b = points.row(static_cast<Eigen::Index>(j));
      double best = std::numeric_limits<double>::infinity();
      for (const auto& off : offsets)
      {
         best = std::min(best, (b - a + off.transpose()).squaredNorm());
      }
      return std::sqrt(best);
   }
};

PeriodicCloud plain_cloud(const Matrix& points)
{
   return PeriodicCloud{points, {Eigen::VectorXd::Zero(points.cols())}};
}

PeriodicCloud cloud_for(const Matrix& points, const LatentMetric& metric)
{
   check_domain(metric, points);
   if (const auto* t = std::get_if<RhombusTeleport>(&metric))
   {
      PeriodicCloud cloud{points, {}};
      for (int a = -1; a <= 1; ++a)
      {
         for (int b = -1; b <= 1; ++b)
         {
            cloud.offsets.emplace_back(Eigen::VectorXd(a * t->rhombus.r1 + b * t->rhombus.r2));
         }
      }
      return cloud;
   }
   if (const auto* t = std::get_if<Torus3D>(&metric))
   {
      return plain_cloud(torus3d_embedding(*t, points));
   }
   return plain_cloud(points);
}

class DisjointSets
{
public:
   explicit DisjointSets(std::size_t n) : parent_(n)
   {
      std::iota(parent_.begin(), parent_.end(), std::size_t{0});
   }

   std::size_t find(std::size_t x)
   {
      while (parent_[x] != x)
      {
         parent_[x] = parent_[parent_[x]];
         x = parent_[x];
      }
      return x;
   }

   bool unite(std::size_t a, std::size_t b)
   {
      a = find(a);
      b = find(b);
      if (a == b)
      {
         return false;
      }
      parent_[std::max(a, b)] = std::min(a, b);
      return true;
   }

private:
   std::vector<std::size_t> parent_;
};

using NeighbourLists = std::vector<std::vector<GraphEdge>>;

/// The `cap` nearest neighbours of every vertex, ordered by (distance, index).
NeighbourLists nearest(const PeriodicCloud& cloud, std::size_t cap)
{
   const auto n = static_cast<std::size_t>(cloud.points.rows());
   NeighbourLists lists(n);
   parallel_for(n, [&](std::size_t i) {
      std::vector<GraphEdge> row;
      row.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j)
      {
         if (j != i)
         {
            row.push_back(GraphEdge{static_cast<std::uint32_t>(j), cloud.distance(i, j)});
         }
      }
      const auto by_distance = [](const GraphEdge& a, const GraphEdge& b) {
         return a.weight != b.weight ? a.weight < b.weight : a.to < b.to;
      };
      std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(cap), row.end(), by_distance);
      row.resize(cap);
      lists[i] = std::move(row);
   });
   return lists;
}

bool connected_at(const NeighbourLists& lists, std::size_t k)
{
   const std::size_t n = lists.size();
   DisjointSets sets(n);
   std::size_t components = n;
   for (std::size_t i = 0; i < n && components > 1; ++i)
   {
      for (std::size_t t = 0; t < k; ++t)
      {
         if (sets.unite(i, lists[i][t].to))
         {
            --components;
         }
      }
   }
   return components == 1;
}

void sort_and_dedupe(std::vector<GraphEdge>& edges)
{
   std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
      return a.to != b.to ? a.to < b.to : a.weight < b.weight;
   });
   edges.erase(std::unique(edges.begin(), edges.end(),
                           [](const GraphEdge& a, const GraphEdge& b) { return a.to == b.to; }),
               edges.end());
}

KnnGraph assemble(const NeighbourLists& lists, std::size_t k, bool symmetrize)
{
   KnnGraph g;
   g.n = lists.size();
   g.k = k;
   g.symmetrized = symmetrize;
   g.adjacency.assign(g.n, {});
   for (std::size_t i = 0; i < g.n; ++i)
   {
      for (std::size_t t = 0; t < k; ++t)
      {
         const GraphEdge& e = lists[i][t];
         g.adjacency[i].push_back(e);
         if (symmetrize)
         {
            g.adjacency[e.to].push_back(GraphEdge{static_cast<std::uint32_t>(i), e.weight});
         }
      }
   }
   for (auto& edges : g.adjacency)
   {
      sort_and_dedupe(edges);
   }
   return g;
}

KnnGraph build(const PeriodicCloud& cloud, const KnnOptions& options)
{
   const auto n = static_cast<std::size_t>(cloud.points.rows());
   require(n >= 2, "knn_graph needs at least 2 points");
   require(n <= std::numeric_limits<std::uint32_t>::max(), "knn_graph: too many points");

   if (options.k)
   {
      require(*options.k >= 1, "knn_graph: k must be >= 1");
      const std::size_t k = std::min(*options.k, n - 1);
      return assemble(nearest(cloud, k), k, options.symmetrize);
   }

   require(options.symmetrize, "knn_graph: automatic k needs a symmetrized graph");
   std::size_t cap = std::min<std::size_t>(n - 1, 16);
   NeighbourLists lists = nearest(cloud, cap);
   while (!connected_at(lists, cap))
   {
      if (cap == n - 1)
      {
         // Every vertex linked to every other vertex is always connected.
         throw InvalidArgument("knn_graph: complete graph reported disconnected");
      }
      cap = std::min(n - 1, cap * 2);
      lists = nearest(cloud, cap);
   }
   std::size_t lo = 1;
   std::size_t hi = cap;
   while (lo < hi)
   {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (connected_at(lists, mid))
      {
         hi = mid;
      }
      else
      {
         lo = mid + 1;
      }
   }
   return assemble(lists, lo, true);
}

} // namespace

std::size_t KnnGraph::edge_count() const
{
   std::size_t total = 0;
   for (const auto& edges : adjacency)
   {
      total += edges.size();
   }
   return symmetrized ? total / 2 : total;
}

bool KnnGraph::connected() const
{
   if (n <= 1)
   {
      return true;
   }
   DisjointSets sets(n);
   std::size_t components = n;
   for (std::size_t i = 0; i < n; ++i)
   {
      for (const auto& e : adjacency[i])
      {
         if (sets.unite(i, e.to))
         {
            --components;
         }
      }
   }
   return components == 1;
}

KnnGraph knn_graph(const Matrix& points, const LatentMetric& metric, const KnnOptions& options)
{
   return build(cloud_for(points, metric), options);
}

KnnGraph knn_graph(const Matrix& points, AmbientEuclid, const KnnOptions& options)
{
   require(points.allFinite(), "knn_graph: non-finite coordinates");
   return build(plain_cloud(points), options);
}

KnnGraph graph_from_edges(std::size_t n, std::span<const WeightedEdge> edges)
{
   require(n <= std::numeric_limits<std::uint32_t>::max(), "graph_from_edges: too many vertices");
   KnnGraph g;
   g.n = n;
   g.k = 0;
   g.symmetrized = true;
   g.adjacency.assign(n, {});
   for (const auto& e : edges)
   {
      require(e.u < n && e.v < n, "graph_from_edges: vertex out of range");
      if (e.u == e.v)
      {
         continue;
      }
      g.adjacency[e.u].push_back(GraphEdge{static_cast<std::uint32_t>(e.v), e.w});
      g.adjacency[e.v].push_back(GraphEdge{static_cast<std::uint32_t>(e.u), e.w});
   }
   for (auto& list : g.adjacency)
   {
      sort_and_dedupe(list);
   }
   return g;
}

} // namespace hdgeom
