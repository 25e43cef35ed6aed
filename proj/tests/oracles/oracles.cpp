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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace hdgeom::oracle {

namespace {

struct Simplex
{
   std::vector<int> vertices;
   double value = 0.0;
   int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

void enumerate(const DistanceMatrix& dm, int top_dim, double max_edge, std::vector<Simplex>& out)
{
   const int n = static_cast<int>(dm.size());
   std::vector<int> current;
   std::function<void(int, double)> grow = [&](int next, double value) {
      if (!current.empty())
      {
         out.push_back({current, value});
      }
      if (static_cast<int>(current.size()) == top_dim + 1)
      {
         return;
      }
      for (int v = next; v < n; ++v)
      {
         double w = value;
         for (const int u : current)
         {
            w = std::max(w, dm.d(u, v));
         }
         if (w > max_edge)
         {
            continue;
         }
         current.push_back(v);
         grow(v + 1, w);
         current.pop_back();
      }
   };
   grow(0, 0.0);
}

} // namespace

PersistenceDiagram naive_rips(const DistanceMatrix& dm, int max_dim, double max_edge)
{
   std::vector<Simplex> simplices;
   enumerate(dm, max_dim + 1, max_edge, simplices);
   std::stable_sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
      if (a.value != b.value)
      {
         return a.value < b.value;
      }
      if (a.dim() != b.dim())
      {
         return a.dim() < b.dim();
      }
      return a.vertices < b.vertices;
   });
   std::map<std::vector<int>, int> index;
   for (std::size_t i = 0; i < simplices.size(); ++i)
   {
      index[simplices[i].vertices] = static_cast<int>(i);
   }

   const std::size_t m = simplices.size();
   std::vector<std::vector<int>> columns(m);
   for (std::size_t j = 0; j < m; ++j)
   {
      const auto& v = simplices[j].vertices;
      if (v.size() < 2)
      {
         continue;
      }
      for (std::size_t drop = 0; drop < v.size(); ++drop)
      {
         std::vector<int> face;
         for (std::size_t t = 0; t < v.size(); ++t)
         {
            if (t != drop)
            {
               face.push_back(v[t]);
            }
         }
         columns[j].push_back(index.at(face));
      }
      std::sort(columns[j].begin(), columns[j].end());
   }

   std::vector<int> owner_of_low(m, -1);
   std::vector<bool> is_low(m, false);
   std::vector<bool> negative(m, false);
   PersistenceDiagram dgm;
   dgm.max_dim = max_dim;
   dgm.max_edge = max_edge;
   for (std::size_t j = 0; j < m; ++j)
   {
      auto& col = columns[j];
      while (!col.empty() && owner_of_low[static_cast<std::size_t>(col.back())] >= 0)
      {
         const auto& other = columns[static_cast<std::size_t>(owner_of_low[static_cast<std::size_t>(col.back())])];
         std::vector<int> sum;
         std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(sum));
         col = std::move(sum);
      }
      if (!col.empty())
      {
         const auto low = static_cast<std::size_t>(col.back());
         owner_of_low[low] = static_cast<int>(j);
         is_low[low] = true;
         negative[j] = true;
         const double birth = simplices[low].value;
         const double death = simplices[j].value;
         if (death > birth)
         {
            dgm.pairs.push_back({simplices[low].dim(), birth, death});
         }
      }
   }
   for (std::size_t j = 0; j < m; ++j)
   {
      if (!negative[j] && !is_low[j] && simplices[j].dim() <= max_dim)
      {
         dgm.pairs.push_back({simplices[j].dim(), simplices[j].value, kInfinity});
      }
   }
   std::sort(dgm.pairs.begin(), dgm.pairs.end());
   return dgm;
}

double exhaustive_bottleneck(const std::vector<PersistencePair>& a, const std::vector<PersistencePair>& b)
{
   std::vector<PersistencePair> fa;
   std::vector<PersistencePair> fb;
   std::vector<double> ia;
   std::vector<double> ib;
   for (const auto& x : a)
   {
      (x.infinite() ? ia.push_back(x.birth) : fa.push_back(x));
   }
   for (const auto& x : b)
   {
      (x.infinite() ? ib.push_back(x.birth) : fb.push_back(x));
   }
   if (ia.size() != ib.size())
   {
      return kInfinity;
   }

   double essential = 0.0;
   if (!ia.empty())
   {
      essential = kInfinity;
      std::sort(ib.begin(), ib.end());
      do
      {
         double worst = 0.0;
         for (std::size_t i = 0; i < ia.size(); ++i)
         {
            worst = std::max(worst, std::abs(ia[i] - ib[i]));
         }
         essential = std::min(essential, worst);
      } while (std::next_permutation(ib.begin(), ib.end()));
   }

   double best = kInfinity;
   std::vector<bool> used(fb.size(), false);
   std::function<void(std::size_t, double)> assign = [&](std::size_t i, double worst) {
      if (worst >= best)
      {
         return;
      }
      if (i == fa.size())
      {
         for (std::size_t j = 0; j < fb.size(); ++j)
         {
            if (!used[j])
            {
               worst = std::max(worst, (fb[j].death - fb[j].birth) / 2.0);
            }
         }
         best = std::min(best, worst);
         return;
      }
      assign(i + 1, std::max(worst, (fa[i].death - fa[i].birth) / 2.0));
      for (std::size_t j = 0; j < fb.size(); ++j)
      {
         if (used[j])
         {
            continue;
         }
         used[j] = true;
         const double cost = std::max(std::abs(fa[i].birth - fb[j].birth), std::abs(fa[i].death - fb[j].death));
         assign(i + 1, std::max(worst, cost));
         used[j] = false;
      }
   };
   assign(0, 0.0);
   return std::max(best, essential);
}

Matrix floyd_warshall(const KnnGraph& g)
{
   const auto n = static_cast<Eigen::Index>(g.n);
   Matrix d = Matrix::Constant(n, n, kInfinity);
   for (Eigen::Index i = 0; i < n; ++i)
   {
      d(i, i) = 0.0;
      for (const auto& e : g.adjacency[static_cast<std::size_t>(i)])
      {
         d(i, e.to) = std::min(d(i, e.to), e.weight);
      }
   }
   for (Eigen::Index k = 0; k < n; ++k)
   {
      for (Eigen::Index i = 0; i < n; ++i)
      {
         for (Eigen::Index j = 0; j < n; ++j)
         {
            d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
         }
      }
   }
   return d;
}

double brute_hausdorff(const Matrix& a, const Matrix& b)
{
   auto directed = [](const Matrix& x, const Matrix& y) {
      double worst = 0.0;
      for (Eigen::Index i = 0; i < x.rows(); ++i)
      {
         double nearest = kInfinity;
         for (Eigen::Index j = 0; j < y.rows(); ++j)
         {
            double s = 0.0;
            for (Eigen::Index c = 0; c < x.cols(); ++c)
            {
               const double t = x(i, c) - y(j, c);
               s += t * t;
            }
            nearest = std::min(nearest, std::sqrt(s));
         }
         worst = std::max(worst, nearest);
      }
      return worst;
   };
   return std::max(directed(a, b), directed(b, a));
}

Matrix brute_gram(const Matrix& y)
{
   Matrix g(y.rows(), y.rows());
   for (Eigen::Index i = 0; i < y.rows(); ++i)
   {
      for (Eigen::Index j = 0; j < y.rows(); ++j)
      {
         double s = 0.0;
         for (Eigen::Index c = 0; c < y.cols(); ++c)
         {
            s += y(i, c) * y(j, c);
         }
         g(i, j) = s;
      }
   }
   return g;
}

DistanceMatrix random_cloud(std::mt19937_64& rng, std::size_t n, bool with_ties)
{
   DistanceMatrix dm;
   dm.d = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
   if (with_ties)
   {
      std::uniform_int_distribution<int> level(1, 5);
      for (std::size_t i = 0; i < n; ++i)
      {
         for (std::size_t j = i + 1; j < n; ++j)
         {
            const double v = level(rng);
            dm.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            dm.d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
         }
      }
      return dm;
   }
   std::uniform_real_distribution<double> unit(0.0, 1.0);
   Matrix pts(static_cast<Eigen::Index>(n), 3);
   for (Eigen::Index i = 0; i < pts.rows(); ++i)
   {
      for (Eigen::Index c = 0; c < 3; ++c)
      {
         pts(i, c) = unit(rng);
      }
   }
   return distance_matrix(pts, Scaling::Raw);
}

std::vector<PersistencePair> random_diagram(std::mt19937_64& rng, std::size_t max_points, std::size_t essential,
                                            bool integer_grid)
{
   std::uniform_int_distribution<std::size_t> count(0, max_points);
   std::uniform_int_distribution<int> grid(0, 6);
   std::uniform_real_distribution<double> unit(0.0, 1.0);
   std::vector<PersistencePair> out;
   const std::size_t m = count(rng);
   for (std::size_t i = 0; i < m; ++i)
   {
      double b = 0.0;
      double d = 0.0;
      while (!(d > b))
      {
         b = integer_grid ? grid(rng) : unit(rng);
         d = integer_grid ? grid(rng) : unit(rng);
      }
      out.push_back({1, b, d});
   }
   for (std::size_t i = 0; i < essential; ++i)
   {
      out.push_back({1, integer_grid ? static_cast<double>(grid(rng)) : unit(rng), kInfinity});
   }
   return out;
}

KnnGraph random_integer_graph(std::mt19937_64& rng, std::size_t n, std::size_t extra_edges, int max_weight)
{
   std::uniform_int_distribution<int> weight(1, max_weight);
   std::vector<WeightedEdge> edges;
   for (std::size_t v = 1; v < n; ++v)
   {
      std::uniform_int_distribution<std::size_t> parent(0, v - 1);
      edges.push_back({parent(rng), v, static_cast<double>(weight(rng))});
   }
   std::uniform_int_distribution<std::size_t> vertex(0, n - 1);
   for (std::size_t e = 0; e < extra_edges; ++e)
   {
      const std::size_t u = vertex(rng);
      const std::size_t v = vertex(rng);
      if (u != v)
      {
         edges.push_back({u, v, static_cast<double>(weight(rng))});
      }
   }
   return graph_from_edges(n, edges);
}

} // namespace hdgeom::oracle
