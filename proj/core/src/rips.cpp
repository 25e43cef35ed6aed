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

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace hdgeom {

namespace {

using Index = std::int64_t;

constexpr int kMaxSupportedDim = 2;

/// Binomial coefficients C(n, k) for n <= max_n, k <= max_k.
class BinomialTable
{
public:
   BinomialTable(Index max_n, Index max_k) : max_n_(max_n), max_k_(max_k)
   {
      table_.assign(static_cast<std::size_t>((max_n + 1) * (max_k + 1)), 0);
      for (Index n = 0; n <= max_n; ++n)
      {
         at(n, 0) = 1;
         for (Index k = 1; k <= std::min(n, max_k); ++k)
         {
            Index sum = 0;
            if (__builtin_add_overflow(at(n - 1, k - 1), at(n - 1, k), &sum))
            {
               overflow_ = true;
               sum = std::numeric_limits<Index>::max();
            }
            at(n, k) = sum;
         }
      }
   }

   Index operator()(Index n, Index k) const
   {
      if (n < k || n < 0)
      {
         return 0;
      }
      return table_[static_cast<std::size_t>(n * (max_k_ + 1) + k)];
   }

   bool overflowed() const { return overflow_; }

private:
   Index& at(Index n, Index k) { return table_[static_cast<std::size_t>(n * (max_k_ + 1) + k)]; }

   Index max_n_;
   Index max_k_;
   bool overflow_ = false;
   std::vector<Index> table_;
};

struct Entry
{
   double diam;
   Index index;
};

/// Heap comparator: the top is the filtration-minimal entry (smallest
/// diameter, ties to the larger index). This is the pivot of a coboundary column.
struct PivotOrder
{
   bool operator()(const Entry& a, const Entry& b) const
   {
      if (a.diam != b.diam)
      {
         return a.diam > b.diam;
      }
      return a.index < b.index;
   }
};

/// Columns are reduced in reverse filtration order.
bool reduction_order(const Entry& a, const Entry& b)
{
   if (a.diam != b.diam)
   {
      return a.diam > b.diam;
   }
   return a.index < b.index;
}

class RipsComplex
{
public:
   RipsComplex(const Matrix& d, double threshold, int max_dim)
      : n_(d.rows()), dist_(d.data()), threshold_(threshold), binom_(d.rows(), max_dim + 2)
   {
   }

   Index size() const { return n_; }
   double threshold() const { return threshold_; }
   const BinomialTable& binom() const { return binom_; }

   double dist(Index i, Index j) const { return dist_[i * n_ + j]; }

   /// Writes the dim+1 vertices of a simplex in decreasing order.
   void vertices(Index idx, int dim, Index* out) const
   {
      Index top = n_ - 1;
      for (Index k = dim + 1; k >= 1; --k)
      {
         top = max_vertex(idx, k, top);
         *out++ = top;
         idx -= binom_(top, k);
      }
   }

   double diameter(Index idx, int dim) const
   {
      std::array<Index, kMaxSupportedDim + 2> v{};
      vertices(idx, dim, v.data());
      double diam = 0.0;
      for (int a = 0; a <= dim; ++a)
      {
         for (int b = 0; b < a; ++b)
         {
            diam = std::max(diam, dist(v[static_cast<std::size_t>(a)], v[static_cast<std::size_t>(b)]));
         }
      }
      return diam;
   }

private:
   /// Largest v in [k-1, top] with C(v, k) <= idx.
   Index max_vertex(Index idx, Index k, Index top) const
   {
      Index lo = k - 1;
      Index hi = top;
      while (lo < hi)
      {
         const Index mid = hi - (hi - lo) / 2;
         if (binom_(mid, k) <= idx)
         {
            lo = mid;
         }
         else
         {
            hi = mid - 1;
         }
      }
      return lo;
   }

   Index n_;
   const double* dist_;
   double threshold_;
   BinomialTable binom_;
};

/// Enumerates the cofacets of a simplex in decreasing index order.
class CofacetEnumerator
{
public:
   CofacetEnumerator(const RipsComplex& complex, const Entry& simplex, int dim)
      : complex_(complex),
        binom_(complex.binom()),
        diam_(simplex.diam),
        idx_below_(simplex.index),
        idx_above_(0),
        v_(complex.size() - 1),
        k_(dim + 1),
        dim_(dim)
   {
      complex.vertices(simplex.index, dim, vertices_.data());
   }

   /// With all_cofacets = false only cofacets adding a vertex above the
   /// simplex's largest vertex are produced, so each simplex of the next
   /// dimension is generated exactly once from its lower facet.
   bool has_next(bool all_cofacets = true) const
   {
      return v_ >= k_ && (all_cofacets || binom_(v_, k_) > idx_below_);
   }

   Entry next()
   {
      while (binom_(v_, k_) <= idx_below_)
      {
         idx_below_ -= binom_(v_, k_);
         idx_above_ += binom_(v_, k_ + 1);
         --v_;
         --k_;
      }
      double diam = diam_;
      for (int a = 0; a <= dim_; ++a)
      {
         diam = std::max(diam, complex_.dist(v_, vertices_[static_cast<std::size_t>(a)]));
      }
      const Index index = idx_above_ + binom_(v_, k_ + 1) + idx_below_;
      --v_;
      return Entry{diam, index};
   }

private:
   const RipsComplex& complex_;
   const BinomialTable& binom_;
   double diam_;
   Index idx_below_;
   Index idx_above_;
   Index v_;
   Index k_;
   int dim_;
   std::array<Index, kMaxSupportedDim + 2> vertices_{};
};

class UnionFind
{
public:
   explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0)
   {
      std::iota(parent_.begin(), parent_.end(), Index{0});
   }

   Index find(Index x)
   {
      while (parent_[static_cast<std::size_t>(x)] != x)
      {
         auto& p = parent_[static_cast<std::size_t>(x)];
         p = parent_[static_cast<std::size_t>(p)];
         x = p;
      }
      return x;
   }

   void link(Index a, Index b)
   {
      a = find(a);
      b = find(b);
      if (a == b)
      {
         return;
      }
      auto& ra = rank_[static_cast<std::size_t>(a)];
      auto& rb = rank_[static_cast<std::size_t>(b)];
      if (ra < rb)
      {
         parent_[static_cast<std::size_t>(a)] = b;
      }
      else
      {
         parent_[static_cast<std::size_t>(b)] = a;
         if (ra == rb)
         {
            ++ra;
         }
      }
   }

private:
   std::vector<Index> parent_;
   std::vector<std::uint8_t> rank_;
};

class Reducer
{
public:
   Reducer(const RipsComplex& complex, std::vector<PersistencePair>& out)
      : complex_(complex), out_(out)
   {
   }

   /// H0 via union-find; fills the dimension-1 columns (non-merging edges)
   /// and the edge list used to assemble triangles.
   void dimension_zero(std::vector<Entry>& edges, std::vector<Entry>& columns)
   {
      const Index n = complex_.size();
      const auto& binom = complex_.binom();
      edges.clear();
      for (Index i = 0; i < n; ++i)
      {
         for (Index j = 0; j < i; ++j)
         {
            const double d = complex_.dist(i, j);
            if (d <= complex_.threshold())
            {
               edges.push_back(Entry{d, binom(i, 2) + j});
            }
         }
      }
      // Filtration order: increasing diameter, ties to the larger index.
      std::sort(edges.begin(), edges.end(), [](const Entry& a, const Entry& b) {
         return reduction_order(b, a);
      });

      UnionFind components(n);
      columns.clear();
      std::array<Index, 2> v{};
      for (const Entry& e : edges)
      {
         complex_.vertices(e.index, 1, v.data());
         const Index u = components.find(v[0]);
         const Index w = components.find(v[1]);
         if (u != w)
         {
            components.link(u, w);
            if (e.diam > 0.0)
            {
               out_.push_back(PersistencePair{0, 0.0, e.diam});
            }
         }
         else
         {
            columns.push_back(e);
         }
      }
      for (Index i = 0; i < n; ++i)
      {
         if (components.find(i) == i)
         {
            out_.push_back(PersistencePair{0, 0.0, kInfinity});
         }
      }
      std::sort(columns.begin(), columns.end(), reduction_order);
   }

   /// Reduces the coboundary columns of dimension `dim`. Afterwards
   /// pivots() holds the (dim+1)-simplices paired with a column.
   void reduce(const std::vector<Entry>& columns, int dim)
   {
      pivots_.clear();
      pivots_.reserve(columns.size());
      reduction_offsets_.assign(1, 0);
      reduction_entries_.clear();

      for (std::size_t col = 0; col < columns.size(); ++col)
      {
         const Entry& simplex = columns[col];
         heap_.clear();
         working_reduction_.clear();

         Entry pivot = init_coboundary_and_get_pivot(simplex, dim);
         while (true)
         {
            if (pivot.index < 0)
            {
               out_.push_back(PersistencePair{dim, simplex.diam, kInfinity});
               break;
            }
            const auto it = pivots_.find(pivot.index);
            if (it == pivots_.end())
            {
               if (pivot.diam > simplex.diam)
               {
                  out_.push_back(PersistencePair{dim, simplex.diam, pivot.diam});
               }
               pivots_.emplace(pivot.index, static_cast<Index>(col));
               break;
            }
            const auto other = static_cast<std::size_t>(it->second);
            add_coboundary(columns[other], dim);
            working_reduction_.push_back(columns[other]);
            for (std::size_t e = reduction_offsets_[other]; e < reduction_offsets_[other + 1]; ++e)
            {
               add_coboundary(reduction_entries_[e], dim);
               working_reduction_.push_back(reduction_entries_[e]);
            }
            pivot = get_pivot();
         }
         store_reduction_column();
      }
   }

   /// Columns for dimension dim+1: cofacets of `simplices` within the
   /// threshold that were not paired in dimension `dim`. When `next` is
   /// non-null it receives every (dim+1)-simplex within the threshold.
   void assemble_columns(const std::vector<Entry>& simplices, int dim, std::vector<Entry>& columns,
                         std::vector<Entry>* next, std::size_t budget) const
   {
      columns.clear();
      if (next != nullptr)
      {
         next->clear();
      }
      for (const Entry& simplex : simplices)
      {
         CofacetEnumerator cofacets(complex_, simplex, dim);
         while (cofacets.has_next(false))
         {
            const Entry cofacet = cofacets.next();
            if (cofacet.diam > complex_.threshold())
            {
               continue;
            }
            if (next != nullptr)
            {
               next->push_back(cofacet);
            }
            if (!pivots_.contains(cofacet.index))
            {
               columns.push_back(cofacet);
               if (columns.size() > budget)
               {
                  throw ResourceLimit("rips_persistence: more than " + std::to_string(budget) +
                                      " columns in dimension " + std::to_string(dim + 1) +
                                      "; lower max_edge or max_dim, or raise the column budget");
               }
            }
         }
      }
      std::sort(columns.begin(), columns.end(), reduction_order);
   }

private:
   Entry init_coboundary_and_get_pivot(const Entry& simplex, int dim)
   {
      bool check_for_emergent_pair = true;
      cofacet_buffer_.clear();
      CofacetEnumerator cofacets(complex_, simplex, dim);
      while (cofacets.has_next())
      {
         const Entry cofacet = cofacets.next();
         if (cofacet.diam > complex_.threshold())
         {
            continue;
         }
         cofacet_buffer_.push_back(cofacet);
         if (check_for_emergent_pair && cofacet.diam == simplex.diam)
         {
            // First equal-diameter cofacet in decreasing index order is the
            // pivot; if unclaimed the column is already reduced.
            if (!pivots_.contains(cofacet.index))
            {
               return cofacet;
            }
            check_for_emergent_pair = false;
         }
      }
      for (const Entry& e : cofacet_buffer_)
      {
         heap_.push_back(e);
         std::push_heap(heap_.begin(), heap_.end(), PivotOrder{});
      }
      return get_pivot();
   }

   void add_coboundary(const Entry& simplex, int dim)
   {
      CofacetEnumerator cofacets(complex_, simplex, dim);
      while (cofacets.has_next())
      {
         const Entry cofacet = cofacets.next();
         if (cofacet.diam <= complex_.threshold())
         {
            heap_.push_back(cofacet);
            std::push_heap(heap_.begin(), heap_.end(), PivotOrder{});
         }
      }
   }

   Entry pop_top()
   {
      std::pop_heap(heap_.begin(), heap_.end(), PivotOrder{});
      const Entry top = heap_.back();
      heap_.pop_back();
      return top;
   }

   /// Z/2: equal entries cancel in pairs.
   Entry pop_pivot()
   {
      if (heap_.empty())
      {
         return Entry{0.0, -1};
      }
      Entry pivot = pop_top();
      while (!heap_.empty() && heap_.front().index == pivot.index)
      {
         pop_top();
         if (heap_.empty())
         {
            return Entry{0.0, -1};
         }
         pivot = pop_top();
      }
      return pivot;
   }

   Entry get_pivot()
   {
      const Entry pivot = pop_pivot();
      if (pivot.index >= 0)
      {
         heap_.push_back(pivot);
         std::push_heap(heap_.begin(), heap_.end(), PivotOrder{});
      }
      return pivot;
   }

   void store_reduction_column()
   {
      std::sort(working_reduction_.begin(), working_reduction_.end(),
                [](const Entry& a, const Entry& b) { return a.index < b.index; });
      std::size_t i = 0;
      while (i < working_reduction_.size())
      {
         std::size_t j = i;
         while (j < working_reduction_.size() && working_reduction_[j].index == working_reduction_[i].index)
         {
            ++j;
         }
         if ((j - i) % 2 == 1)
         {
            reduction_entries_.push_back(working_reduction_[i]);
         }
         i = j;
      }
      reduction_offsets_.push_back(reduction_entries_.size());
   }

   const RipsComplex& complex_;
   std::vector<PersistencePair>& out_;
   absl::flat_hash_map<Index, Index> pivots_;
   std::vector<Entry> heap_;
   std::vector<Entry> cofacet_buffer_;
   std::vector<Entry> working_reduction_;
   std::vector<std::size_t> reduction_offsets_;
   std::vector<Entry> reduction_entries_;
};

} // namespace

std::vector<PersistencePair> PersistenceDiagram::in_dim(int dim) const
{
   std::vector<PersistencePair> out;
   for (const auto& pair : pairs)
   {
      if (pair.dim == dim)
      {
         out.push_back(pair);
      }
   }
   return out;
}

std::size_t PersistenceDiagram::count(int dim) const
{
   return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [dim](const auto& p) { return p.dim == dim; }));
}

PersistenceDiagram rips_persistence(const DistanceMatrix& dm, const RipsOptions& options)
{
   require(options.max_dim >= 0, "rips_persistence: max_dim must be >= 0");
   if (options.max_dim > kMaxSupportedDim)
   {
      throw InvalidArgument("rips_persistence: max_dim " + std::to_string(options.max_dim) +
                            " is unsupported (homology is computed up to dimension 2)");
   }
   require(dm.size() >= 1, "rips_persistence: need at least one point");
   require(dm.d.rows() == dm.d.cols(), "rips_persistence: distance matrix must be square");

   double threshold = 0.0;
   if (options.max_edge)
   {
      require(*options.max_edge > 0.0 && !std::isnan(*options.max_edge),
              "rips_persistence: max_edge must be > 0");
      threshold = *options.max_edge;
   }
   else
   {
      threshold = enclosing_radius(dm);
   }

   RipsComplex complex(dm.d, threshold, options.max_dim);
   if (complex.binom().overflowed())
   {
      throw ResourceLimit("rips_persistence: " + std::to_string(dm.size()) +
                          " points overflow 64-bit simplex indices at dimension " +
                          std::to_string(options.max_dim + 1));
   }

   PersistenceDiagram dgm;
   dgm.max_dim = options.max_dim;
   dgm.max_edge = threshold;

   Reducer reducer(complex, dgm.pairs);
   std::vector<Entry> simplices;
   std::vector<Entry> columns;
   reducer.dimension_zero(simplices, columns);

   for (int dim = 1; dim <= options.max_dim; ++dim)
   {
      if (columns.size() > options.column_budget)
      {
         throw ResourceLimit("rips_persistence: " + std::to_string(columns.size()) +
                             " columns in dimension " + std::to_string(dim) +
                             " exceed the budget of " + std::to_string(options.column_budget));
      }
      reducer.reduce(columns, dim);
      if (dim < options.max_dim)
      {
         std::vector<Entry> next;
         const bool keep_next = dim + 1 < options.max_dim;
         reducer.assemble_columns(simplices, dim, columns, keep_next ? &next : nullptr,
                                  options.column_budget);
         simplices = std::move(next);
      }
   }

   std::sort(dgm.pairs.begin(), dgm.pairs.end());
   return dgm;
}

} // namespace hdgeom
