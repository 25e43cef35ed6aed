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
#include "hdgeom/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hdgeom {

namespace {

/// Neumaier compensated summation.
class CompensatedSum
{
public:
   void add(double x)
   {
      const double t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x))
      {
         carry_ += (sum_ - t) + x;
      }
      else
      {
         carry_ += (x - t) + sum_;
      }
      sum_ = t;
   }

   double value() const { return sum_ + carry_; }

private:
   double sum_ = 0.0;
   double carry_ = 0.0;
};

/// Calls f(row, col) for each unordered pair covered by the matrix exactly once.
template <typename F>
void for_each_pair(const GeodesicMatrix& m, F&& f)
{
   const std::size_t n = m.n();
   std::vector<std::size_t> row_of(n, n);
   for (std::size_t s = 0; s < m.sources.size(); ++s)
   {
      row_of[m.sources[s]] = s;
   }
   for (std::size_t s = 0; s < m.sources.size(); ++s)
   {
      const std::size_t a = m.sources[s];
      for (std::size_t b = 0; b < n; ++b)
      {
         if (b == a || (row_of[b] != n && b < a))
         {
            continue;
         }
         f(s, b);
      }
   }
}

} // namespace

IsometryReport isometry_regression(const GeodesicMatrix& lz, const GeodesicMatrix& ly, const IsometryOptions& options)
{
   require(lz.n() == ly.n() && lz.sources == ly.sources,
           "isometry_regression: geodesic matrices cover different index sets");
   require(options.max_pairs >= 2, "isometry_regression: max_pairs must be >= 2");

   std::size_t total = 0;
   for_each_pair(lz, [&](std::size_t, std::size_t) { ++total; });
   require(total >= 2, "isometry_regression: need at least 2 pairs");

   // Selection sampling keeps the chosen pairs in enumeration order.
   const bool subsample = lz.n() > options.all_pairs_max_n && total > options.max_pairs;
   const std::size_t used = subsample ? options.max_pairs : total;
   auto rng = make_stream(options.seed, 0x150e7);
   std::vector<double> xs;
   std::vector<double> ys;
   xs.reserve(used);
   ys.reserve(used);
   std::uint64_t seen = 0;
   for_each_pair(lz, [&](std::size_t s, std::size_t b) {
      const std::uint64_t remaining = total - seen++;
      if (subsample)
      {
         const std::uint64_t wanted = used - xs.size();
         if (wanted == 0 || std::uniform_int_distribution<std::uint64_t>(0, remaining - 1)(rng) >= wanted)
         {
            return;
         }
      }
      const double x = lz.lengths(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(b));
      const double y = ly.lengths(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(b));
      if (!std::isfinite(x) || !std::isfinite(y))
      {
         throw InvalidArgument("isometry_regression: non-finite path length for pair (" +
                               std::to_string(lz.sources[s]) + ", " + std::to_string(b) + ")");
      }
      xs.push_back(x);
      ys.push_back(y);
   });

   const auto m = static_cast<double>(xs.size());
   CompensatedSum sx;
   CompensatedSum sy;
   for (std::size_t i = 0; i < xs.size(); ++i)
   {
      sx.add(xs[i]);
      sy.add(ys[i]);
   }
   const double mx = sx.value() / m;
   const double my = sy.value() / m;
   CompensatedSum sxx;
   CompensatedSum sxy;
   CompensatedSum syy;
   for (std::size_t i = 0; i < xs.size(); ++i)
   {
      const double dx = xs[i] - mx;
      const double dy = ys[i] - my;
      sxx.add(dx * dx);
      sxy.add(dx * dy);
      syy.add(dy * dy);
   }
   if (!(sxx.value() > 0.0))
   {
      throw InvalidArgument("isometry_regression: latent path lengths have zero variance");
   }

   IsometryReport report;
   report.pairs_total = total;
   report.pairs_used = xs.size();
   report.slope = sxy.value() / sxx.value();
   report.intercept = my - report.slope * mx;
   report.rho = syy.value() > 0.0 ? std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0)
                                  : 0.0;

   const std::size_t window =
      options.window ? *options.window : static_cast<std::size_t>(std::ceil(0.01 * m));
   require(window >= 1, "isometry_regression: window must be >= 1");
   report.window = window;

   std::vector<std::size_t> order(xs.size());
   std::iota(order.begin(), order.end(), std::size_t{0});
   std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
   for (std::size_t start = 0; start < order.size(); start += window)
   {
      const std::size_t stop = std::min(order.size(), start + window);
      const auto count = static_cast<double>(stop - start);
      double cx = 0.0;
      double cy = 0.0;
      for (std::size_t t = start; t < stop; ++t)
      {
         cx += xs[order[t]];
         cy += ys[order[t]];
      }
      cx /= count;
      cy /= count;
      double var = 0.0;
      for (std::size_t t = start; t < stop; ++t)
      {
         const double d = ys[order[t]] - cy;
         var += d * d;
      }
      report.moving_average.push_back(MovingAverageBin{cx, cy, std::sqrt(var / count)});
   }
   return report;
}

} // namespace hdgeom
