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

#include "hdgeom/concentration.hpp"
#include "hdgeom/parallel.hpp"

#include <cmath>
#include <numeric>

namespace hdgeom {

std::vector<RateCell> rate_cells(const RateTemplate& tmpl, std::span<const GridPoint> grid, std::size_t seeds)
{
   require(!grid.empty(), "rate_study: grid is empty");
   require(seeds >= 3, "rate_study: at least 3 seeds are required");
   require(static_cast<bool>(tmpl.make_spec) && static_cast<bool>(tmpl.make_latent),
           "rate_study: template is incomplete");

   std::vector<RateCell> cells(grid.size());
   for (std::size_t c = 0; c < grid.size(); ++c)
   {
      const GridPoint cell = grid[c];
      require(cell.n >= 2 && cell.p >= 1, "rate_study: every cell needs n >= 2 and p >= 1");
      RateCell& out = cells[c];
      out.n = cell.n;
      out.p = cell.p;
      out.per_seed.assign(seeds, 0.0);

      const LatentSample latent = tmpl.make_latent(cell.n);
      out.p_int = covariance_intrinsic_dim(tmpl.make_spec(cell.p, tmpl.base_seed));

      parallel_for(seeds, [&](std::size_t s) {
         const ModelSpec spec = tmpl.make_spec(cell.p, tmpl.base_seed + s);
         const DataMatrix y = sample_data(spec, latent);
         const Matrix phi = feature_matrix(spec.feature_map, latent);
         const Matrix target = phi * phi.transpose();
         out.per_seed[s] = max_gram_deviation(y.values, target, spec.sigma, tmpl.deviation)
                              .max_abs_deviation;
      });
      out.median = median(out.per_seed);
   }
   return cells;
}

RateStudy rate_study(const RateTemplate& tmpl, std::span<const GridPoint> grid, std::size_t seeds)
{
   RateStudy study;
   study.label = tmpl.label;
   study.seeds = seeds;
   study.cells = rate_cells(tmpl, grid, seeds);

   // OLS of log(median) on log(sqrt(log n / p_int)).
   std::vector<double> xs;
   std::vector<double> ys;
   for (const auto& cell : study.cells)
   {
      xs.push_back(0.5 * (std::log(std::log(static_cast<double>(cell.n))) - std::log(cell.p_int)));
      ys.push_back(std::log(cell.median));
   }
   const double k = static_cast<double>(xs.size());
   const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
   const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
   double sxx = 0.0;
   double sxy = 0.0;
   for (std::size_t i = 0; i < xs.size(); ++i)
   {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
   }
   require(sxx > 0.0, "rate_study: the grid has a single distinct sqrt(log n / p_int) value, so "
                      "the slope is undefined");
   study.fitted_slope = sxy / sxx;
   study.fitted_intercept = my - study.fitted_slope * mx;
   return study;
}

std::vector<double> rescaled_medians(const RateStudy& study)
{
   std::vector<double> out;
   for (const auto& cell : study.cells)
   {
      out.push_back(cell.median * std::sqrt(cell.p_int / std::log(static_cast<double>(cell.n))));
   }
   return out;
}

RateTemplate iid_rate_template(Family family, std::uint64_t base_seed)
{
   RateTemplate t;
   t.label = std::string("iid_") + (family == Family::Gaussian ? "gaussian" : "rademacher");
   t.base_seed = base_seed;
   t.make_latent = [](std::size_t n) {
      return sample_latent(Circle{1.0}, n, SamplingScheme::UniformGrid, 0);
   };
   t.make_spec = [family](std::size_t p, std::uint64_t seed) {
      // Zero-weight signal: Y_i = E_i, so Y_i.Y_j / p is compared with I[i = j].
      FeatureMap silent = make_toy_circle(std::max<std::size_t>(p, 3)).with_weights({0.0, 0.0, 0.0});
      ModelSpec spec{silent};
      spec.p = std::max<std::size_t>(p, 3);
      spec.sigma = 1.0;
      spec.noise = family;
      spec.coefficients = family;
      spec.seed = seed;
      return spec;
   };
   return t;
}

RateTemplate toy_circle_rate_template(double sigma, Family coefficients, std::uint64_t base_seed)
{
   RateTemplate t;
   t.label = std::string("toy_circle_") +
             (coefficients == Family::Gaussian ? "gaussian" : "rademacher");
   t.base_seed = base_seed;
   t.make_latent = [](std::size_t n) {
      return sample_latent(Circle{1.0}, n, SamplingScheme::UniformGrid, 0);
   };
   t.make_spec = [sigma, coefficients](std::size_t p, std::uint64_t seed) {
      ModelSpec spec{make_toy_circle(p)};
      spec.p = p;
      spec.sigma = sigma;
      spec.coefficients = coefficients;
      spec.seed = seed;
      return spec;
   };
   return t;
}

} // namespace hdgeom
