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

#include "pipeline_common.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hdgeom {

using namespace detail;

ExperimentReport run_persistence_consistency(const ExperimentConfig& cfg, ArtifactSink& sink)
{
   ExperimentReport report;
   report.experiment = Experiment::PersistenceConsistency;
   report.config = cfg.params;

   const std::size_t n = cfg.count("n");
   const std::size_t n_ref = cfg.count("n_ref");
   const std::size_t seeds = cfg.count("seeds");
   const std::uint64_t base_seed = cfg.seed();
   const auto p_list = cfg.sizes("p_list");
   const double sigma_sq = cfg.real("sigma_sq");
   const double tol = cfg.real("tolerance");
   const RipsOptions rips = rips_options(cfg);
   if (p_list.size() < 2)
   {
      throw ConfigError("p_list needs at least two values");
   }
   for (const std::size_t p : p_list)
   {
      if (p < 3)
      {
         throw ConfigError("toy circle needs p >= 3, got p = " + std::to_string(p));
      }
   }
   if (sigma_sq < 0.0 || tol < 0.0)
   {
      throw ConfigError("sigma_sq and tolerance must be >= 0");
   }
   const double sigma = std::sqrt(sigma_sq);

   // p^{-1/2} phi does not depend on p, so the reference cloud standing in for
   // the manifold is shared by every cell.
   const FeatureMap unit = make_toy_circle(3);
   const double unit_scale = std::sqrt(3.0);
   const LatentSample ref_latent = sample_latent(Circle{1.0}, n_ref, SamplingScheme::UniformGrid, 0);
   const Matrix ref_cloud = feature_matrix(unit, ref_latent) / unit_scale;
   PersistenceDiagram ref_dgm;
   {
      StageTimer timer(report, "persistence");
      ref_dgm = rips_persistence(distance_matrix(ref_cloud, Scaling::Raw), rips);
   }
   save_diagram(sink.file("diagram_reference.csv"), ref_dgm);

   Json runs = Json::array();
   std::size_t chain_ok = 0;
   std::size_t chain_total = 0;
   std::map<std::size_t, std::vector<double>> h1_by_p;
   for (std::size_t s = 0; s < seeds; ++s)
   {
      const std::uint64_t seed = base_seed + s;
      const LatentSample latent = sample_latent(Circle{1.0}, n, SamplingScheme::UniformRandom, seed);
      for (const std::size_t p : p_list)
      {
         const std::string stem = "p" + std::to_string(p) + "_seed" + std::to_string(seed);
         ModelSpec spec{make_toy_circle(p)};
         spec.p = p;
         spec.sigma = sigma;
         spec.seed = seed;
         const DataMatrix y = sample_data(spec, latent);
         const Matrix phi = feature_matrix(spec.feature_map, latent);
         const double root_p = std::sqrt(static_cast<double>(p));

         PersistenceDiagram dgm_y;
         PersistenceDiagram dgm_m;
         {
            StageTimer timer(report, "persistence");
            dgm_y = rips_persistence(distance_matrix(y.values, Scaling::InvSqrtP), rips);
            dgm_m = rips_persistence(distance_matrix(phi / root_p, Scaling::Raw), rips);
         }
         save_diagram(sink.file("diagram_y_" + stem + ".csv"), dgm_y);
         save_diagram(sink.file("diagram_m_" + stem + ".csv"), dgm_m);

         double gh = 0.0;
         double d_h = 0.0;
         {
            StageTimer timer(report, "metric_bounds");
            gh = gh_upper_bound(y.values * y.values.transpose(), phi * phi.transpose(), p);
            d_h = hausdorff_distance(phi / root_p, ref_cloud);
         }

         Json run;
         run["seed"] = seed;
         run["p"] = p;
         run["gh_upper_bound"] = number(gh);
         run["hausdorff"] = number(d_h);
         Json dims = Json::array();
         bool run_ok = true;
         {
            StageTimer timer(report, "bottleneck");
            for (int d = 0; d <= rips.max_dim; ++d)
            {
               const BottleneckResult to_ref = bottleneck(dgm_y, ref_dgm, d);
               const BottleneckResult to_same = bottleneck(dgm_y, dgm_m, d);
               const double bound_ref = 2.0 * (d_h + gh) + tol;
               const double bound_same = 2.0 * gh + tol;
               const bool ok = to_ref.distance <= bound_ref && to_same.distance <= bound_same;
               run_ok = run_ok && ok;
               dims.push_back({{"dim", d},
                               {"bottleneck_to_reference", to_json(to_ref)},
                               {"bottleneck_same_points", to_json(to_same)},
                               {"bound_reference", number(bound_ref)},
                               {"bound_same_points", number(bound_same)},
                               {"chain_holds", ok}});
               if (d == 1)
               {
                  h1_by_p[p].push_back(to_same.distance);
               }
            }
         }
         run["dims"] = dims;
         run["chain_holds"] = run_ok;
         ++chain_total;
         chain_ok += run_ok ? 1 : 0;
         runs.push_back(run);
      }
   }

   report.results["units"] = {
      {"clouds", "p^{-1/2} Y_n and p^{-1/2} M_n with M_n = phi(z_1..z_n); reference = p^{-1/2} phi on a grid"},
      {"chain", "d_b(Y_n, ref) <= 2 (d_H(M_n, ref) + gh) + tol and d_b(Y_n, M_n) <= 2 gh + tol"}};
   report.results["runs"] = runs;
   report.results["reference"] = to_json(ref_dgm);
   report.results["reference"]["file"] = "diagram_reference.csv";

   report.checks.push_back(fraction_check("bottleneck_chain_inequality", true, chain_ok, chain_total, 1.0));
   if (rips.max_dim >= 1)
   {
      Json medians = Json::object();
      for (auto& [p, values] : h1_by_p)
      {
         medians[std::to_string(p)] = number(median(values));
      }
      report.results["median_h1_bottleneck_by_p"] = medians;
      const auto p_lo = *std::min_element(p_list.begin(), p_list.end());
      const auto p_hi = *std::max_element(p_list.begin(), p_list.end());
      Check trend;
      trend.name = "median_h1_bottleneck_decreases_in_p";
      const double lo = median(h1_by_p[p_lo]);
      const double hi = median(h1_by_p[p_hi]);
      trend.passed = hi < lo;
      trend.detail = "p=" + std::to_string(p_lo) + ": " + tag(lo) + ", p=" + std::to_string(p_hi) + ": " + tag(hi);
      report.checks.push_back(trend);
   }
   return report;
}

} // namespace hdgeom
