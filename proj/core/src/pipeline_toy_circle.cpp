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

namespace hdgeom {

using namespace detail;

ExperimentReport run_toy_circle(const ExperimentConfig& cfg, ArtifactSink& sink)
{
   ExperimentReport report;
   report.experiment = Experiment::ToyCircle;
   report.config = cfg.params;

   const std::size_t n = cfg.count("n");
   const std::size_t seeds = cfg.count("seeds");
   const std::uint64_t base_seed = cfg.seed();
   const auto p_list = cfg.sizes("p_list");
   const double sigma_sq = cfg.real("sigma_sq");
   const std::size_t n_sub = cfg.count("n_sub");
   const Scaling scaling = scaling_from_string(cfg.text("scaling"));
   const double ratio = cfg.real("ratio_threshold");
   const auto expected = cfg.sizes("expect_betti");
   const std::size_t betti_min_p = cfg.size_value("betti_min_p");
   const double betti_fraction = cfg.real("betti_min_fraction");
   const std::size_t svd_rank = cfg.count("svd_rank");
   const double svd_energy_min = cfg.real("svd_energy_min");
   const RipsOptions rips = rips_options(cfg);
   if (p_list.empty())
   {
      throw ConfigError("p_list must not be empty");
   }
   for (const std::size_t p : p_list)
   {
      if (p < 3)
      {
         throw ConfigError("toy circle needs p >= 3 (rank-3 feature map), got p = " + std::to_string(p));
      }
   }
   if (sigma_sq < 0.0)
   {
      throw ConfigError("sigma_sq must be >= 0");
   }
   const double sigma = std::sqrt(sigma_sq);
   const LatentSample latent = sample_latent(Circle{1.0}, n, scheme_from(cfg.text("sampling")), base_seed);

   Json runs = Json::array();
   std::size_t betti_hits = 0;
   std::size_t betti_total = 0;
   std::size_t energy_hits = 0;
   std::size_t decrease_hits = 0;
   const auto p_lo = *std::min_element(p_list.begin(), p_list.end());
   const auto p_hi = *std::max_element(p_list.begin(), p_list.end());

   for (std::size_t s = 0; s < seeds; ++s)
   {
      const std::uint64_t seed = base_seed + s;
      double dev_lo = 0.0;
      double dev_hi = 0.0;
      for (const std::size_t p : p_list)
      {
         const std::string stem = "p" + std::to_string(p) + "_seed" + std::to_string(seed);
         ModelSpec spec{make_toy_circle(p)};
         spec.p = p;
         spec.sigma = sigma;
         spec.seed = seed;

         Json run;
         run["seed"] = seed;
         run["p"] = p;
         run["p_int"] = number(covariance_intrinsic_dim(spec));

         DataMatrix y;
         {
            StageTimer timer(report, "sample");
            y = sample_data(spec, latent);
         }
         {
            StageTimer timer(report, "deviation");
            const Matrix phi = feature_matrix(spec.feature_map, latent);
            const DeviationReport dev =
               max_gram_deviation(y.values, phi * phi.transpose(), sigma, DeviationOptions{Normalization::ByP});
            run["deviation"] = to_json(dev);
            if (p == p_lo)
            {
               dev_lo = dev.max_abs_deviation;
            }
            if (p == p_hi)
            {
               dev_hi = dev.max_abs_deviation;
            }
         }
         {
            StageTimer timer(report, "svd");
            const std::size_t rank = std::min<std::size_t>(svd_rank, std::min(n, p));
            const TopSvd svd = top_svd(y.values, rank);
            std::vector<std::string> header;
            for (std::size_t c = 0; c < rank; ++c)
            {
               header.push_back("c" + std::to_string(c + 1));
            }
            const std::string file = "svd_" + stem + ".csv";
            save_matrix(sink.file(file), svd.coords, header);
            Json sv = Json::array();
            for (Eigen::Index c = 0; c < svd.singular_values.size(); ++c)
            {
               sv.push_back(number(svd.singular_values[c]));
            }
            run["svd"] = {{"rank", rank}, {"singular_values", sv}, {"energy", number(svd.energy)}, {"file", file}};
            if (p >= betti_min_p && svd.energy >= svd_energy_min)
            {
               ++energy_hits;
            }
         }
         {
            StageTimer timer(report, "persistence");
            const auto rows = subsample_indices(static_cast<std::size_t>(y.values.rows()), n_sub, seed);
            const DistanceMatrix dm = distance_matrix(select_rows(y.values, rows), scaling);
            const PersistenceDiagram dgm = rips_persistence(dm, rips);
            const BettiEstimate betti = betti_estimate(dgm, ratio);
            const std::string file = "diagram_" + stem + ".csv";
            save_diagram(sink.file(file), dgm);
            run["subsample"] = rows.size();
            run["scaling"] = to_string(scaling);
            run["diagram"] = to_json(dgm);
            run["diagram"]["file"] = file;
            run["betti"] = to_json(betti);
            if (!expected.empty() && p >= betti_min_p)
            {
               ++betti_total;
               if (betti_matches(betti, expected))
               {
                  ++betti_hits;
               }
            }
         }
         runs.push_back(run);
      }
      if (dev_hi < dev_lo)
      {
         ++decrease_hits;
      }
   }
   report.results["units"] = {{"deviation", "|Y_i.Y_j/p - phi(z_i).phi(z_j)/p - sigma^2 [i=j]|"},
                              {"diagram", "Rips filtration values of the scaled rows"}};
   report.results["runs"] = runs;

   if (p_lo != p_hi)
   {
      report.checks.push_back(fraction_check("deviation_decreases_p" + std::to_string(p_lo) + "_to_p" +
                                                std::to_string(p_hi),
                                             false, decrease_hits, seeds, 1.0));
   }
   std::size_t energy_total = 0;
   for (const std::size_t p : p_list)
   {
      energy_total += p >= betti_min_p ? seeds : 0;
   }
   if (energy_total > 0)
   {
      report.checks.push_back(fraction_check("svd_energy_at_least_" + tag(svd_energy_min), false, energy_hits,
                                             energy_total, 1.0));
   }
   if (betti_total > 0)
   {
      report.checks.push_back(fraction_check("betti_matches_expected", true, betti_hits, betti_total, betti_fraction));
   }
   return report;
}

} // namespace hdgeom
