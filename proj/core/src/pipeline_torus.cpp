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

namespace {

struct NamedMetric
{
   std::string label;
   LatentMetric metric;
   bool angles = false; // feed rhombus angles instead of Cartesian points
};

std::vector<NamedMetric> metrics_from(const ExperimentConfig& cfg, const FlatTorusRhombus& rhombus)
{
   std::vector<NamedMetric> out;
   const double r = cfg.real("minor_radius");
   for (const auto& name : cfg.texts("metrics"))
   {
      if (name == "OpenFieldEuclid")
      {
         out.push_back({name, OpenFieldEuclid{}, false});
      }
      else if (name == "RhombusEuclid")
      {
         out.push_back({name, RhombusEuclid{rhombus}, false});
      }
      else if (name == "RhombusTeleport")
      {
         out.push_back({name, RhombusTeleport{rhombus}, false});
      }
      else if (name == "Torus3D")
      {
         for (const double ratio : cfg.reals("torus_ratios"))
         {
            if (!(ratio > 1.0))
            {
               throw ConfigError("torus_ratios must be > 1 (R > r), got " + tag(ratio));
            }
            out.push_back({"Torus3D_R" + tag(ratio), Torus3D{ratio * r, r}, true});
         }
      }
      else
      {
         throw ConfigError("unknown metric '" + name + "'");
      }
   }
   return out;
}

FlatTorusRhombus rhombus_from(const ExperimentConfig& cfg)
{
   const auto r1 = cfg.reals("r1");
   const auto r2 = cfg.reals("r2");
   if (r1.size() != 2 || r2.size() != 2)
   {
      throw ConfigError("r1 and r2 must be 2-vectors");
   }
   FlatTorusRhombus rhombus;
   rhombus.r1 = Vec2(r1[0], r1[1]);
   rhombus.r2 = Vec2(r2[0], r2[1]);
   validate(LatentSpace{rhombus});
   return rhombus;
}

/// P(X >= k) for X ~ Binomial(m, 1/2).
double sign_test_p_value(std::size_t k, std::size_t m)
{
   double total = 0.0;
   for (std::size_t i = k; i <= m; ++i)
   {
      total += std::exp(std::lgamma(static_cast<double>(m) + 1) - std::lgamma(static_cast<double>(i) + 1) -
                        std::lgamma(static_cast<double>(m - i) + 1) - static_cast<double>(m) * std::log(2.0));
   }
   return std::min(1.0, total);
}

} // namespace

ExperimentReport run_torus_isometry(const ExperimentConfig& cfg, ArtifactSink& sink)
{
   ExperimentReport report;
   report.experiment = Experiment::TorusIsometry;
   report.config = cfg.params;

   const std::size_t n = cfg.count("n");
   const std::size_t p = cfg.count("p");
   const std::size_t seeds = cfg.count("seeds");
   const std::uint64_t base_seed = cfg.seed();
   const double sigma_sq = cfg.real("sigma_sq");
   const std::size_t k = cfg.count("k");
   const auto window = cfg.optional_size("window");
   const bool do_betti = cfg.flag("betti");
   const std::size_t n_sub = cfg.count("n_sub");
   const double ratio = cfg.real("ratio_threshold");
   const auto expected = cfg.sizes("expect_betti");
   const RipsOptions rips = rips_options(cfg);
   if (n < 300)
   {
      throw ConfigError("torus isometry needs n >= 300, got " + std::to_string(n));
   }
   if (p < 4)
   {
      throw ConfigError("the torus feature map has rank 4, so p must be >= 4");
   }
   if (sigma_sq < 0.0)
   {
      throw ConfigError("sigma_sq must be >= 0");
   }
   const FlatTorusRhombus rhombus = rhombus_from(cfg);
   const auto metrics = metrics_from(cfg, rhombus);
   const bool retessellate = cfg.flag("retessellate");
   const SamplingScheme scheme = scheme_from(cfg.text("sampling"));

   Json runs = Json::array();
   std::size_t betti_hits = 0;
   std::map<std::string, std::vector<IsometryReport>> by_metric;

   for (std::size_t s = 0; s < seeds; ++s)
   {
      const std::uint64_t seed = base_seed + s;
      const std::string stem = "seed" + std::to_string(seed);
      const LatentSample latent = sample_latent(rhombus, n, scheme, seed);
      ModelSpec spec{make_torus_fourier(p, rhombus)};
      spec.p = p;
      spec.sigma = std::sqrt(sigma_sq);
      spec.seed = seed;
      spec.strict_unit_variance = true;
      DataMatrix y;
      {
         StageTimer timer(report, "sample");
         y = sample_data(spec, latent);
      }

      Json run;
      run["seed"] = seed;
      run["n_points"] = y.values.rows();
      if (do_betti)
      {
         StageTimer timer(report, "persistence");
         const auto rows = subsample_indices(static_cast<std::size_t>(y.values.rows()), n_sub, seed);
         const PersistenceDiagram dgm =
            rips_persistence(distance_matrix(select_rows(y.values, rows), Scaling::InvSqrtP), rips);
         const BettiEstimate betti = betti_estimate(dgm, ratio);
         const std::string file = "diagram_" + stem + ".csv";
         save_diagram(sink.file(file), dgm);
         run["diagram"] = to_json(dgm);
         run["diagram"]["file"] = file;
         run["betti"] = to_json(betti);
         betti_hits += betti_matches(betti, expected) ? 1 : 0;
      }

      GeodesicMatrix observed;
      {
         StageTimer timer(report, "observed_geodesics");
         const Matrix scaled = scaled_rows(y.values, Scaling::InvSqrtP);
         Json info;
         const KnnGraph g = connected_graph(knn_graph(scaled, AmbientEuclid{}, KnnOptions{k, true}),
                                            [&] { return knn_graph(scaled, AmbientEuclid{}, KnnOptions{std::nullopt, true}); },
                                            info);
         run["observed_graph"] = info;
         observed = shortest_paths(g);
      }

      Json regressions = Json::object();
      auto regress = [&](const std::string& label, const GeodesicMatrix& lz, Json graph_info) {
         StageTimer timer(report, "regression");
         const IsometryReport rep = isometry_regression(lz, observed, IsometryOptions{.window = window, .seed = seed});
         const std::string file = "moving_average_" + label + "_" + stem + ".csv";
         save_moving_average(sink.file(file), rep);
         Json j = to_json(rep);
         j["graph"] = std::move(graph_info);
         j["moving_average_file"] = file;
         regressions[label] = j;
         by_metric[label].push_back(rep);
      };

      for (const auto& m : metrics)
      {
         GeodesicMatrix lz;
         Json info;
         {
            StageTimer timer(report, "latent_geodesics");
            const Matrix pts = m.angles ? rhombus_angles(rhombus, latent.points) : latent.points;
            const KnnGraph g = connected_graph(knn_graph(pts, m.metric, KnnOptions{k, true}),
                                               [&] { return knn_graph(pts, m.metric, KnnOptions{std::nullopt, true}); },
                                               info);
            lz = shortest_paths(g);
         }
         regress(m.label, lz, info);
      }
      if (retessellate)
      {
         GeodesicMatrix lz;
         {
            StageTimer timer(report, "latent_geodesics");
            lz = retessellated_teleport_paths(latent.points, rhombus, k);
         }
         regress("RhombusTeleportRetessellated", lz, Json{{"k", k}, {"vertices", 9 * n}});
      }
      run["isometry"] = regressions;
      runs.push_back(run);
   }

   report.results["units"] = {{"observed", "k-NN geodesics of p^{-1/2} Y"},
                              {"latent", "k-NN geodesics under each latent metric"}};
   report.results["runs"] = runs;

   if (do_betti)
   {
      report.checks.push_back(
         fraction_check("betti_matches_expected", true, betti_hits, seeds, cfg.real("betti_min_fraction")));
   }
   const auto teleport = by_metric.find("RhombusTeleport");
   if (teleport != by_metric.end())
   {
      const auto& tele = teleport->second;
      std::size_t above = 0;
      std::size_t positive = 0;
      for (const auto& rep : tele)
      {
         above += rep.rho > 0.99 ? 1 : 0;
         positive += rep.intercept > 0.0 ? 1 : 0;
      }
      report.checks.push_back(fraction_check("teleport_rho_above_0.99", false, above, seeds, 0.9));
      for (const auto& [label, reps] : by_metric)
      {
         if (label == "RhombusTeleport" || label == "RhombusTeleportRetessellated")
         {
            continue;
         }
         std::size_t wins = 0;
         for (std::size_t s = 0; s < seeds; ++s)
         {
            wins += tele[s].rho > reps[s].rho ? 1 : 0;
         }
         report.checks.push_back(fraction_check("teleport_rho_beats_" + label, false, wins, seeds, 0.9));
      }
      if (sigma_sq > 0.0 && seeds >= 10)
      {
         const double pv = sign_test_p_value(positive, seeds);
         Check c;
         c.name = "teleport_intercept_positive_sign_test";
         c.passed = pv < 0.05;
         c.detail = std::to_string(positive) + "/" + std::to_string(seeds) + " positive, one-sided p = " + tag(pv);
         report.checks.push_back(c);
         report.results["intercept_sign_test"] = {{"positive", positive}, {"seeds", seeds}, {"p_value", number(pv)}};
      }
   }
   return report;
}

} // namespace hdgeom
