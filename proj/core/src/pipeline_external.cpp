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
#include <numeric>

namespace hdgeom {

using namespace detail;

namespace {

/// Indices of the `keep` rows with the largest norms, in increasing order.
std::vector<std::size_t> most_active(const Matrix& y, std::size_t keep)
{
   std::vector<std::size_t> order(static_cast<std::size_t>(y.rows()));
   std::iota(order.begin(), order.end(), std::size_t{0});
   if (keep >= order.size())
   {
      return order;
   }
   std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return y.row(static_cast<Eigen::Index>(a)).squaredNorm() > y.row(static_cast<Eigen::Index>(b)).squaredNorm();
   });
   order.resize(keep);
   std::sort(order.begin(), order.end());
   return order;
}

std::optional<FlatTorusRhombus> optional_rhombus(const ExperimentConfig& cfg)
{
   const auto r1 = cfg.reals("r1");
   const auto r2 = cfg.reals("r2");
   const auto origin = cfg.reals("origin");
   if (r1.empty() && r2.empty())
   {
      return std::nullopt;
   }
   if (r1.size() != 2 || r2.size() != 2 || (!origin.empty() && origin.size() != 2))
   {
      throw ConfigError("r1, r2 (and origin when given) must be 2-vectors");
   }
   FlatTorusRhombus rhombus;
   rhombus.r1 = Vec2(r1[0], r1[1]);
   rhombus.r2 = Vec2(r2[0], r2[1]);
   if (!origin.empty())
   {
      rhombus.origin = Vec2(origin[0], origin[1]);
   }
   validate(LatentSpace{rhombus});
   return rhombus;
}

} // namespace

ExperimentReport run_external(const ExperimentConfig& cfg, ArtifactSink& sink)
{
   ExperimentReport report;
   report.experiment = Experiment::ExternalData;
   report.config = cfg.params;

   const std::uint64_t seed = cfg.seed();
   const Scaling scaling = scaling_from_string(cfg.text("scaling"));
   const std::size_t k = cfg.count("k");
   const bool auto_fallback = cfg.flag("auto_k_fallback");
   const auto window = cfg.optional_size("window");
   const auto rhombus = optional_rhombus(cfg);
   const auto expected = cfg.sizes("expect_betti");

   Matrix y;
   Matrix xi;
   {
      StageTimer timer(report, "load");
      y = load_matrix(cfg.path("y_path"));
      xi = load_matrix(cfg.path("xi_path"), CsvOptions{2, true});
   }
   if (y.rows() != xi.rows())
   {
      throw ConfigError("Y has " + std::to_string(y.rows()) + " rows but xi has " + std::to_string(xi.rows()));
   }
   if (y.rows() < 2 || y.cols() < 1)
   {
      throw ConfigError("Y needs at least 2 rows and 1 column");
   }
   if (const auto top = cfg.optional_size("top_active"))
   {
      const auto rows = most_active(y, *top);
      y = select_rows(y, rows);
      xi = select_rows(xi, rows);
   }
   const auto n = static_cast<std::size_t>(y.rows());
   report.results["input"] = {{"rows", n}, {"cols", y.cols()}, {"scaling", to_string(scaling)}};

   const Matrix scaled = scaled_rows(y, scaling);

   if (cfg.flag("homology"))
   {
      StageTimer timer(report, "persistence");
      const auto rows = subsample_indices(n, cfg.count("n_sub"), seed);
      Matrix cloud = select_rows(scaled, rows);
      if (const auto dims = cfg.optional_size("pca_dims"))
      {
         cloud = pca_project(cloud, *dims);
      }
      const PersistenceDiagram dgm = rips_persistence(distance_matrix(cloud, Scaling::Raw), rips_options(cfg));
      const BettiEstimate betti = betti_estimate(dgm, cfg.real("ratio_threshold"));
      save_diagram(sink.file("diagram.csv"), dgm);
      report.results["homology"] = {{"subsample", rows.size()},
                                    {"pca_dims", cfg.params["pca_dims"]},
                                    {"diagram", to_json(dgm)},
                                    {"betti", to_json(betti)},
                                    {"file", "diagram.csv"}};
      if (!expected.empty())
      {
         Check c;
         c.name = "betti_matches_expected";
         c.hard = true;
         c.passed = betti_matches(betti, expected);
         c.detail = "estimated " + betti_text(betti, expected.size());
         report.checks.push_back(c);
      }
   }

   auto build = [&](const Matrix& pts, const auto& metric, Json& info) {
      KnnGraph g = knn_graph(pts, metric, KnnOptions{k, true});
      if (!auto_fallback)
      {
         info["k"] = g.k;
         info["auto_k"] = false;
         info["connected"] = g.connected();
         return g;
      }
      return connected_graph(g, [&] { return knn_graph(pts, metric, KnnOptions{std::nullopt, true}); }, info);
   };

   const auto sources = subsample_indices(n, cfg.count("max_sources"), seed + 1);
   const std::span<const std::size_t> source_span =
      sources.size() == n ? std::span<const std::size_t>() : std::span<const std::size_t>(sources);

   GeodesicMatrix observed;
   {
      StageTimer timer(report, "observed_geodesics");
      Json info;
      observed = shortest_paths(build(scaled, AmbientEuclid{}, info), source_span);
      if (cfg.flag("smooth"))
      {
         const SmoothedPaths smoothed = smooth_path_lengths(observed, xi, cfg.count("k_smooth"));
         observed = smoothed.paths;
         info["smoothing_uniform_fallbacks"] = smoothed.uniform_fallbacks;
      }
      info["sources"] = observed.sources.size();
      info["has_unreachable"] = observed.has_unreachable;
      report.results["observed_graph"] = info;
   }

   std::vector<std::pair<std::string, LatentMetric>> metrics{{"OpenFieldEuclid", OpenFieldEuclid{}}};
   Matrix superimposed;
   if (rhombus)
   {
      superimposed = superimpose_on_rhombus(*rhombus, xi);
      save_matrix(sink.file("superimposed_positions.csv"), superimposed, {"x", "y"});
      metrics.emplace_back("RhombusEuclid", RhombusEuclid{*rhombus});
      metrics.emplace_back("RhombusTeleport", RhombusTeleport{*rhombus});
   }

   Json regressions = Json::object();
   for (const auto& [label, metric] : metrics)
   {
      const Matrix& pts = std::holds_alternative<OpenFieldEuclid>(metric) ? xi : superimposed;
      Json info;
      GeodesicMatrix lz;
      {
         StageTimer timer(report, "latent_geodesics");
         lz = shortest_paths(build(pts, metric, info), source_span);
      }
      StageTimer timer(report, "regression");
      const IsometryReport rep = isometry_regression(lz, observed, IsometryOptions{.window = window, .seed = seed});
      const std::string file = "moving_average_" + label + ".csv";
      save_moving_average(sink.file(file), rep);
      Json j = to_json(rep);
      j["graph"] = info;
      j["moving_average_file"] = file;
      regressions[label] = j;
   }
   report.results["units"] = {{"observed", "k-NN geodesics of the " + to_string(scaling) + " rows of Y"},
                              {"latent", "k-NN geodesics of the positions under each metric"}};
   report.results["isometry"] = regressions;
   return report;
}

} // namespace hdgeom
