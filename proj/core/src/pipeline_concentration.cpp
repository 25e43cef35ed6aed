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

ExperimentReport run_concentration_rate(const ExperimentConfig& cfg, ArtifactSink& sink)
{
   ExperimentReport report;
   report.experiment = Experiment::ConcentrationRate;
   report.config = cfg.params;

   const std::size_t n = cfg.count("n");
   const std::size_t seeds = cfg.count("seeds");
   const std::uint64_t base_seed = cfg.seed();
   const auto p_list = cfg.sizes("p_list");
   const auto n_list = cfg.sizes("n_list");
   const std::size_t sweep_p = cfg.count("n_sweep_p");
   const double sigma_sq = cfg.real("sigma_sq");
   if (p_list.size() < 4)
   {
      throw ConfigError("p_list needs at least 4 values for a rate fit");
   }
   if (sigma_sq < 0.0)
   {
      throw ConfigError("sigma_sq must be >= 0");
   }

   std::vector<GridPoint> p_grid;
   for (const std::size_t p : p_list)
   {
      p_grid.push_back(GridPoint{n, p});
   }

   auto run_study = [&](const RateTemplate& tmpl, std::span<const GridPoint> grid) {
      StageTimer timer(report, "rate_" + tmpl.label);
      RateStudy study = rate_study(tmpl, grid, seeds);
      const std::string file = "rate_" + study.label + ".json";
      write_text(sink.file(file), to_json(study).dump(2) + "\n");
      Json j = to_json(study);
      j["file"] = file;
      return std::make_pair(study, j);
   };

   const auto [gauss, gauss_json] = run_study(iid_rate_template(Family::Gaussian, base_seed), p_grid);
   const auto [rad, rad_json] = run_study(iid_rate_template(Family::Rademacher, base_seed), p_grid);
   const auto [toy, toy_json] =
      run_study(toy_circle_rate_template(std::sqrt(sigma_sq), Family::Gaussian, base_seed), p_grid);

   Json studies = Json::array({gauss_json, rad_json, toy_json});

   if (n_list.size() >= 2)
   {
      std::vector<GridPoint> n_grid;
      for (const std::size_t m : n_list)
      {
         n_grid.push_back(GridPoint{m, sweep_p});
      }
      RateTemplate tmpl = iid_rate_template(Family::Gaussian, base_seed);
      tmpl.label = "iid_gaussian_n_sweep";
      // Cells differ only in n; the rescaled medians are what matters here.
      StageTimer timer(report, "rate_n_sweep");
      RateStudy study;
      study.label = tmpl.label;
      study.seeds = seeds;
      study.cells = rate_cells(tmpl, n_grid, seeds);
      Json j;
      j["label"] = study.label;
      j["p"] = sweep_p;
      Json cells = Json::array();
      const auto rescaled = rescaled_medians(study);
      for (std::size_t c = 0; c < study.cells.size(); ++c)
      {
         cells.push_back({{"n", study.cells[c].n},
                          {"median", number(study.cells[c].median)},
                          {"rescaled", number(rescaled[c])}});
      }
      j["cells"] = cells;
      const auto [lo, hi] = std::minmax_element(rescaled.begin(), rescaled.end());
      j["rescaled_ratio"] = number(*hi / *lo);
      const std::string file = "rate_" + study.label + ".json";
      write_text(sink.file(file), j.dump(2) + "\n");
      j["file"] = file;
      studies.push_back(j);

      Check c;
      c.name = "n_sweep_rescaled_ratio_below_" + tag(cfg.real("n_sweep_max_ratio"));
      c.passed = *hi / *lo < cfg.real("n_sweep_max_ratio");
      c.detail = "max/min rescaled median = " + tag(*hi / *lo);
      report.checks.push_back(c);
   }
   report.results["units"] = {{"deviation", "max_{i,j} |Y_i.Y_j/p - E[Y_i.Y_j]/p|"},
                              {"slope", "d log(median) / d log(sqrt(log n / p_int))"}};
   report.results["studies"] = studies;

   const double lo = cfg.real("slope_min");
   const double hi = cfg.real("slope_max");
   Check slope;
   slope.name = "iid_gaussian_slope_in_range";
   slope.passed = gauss.fitted_slope >= lo && gauss.fitted_slope <= hi;
   slope.detail = "slope " + tag(gauss.fitted_slope) + " vs [" + tag(lo) + ", " + tag(hi) + "]";
   report.checks.push_back(slope);

   Check family;
   family.name = "rademacher_slope_matches_gaussian";
   family.passed = std::abs(rad.fitted_slope - gauss.fitted_slope) <= cfg.real("family_slope_tol");
   family.detail = "|" + tag(rad.fitted_slope) + " - " + tag(gauss.fitted_slope) + "|";
   report.checks.push_back(family);

   Check toy_slope;
   toy_slope.name = "toy_circle_deviation_decreases_in_p";
   toy_slope.passed = toy.fitted_slope > 0.0;
   toy_slope.detail = "slope " + tag(toy.fitted_slope);
   report.checks.push_back(toy_slope);
   return report;
}

} // namespace hdgeom
