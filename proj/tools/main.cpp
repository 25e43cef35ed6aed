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

#include "hdgeom/harness.hpp"
#include "hdgeom/homology.hpp"
#include "hdgeom/io.hpp"
#include "hdgeom/parallel.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kIoOrConfig = 1;
constexpr int kAssertion = 2;

struct RunFlags
{
   std::string config;
   std::string out_dir;
   std::optional<std::uint64_t> seed;
   int threads = 0;
};

int run_pipeline(hdgeom::Experiment experiment, const RunFlags& flags)
{
   hdgeom::set_thread_count(flags.threads);
   hdgeom::ExperimentConfig cfg = flags.config.empty() ? hdgeom::make_config(experiment)
                                                       : hdgeom::load_config(experiment, flags.config);
   if (flags.seed)
   {
      cfg.params["seed"] = *flags.seed;
   }
   const hdgeom::ExperimentReport report = hdgeom::run_experiment(cfg, flags.out_dir);
   for (const auto& check : report.checks)
   {
      std::cout << (check.passed ? "PASS" : "FAIL") << (check.hard ? " [hard] " : " [soft] ") << check.name
                << ": " << check.detail << "\n";
   }
   std::cout << "wrote " << report.artifacts.size() << " artifacts to " << flags.out_dir << "\n";
   return report.hard_failure() ? kAssertion : kOk;
}

} // namespace

int main(int argc, char** argv)
{
   CLI::App app{"hdgeom: latent geometry of high-dimensional data"};
   app.set_version_flag("--version", hdgeom::version());
   app.require_subcommand(1);

   struct Pipeline
   {
      hdgeom::Experiment experiment;
      const char* help;
   };
   const Pipeline pipelines[] = {
      {hdgeom::Experiment::ToyCircle, "toy circle model: deviation, SVD coordinates, persistence"},
      {hdgeom::Experiment::ConcentrationRate, "Monte-Carlo concentration rate fits"},
      {hdgeom::Experiment::PersistenceConsistency, "bottleneck distances against the metric bound chain"},
      {hdgeom::Experiment::TorusIsometry, "flat torus synthetic: Betti numbers and isometry regressions"},
      {hdgeom::Experiment::ExternalData, "external (Y, xi) matrices through the isometry pipeline"},
   };

   RunFlags flags;
   std::uint64_t seed = 0;
   std::optional<hdgeom::Experiment> chosen;
   for (const auto& p : pipelines)
   {
      CLI::App* sub = app.add_subcommand(hdgeom::subcommand_of(p.experiment), p.help);
      sub->add_option("--config", flags.config, "flat JSON config (defaults when omitted)")->check(CLI::ExistingFile);
      sub->add_option("--out-dir", flags.out_dir, "output directory")->required();
      sub->add_option("--seed", seed, "base seed (overrides the config)");
      sub->add_option("--threads", flags.threads, "worker threads (0 = all)")->check(CLI::NonNegativeNumber);
      sub->callback([&, experiment = p.experiment, sub] {
         chosen = experiment;
         if (sub->count("--seed") > 0)
         {
            flags.seed = seed;
         }
      });
   }

   std::string distance_path;
   std::string diagram_out;
   int max_dim = 1;
   std::optional<double> max_edge;
   CLI::App* rips = app.add_subcommand("rips", "persistence diagram of a square distance-matrix CSV");
   rips->add_option("--distances", distance_path, "n x n distance matrix CSV")->required()->check(CLI::ExistingFile);
   rips->add_option("--out", diagram_out, "diagram CSV (dim,birth,death)")->required();
   rips->add_option("--max-dim", max_dim, "0, 1 or 2")->check(CLI::Range(0, 2));
   rips->add_option("--max-edge", max_edge, "filtration threshold (default: enclosing radius)");

   std::string diagram_a;
   std::string diagram_b;
   int dim = 1;
   CLI::App* bottleneck = app.add_subcommand("bottleneck", "bottleneck distance between two diagram CSVs");
   bottleneck->add_option("a", diagram_a)->required()->check(CLI::ExistingFile);
   bottleneck->add_option("b", diagram_b)->required()->check(CLI::ExistingFile);
   bottleneck->add_option("--dim", dim, "homology dimension")->check(CLI::Range(0, 2));

   try
   {
      app.parse(argc, argv);
   }
   catch (const CLI::ParseError& e)
   {
      const int code = app.exit(e);
      return code == 0 ? kOk : kIoOrConfig;
   }

   try
   {
      if (chosen)
      {
         return run_pipeline(*chosen, flags);
      }
      if (rips->parsed())
      {
         hdgeom::DistanceMatrix dm{hdgeom::load_matrix(distance_path), hdgeom::Scaling::Raw};
         hdgeom::validate(dm);
         hdgeom::RipsOptions opts;
         opts.max_dim = max_dim;
         opts.max_edge = max_edge;
         hdgeom::save_diagram(diagram_out, hdgeom::rips_persistence(dm, opts));
         return kOk;
      }
      if (bottleneck->parsed())
      {
         const auto result =
            hdgeom::bottleneck(hdgeom::load_diagram(diagram_a), hdgeom::load_diagram(diagram_b), dim);
         std::cout << hdgeom::format_double(result.distance) << (result.infinite_mismatch ? " (infinite mismatch)" : "")
                   << "\n";
         return kOk;
      }
   }
   catch (const std::exception& e)
   {
      std::cerr << "error: " << e.what() << "\n";
      return kIoOrConfig;
   }
   return kIoOrConfig;
}
