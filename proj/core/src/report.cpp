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
#include "hdgeom/io.hpp"

#include <algorithm>
#include <chrono>

namespace hdgeom {

bool ExperimentReport::hard_failure() const
{
   return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.hard && !c.passed; });
}

Json ExperimentReport::to_json() const
{
   Json j;
   j["experiment"] = subcommand_of(experiment);
   j["library_version"] = version();
   j["config"] = config;
   j["seed_provenance"] = {
      {"base_seed", config.value("seed", Json(0u))},
      {"scheme", "replicate s uses base_seed + s; coefficient stream 0 and noise stream 1 + i per row"}};
   j["results"] = results;
   Json checks_json = Json::array();
   for (const auto& c : checks)
   {
      checks_json.push_back({{"name", c.name}, {"hard", c.hard}, {"passed", c.passed}, {"detail", c.detail}});
   }
   j["checks"] = checks_json;
   j["hard_failure"] = hard_failure();
   Json files = Json::array();
   for (const auto& f : artifacts)
   {
      files.push_back(f);
   }
   j["artifacts"] = files;
   j["timings_file"] = "timings.json";
   return j;
}

ArtifactSink::ArtifactSink(std::filesystem::path out_dir) : out_dir_(std::move(out_dir))
{
   std::error_code ec;
   std::filesystem::create_directories(out_dir_, ec);
   if (ec)
   {
      throw IoError("cannot create output directory " + out_dir_.string() + ": " + ec.message());
   }
}

std::filesystem::path ArtifactSink::file(const std::string& name)
{
   if (std::find(files_.begin(), files_.end(), name) == files_.end())
   {
      files_.push_back(name);
   }
   return out_dir_ / name;
}

Json build_manifest(const std::filesystem::path& out_dir, std::vector<std::string> files)
{
   std::sort(files.begin(), files.end());
   Json entries = Json::array();
   for (const auto& name : files)
   {
      const auto full = out_dir / name;
      if (!std::filesystem::exists(full))
      {
         throw IoError("artifact missing on completion: " + full.string());
      }
      entries.push_back({{"path", name},
                         {"bytes", static_cast<std::uint64_t>(std::filesystem::file_size(full))},
                         {"sha256", sha256_file(full)}});
   }
   return Json{{"files", entries}};
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir)
{
   ArtifactSink sink(out_dir);
   const auto start = std::chrono::steady_clock::now();
   ExperimentReport report;
   switch (cfg.experiment)
   {
   case Experiment::ToyCircle:
      report = run_toy_circle(cfg, sink);
      break;
   case Experiment::ConcentrationRate:
      report = run_concentration_rate(cfg, sink);
      break;
   case Experiment::PersistenceConsistency:
      report = run_persistence_consistency(cfg, sink);
      break;
   case Experiment::TorusIsometry:
      report = run_torus_isometry(cfg, sink);
      break;
   case Experiment::ExternalData:
      report = run_external(cfg, sink);
      break;
   }
   const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
   report.timings_seconds.emplace_back("total", total);

   const auto report_path = sink.file("report.json");
   report.artifacts = sink.files();
   write_text(report_path, report.to_json().dump(2) + "\n");

   Json timings = Json::object();
   for (const auto& [stage, seconds] : report.timings_seconds)
   {
      timings[stage] = seconds;
   }
   write_text(out_dir / "timings.json", timings.dump(2) + "\n");
   write_text(out_dir / "manifest.json", build_manifest(out_dir, sink.files()).dump(2) + "\n");
   return report;
}

} // namespace hdgeom
