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

#pragma once

#include "hdgeom/common.hpp"
#include "hdgeom/serialize.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hdgeom {

enum class Experiment
{
   ToyCircle,
   ConcentrationRate,
   PersistenceConsistency,
   TorusIsometry,
   ExternalData,
};

std::string to_string(Experiment e);
/// CLI subcommand name: toy-circle, conc-rate, persistence, torus-isometry, external.
std::string subcommand_of(Experiment e);
Experiment experiment_from_subcommand(const std::string& name);

/// Malformed or inconsistent experiment configuration.
class ConfigError : public IoError
{
public:
   using IoError::IoError;
};

/// Flat key-value parameters merged over per-experiment defaults. Values are
/// scalars or arrays of scalars; unknown keys and type mismatches are errors.
struct ExperimentConfig
{
   Experiment experiment = Experiment::ToyCircle;
   Json params;
   /// Relative input paths resolve against this directory.
   std::filesystem::path base_dir;

   std::size_t count(const std::string& key) const;      // > 0
   std::size_t size_value(const std::string& key) const; // >= 0
   double real(const std::string& key) const;
   std::optional<double> optional_real(const std::string& key) const;
   std::optional<std::size_t> optional_size(const std::string& key) const;
   bool flag(const std::string& key) const;
   std::string text(const std::string& key) const;
   std::vector<std::size_t> sizes(const std::string& key) const;
   std::vector<double> reals(const std::string& key) const;
   std::vector<std::string> texts(const std::string& key) const;
   std::uint64_t seed() const;
   std::filesystem::path path(const std::string& key) const;
};

Json default_params(Experiment e);
ExperimentConfig make_config(Experiment e, const Json& overrides = Json::object(),
                             const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(Experiment e, const std::filesystem::path& path);

struct Check
{
   std::string name;
   /// Hard checks fail the run (exit code 2); soft checks are reported only.
   bool hard = false;
   bool passed = false;
   std::string detail;
};

struct ExperimentReport
{
   Experiment experiment = Experiment::ToyCircle;
   Json config;
   Json results = Json::object();
   std::vector<Check> checks;
   std::vector<std::string> artifacts; // relative to the output directory
   std::vector<std::pair<std::string, double>> timings_seconds;

   bool hard_failure() const;
   /// Everything except wall-clock timings.
   Json to_json() const;
};

/// Registers files written under an output directory.
class ArtifactSink
{
public:
   explicit ArtifactSink(std::filesystem::path out_dir);

   /// Absolute path for a relative artifact name; records it once.
   std::filesystem::path file(const std::string& name);
   const std::filesystem::path& dir() const { return out_dir_; }
   const std::vector<std::string>& files() const { return files_; }

private:
   std::filesystem::path out_dir_;
   std::vector<std::string> files_;
};

ExperimentReport run_toy_circle(const ExperimentConfig& cfg, ArtifactSink& sink);
ExperimentReport run_concentration_rate(const ExperimentConfig& cfg, ArtifactSink& sink);
ExperimentReport run_persistence_consistency(const ExperimentConfig& cfg, ArtifactSink& sink);
ExperimentReport run_torus_isometry(const ExperimentConfig& cfg, ArtifactSink& sink);
ExperimentReport run_external(const ExperimentConfig& cfg, ArtifactSink& sink);

/// Runs the pipeline and writes report.json, timings.json and manifest.json
/// under out_dir. The manifest lists every artifact plus report.json with its
/// SHA-256; timings.json is left out so reruns produce identical manifests.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

Json build_manifest(const std::filesystem::path& out_dir, std::vector<std::string> files);

} // namespace hdgeom
