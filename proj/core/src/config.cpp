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

#include <cstdint>

namespace hdgeom {

namespace {

/// Stores nonnegative signed integers as unsigned so JSON built in code and
/// JSON parsed from text type-check the same way.
Json canonical(const Json& v)
{
   if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() >= 0)
   {
      return Json(static_cast<std::uint64_t>(v.get<std::int64_t>()));
   }
   if (v.is_array())
   {
      Json out = Json::array();
      for (const auto& item : v)
      {
         out.push_back(canonical(item));
      }
      return out;
   }
   return v;
}

bool scalar(const Json& v)
{
   return v.is_boolean() || v.is_number() || v.is_string();
}

bool same_kind(const Json& def, const Json& v)
{
   if (def.is_null())
   {
      return v.is_null() || v.is_number();
   }
   if (def.is_boolean())
   {
      return v.is_boolean();
   }
   if (def.is_string())
   {
      return v.is_string();
   }
   if (def.is_number_unsigned())
   {
      return v.is_number_unsigned();
   }
   if (def.is_number())
   {
      return v.is_number();
   }
   if (def.is_array())
   {
      if (!v.is_array())
      {
         return false;
      }
      for (const auto& item : v)
      {
         if (!scalar(item))
         {
            return false;
         }
         if (!def.empty() && !same_kind(def.front(), item))
         {
            return false;
         }
         if (def.empty() && !item.is_number())
         {
            return false;
         }
      }
      return true;
   }
   return false;
}

std::string kind_name(const Json& def)
{
   if (def.is_null())
   {
      return "number or null";
   }
   if (def.is_boolean())
   {
      return "boolean";
   }
   if (def.is_string())
   {
      return "string";
   }
   if (def.is_number_unsigned())
   {
      return "nonnegative integer";
   }
   if (def.is_number())
   {
      return "number";
   }
   if (def.is_array())
   {
      return def.empty() ? "array of numbers" : "array of " + kind_name(def.front());
   }
   return "value";
}

} // namespace

std::string to_string(Experiment e)
{
   switch (e)
   {
   case Experiment::ToyCircle:
      return "ToyCircle";
   case Experiment::ConcentrationRate:
      return "ConcentrationRate";
   case Experiment::PersistenceConsistency:
      return "PersistenceConsistency";
   case Experiment::TorusIsometry:
      return "TorusIsometry";
   case Experiment::ExternalData:
      return "ExternalData";
   }
   return "?";
}

std::string subcommand_of(Experiment e)
{
   switch (e)
   {
   case Experiment::ToyCircle:
      return "toy-circle";
   case Experiment::ConcentrationRate:
      return "conc-rate";
   case Experiment::PersistenceConsistency:
      return "persistence";
   case Experiment::TorusIsometry:
      return "torus-isometry";
   case Experiment::ExternalData:
      return "external";
   }
   return "?";
}

Experiment experiment_from_subcommand(const std::string& name)
{
   for (const auto e : {Experiment::ToyCircle, Experiment::ConcentrationRate, Experiment::PersistenceConsistency,
                        Experiment::TorusIsometry, Experiment::ExternalData})
   {
      if (name == subcommand_of(e) || name == to_string(e))
      {
         return e;
      }
   }
   throw ConfigError("unknown experiment '" + name + "'");
}

Json default_params(Experiment e)
{
   switch (e)
   {
   case Experiment::ToyCircle:
      return Json{{"seed", 0u},
                  {"seeds", 1u},
                  {"n", 1000u},
                  {"p_list", {3u, 200u}},
                  {"sigma_sq", 0.02},
                  {"sampling", "UniformGrid"},
                  {"n_sub", 300u},
                  {"max_dim", 1u},
                  {"max_edge", nullptr},
                  {"scaling", "InvSqrtP"},
                  {"ratio_threshold", 3.0},
                  {"expect_betti", {1u, 1u}},
                  {"betti_min_p", 200u},
                  {"betti_min_fraction", 0.9},
                  {"svd_rank", 3u},
                  {"svd_energy_min", 0.9}};
   case Experiment::ConcentrationRate:
      return Json{{"seed", 0u},
                  {"seeds", 10u},
                  {"n", 100u},
                  {"p_list", {64u, 128u, 256u, 512u, 1024u}},
                  {"sigma_sq", 0.02},
                  {"n_list", {50u, 100u, 200u, 400u, 800u}},
                  {"n_sweep_p", 256u},
                  {"slope_min", 0.85},
                  {"slope_max", 1.15},
                  {"family_slope_tol", 0.1},
                  {"n_sweep_max_ratio", 2.0}};
   case Experiment::PersistenceConsistency:
      return Json{{"seed", 0u},
                  {"seeds", 10u},
                  {"n", 300u},
                  {"n_ref", 300u},
                  {"p_list", {25u, 100u, 400u}},
                  {"sigma_sq", 0.0},
                  {"max_dim", 1u},
                  {"max_edge", nullptr},
                  {"tolerance", 1e-9}};
   case Experiment::TorusIsometry:
      return Json{{"seed", 0u},
                  {"seeds", 1u},
                  {"n", 500u},
                  {"sampling", "UniformRandom"},
                  {"p", 200u},
                  {"sigma_sq", 0.02},
                  {"r1", {1.0, 0.0}},
                  {"r2", {0.0, 1.0}},
                  {"k", 10u},
                  {"window", nullptr},
                  {"metrics", {"RhombusEuclid", "RhombusTeleport", "Torus3D"}},
                  {"torus_ratios", {1.5, 2.0, 2.5}},
                  {"minor_radius", 1.0},
                  {"retessellate", false},
                  {"betti", true},
                  {"n_sub", 300u},
                  {"max_dim", 2u},
                  {"max_edge", nullptr},
                  {"ratio_threshold", 3.0},
                  {"expect_betti", {1u, 2u, 1u}},
                  {"betti_min_fraction", 0.9}};
   case Experiment::ExternalData:
      return Json{{"seed", 0u},
                  {"y_path", ""},
                  {"xi_path", ""},
                  {"scaling", "SelfNormalized"},
                  {"top_active", nullptr},
                  {"pca_dims", nullptr},
                  {"k", 10u},
                  {"auto_k_fallback", true},
                  {"r1", Json::array()},
                  {"r2", Json::array()},
                  {"origin", Json::array()},
                  {"smooth", true},
                  {"k_smooth", 10u},
                  {"max_sources", 1000u},
                  {"window", nullptr},
                  {"homology", true},
                  {"n_sub", 300u},
                  {"max_dim", 2u},
                  {"max_edge", nullptr},
                  {"ratio_threshold", 3.0},
                  {"expect_betti", Json::array()}};
   }
   throw ConfigError("unknown experiment");
}

ExperimentConfig make_config(Experiment e, const Json& overrides, const std::filesystem::path& base_dir)
{
   if (!overrides.is_object())
   {
      throw ConfigError("config must be a JSON object of key-value pairs");
   }
   ExperimentConfig cfg;
   cfg.experiment = e;
   cfg.base_dir = base_dir;
   cfg.params = default_params(e);
   for (const auto& [key, raw] : overrides.items())
   {
      const Json value = canonical(raw);
      if (key == "experiment")
      {
         if (!value.is_string() || experiment_from_subcommand(value.get<std::string>()) != e)
         {
            throw ConfigError("config is for experiment " + value.dump() + ", not " + subcommand_of(e));
         }
         continue;
      }
      if (!cfg.params.contains(key))
      {
         throw ConfigError("unknown config key '" + key + "' for " + subcommand_of(e));
      }
      const Json& def = cfg.params[key];
      if (value.is_object() || !same_kind(def, value))
      {
         throw ConfigError("config key '" + key + "' must be a " + kind_name(def) + ", got " + value.dump());
      }
      cfg.params[key] = value;
   }
   return cfg;
}

ExperimentConfig load_config(Experiment e, const std::filesystem::path& path)
{
   Json parsed;
   try
   {
      parsed = Json::parse(read_text(path));
   }
   catch (const Json::parse_error& err)
   {
      throw ConfigError(path.string() + ": " + err.what());
   }
   return make_config(e, parsed, path.parent_path());
}

namespace {

const Json& lookup(const ExperimentConfig& cfg, const std::string& key)
{
   if (!cfg.params.contains(key))
   {
      throw ConfigError("missing config key '" + key + "'");
   }
   return cfg.params.at(key);
}

} // namespace

std::size_t ExperimentConfig::count(const std::string& key) const
{
   const std::size_t v = size_value(key);
   if (v == 0)
   {
      throw ConfigError("config key '" + key + "' must be positive");
   }
   return v;
}

std::size_t ExperimentConfig::size_value(const std::string& key) const
{
   const Json& v = lookup(*this, key);
   if (!v.is_number_unsigned())
   {
      throw ConfigError("config key '" + key + "' must be a nonnegative integer");
   }
   return v.get<std::size_t>();
}

double ExperimentConfig::real(const std::string& key) const
{
   const Json& v = lookup(*this, key);
   if (!v.is_number())
   {
      throw ConfigError("config key '" + key + "' must be a number");
   }
   return v.get<double>();
}

std::optional<double> ExperimentConfig::optional_real(const std::string& key) const
{
   const Json& v = lookup(*this, key);
   if (v.is_null())
   {
      return std::nullopt;
   }
   return real(key);
}

std::optional<std::size_t> ExperimentConfig::optional_size(const std::string& key) const
{
   const Json& v = lookup(*this, key);
   if (v.is_null())
   {
      return std::nullopt;
   }
   return count(key);
}

bool ExperimentConfig::flag(const std::string& key) const
{
   const Json& v = lookup(*this, key);
   if (!v.is_boolean())
   {
      throw ConfigError("config key '" + key + "' must be a boolean");
   }
   return v.get<bool>();
}

std::string ExperimentConfig::text(const std::string& key) const
{
   const Json& v = lookup(*this, key);
   if (!v.is_string())
   {
      throw ConfigError("config key '" + key + "' must be a string");
   }
   return v.get<std::string>();
}

std::vector<std::size_t> ExperimentConfig::sizes(const std::string& key) const
{
   std::vector<std::size_t> out;
   for (const auto& item : lookup(*this, key))
   {
      if (!item.is_number_unsigned())
      {
         throw ConfigError("config key '" + key + "' must hold nonnegative integers");
      }
      out.push_back(item.get<std::size_t>());
   }
   return out;
}

std::vector<double> ExperimentConfig::reals(const std::string& key) const
{
   std::vector<double> out;
   for (const auto& item : lookup(*this, key))
   {
      if (!item.is_number())
      {
         throw ConfigError("config key '" + key + "' must hold numbers");
      }
      out.push_back(item.get<double>());
   }
   return out;
}

std::vector<std::string> ExperimentConfig::texts(const std::string& key) const
{
   std::vector<std::string> out;
   for (const auto& item : lookup(*this, key))
   {
      if (!item.is_string())
      {
         throw ConfigError("config key '" + key + "' must hold strings");
      }
      out.push_back(item.get<std::string>());
   }
   return out;
}

std::uint64_t ExperimentConfig::seed() const
{
   const Json& v = lookup(*this, "seed");
   if (!v.is_number_unsigned())
   {
      throw ConfigError("config key 'seed' must be a nonnegative integer");
   }
   return v.get<std::uint64_t>();
}

std::filesystem::path ExperimentConfig::path(const std::string& key) const
{
   const std::filesystem::path p = text(key);
   if (p.empty())
   {
      throw ConfigError("config key '" + key + "' must name a file");
   }
   return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

} // namespace hdgeom
