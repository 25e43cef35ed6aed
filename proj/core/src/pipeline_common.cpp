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

#include "hdgeom/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hdgeom::detail {

StageTimer::StageTimer(ExperimentReport& report, std::string stage)
   : report_(report), stage_(std::move(stage)), start_(std::chrono::steady_clock::now())
{
}

StageTimer::~StageTimer()
{
   const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
   for (auto& [stage, total] : report_.timings_seconds)
   {
      if (stage == stage_)
      {
         total += seconds;
         return;
      }
   }
   report_.timings_seconds.emplace_back(stage_, seconds);
}

std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t m, std::uint64_t seed)
{
   std::vector<std::size_t> all(n);
   std::iota(all.begin(), all.end(), std::size_t{0});
   if (m >= n)
   {
      return all;
   }
   auto rng = make_stream(seed, 0x5eb5);
   std::shuffle(all.begin(), all.end(), rng);
   all.resize(m);
   std::sort(all.begin(), all.end());
   return all;
}

Matrix select_rows(const Matrix& m, const std::vector<std::size_t>& rows)
{
   Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
   for (const std::size_t r : rows)
   {
      if (r >= static_cast<std::size_t>(m.rows()))
      {
         throw InvalidArgument("row index " + std::to_string(r) + " out of range for " + std::to_string(m.rows()) + " rows");
      }
   }
   for (std::size_t r = 0; r < rows.size(); ++r)
   {
      out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
   }
   return out;
}

namespace {

/// Right singular vectors (columns, descending) and squared singular values.
void right_singular(const Matrix& y, std::size_t rank, Eigen::MatrixXd& v, Eigen::VectorXd& s2)
{
   const Eigen::Index n = y.rows();
   const Eigen::Index p = y.cols();
   const auto r = static_cast<Eigen::Index>(rank);
   if (p <= n)
   {
      const Eigen::MatrixXd g = y.transpose() * y;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
      v = eig.eigenvectors().rowwise().reverse().leftCols(r);
      s2 = eig.eigenvalues().reverse().head(r);
   }
   else
   {
      const Eigen::MatrixXd g = y * y.transpose();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
      const Eigen::MatrixXd u = eig.eigenvectors().rowwise().reverse().leftCols(r);
      s2 = eig.eigenvalues().reverse().head(r);
      v = y.transpose() * u;
      for (Eigen::Index c = 0; c < r; ++c)
      {
         const double norm = v.col(c).norm();
         if (norm > 0.0)
         {
            v.col(c) /= norm;
         }
      }
   }
   s2 = s2.cwiseMax(0.0);
   for (Eigen::Index c = 0; c < r; ++c)
   {
      Eigen::Index arg = 0;
      v.col(c).cwiseAbs().maxCoeff(&arg);
      if (v(arg, c) < 0.0)
      {
         v.col(c) = -v.col(c);
      }
   }
}

} // namespace

TopSvd top_svd(const Matrix& y, std::size_t rank)
{
   require(rank >= 1 && rank <= static_cast<std::size_t>(std::min(y.rows(), y.cols())),
           "top_svd: rank must be between 1 and min(n, p)");
   Eigen::MatrixXd v;
   Eigen::VectorXd s2;
   right_singular(y, rank, v, s2);
   TopSvd out;
   out.coords = y * v;
   out.singular_values = s2.cwiseSqrt();
   const double total = y.squaredNorm();
   out.energy = total > 0.0 ? s2.sum() / total : 0.0;
   return out;
}

Matrix pca_project(const Matrix& y, std::size_t dims)
{
   require(dims >= 1 && dims <= static_cast<std::size_t>(y.cols()), "pca_dims must be between 1 and p");
   const Eigen::RowVectorXd mean = y.colwise().mean();
   const Matrix centred = y.rowwise() - mean;
   Eigen::MatrixXd v;
   Eigen::VectorXd s2;
   right_singular(centred, std::min<std::size_t>(dims, static_cast<std::size_t>(std::min(y.rows(), y.cols()))),
                  v, s2);
   return centred * v;
}

bool betti_matches(const BettiEstimate& betti, const std::vector<std::size_t>& expected)
{
   for (std::size_t d = 0; d < expected.size() && d < betti.counts.size(); ++d)
   {
      if (static_cast<std::size_t>(betti.counts[d]) != expected[d])
      {
         return false;
      }
   }
   return expected.size() <= betti.counts.size();
}

std::string betti_text(const BettiEstimate& betti, std::size_t dims)
{
   std::ostringstream ss;
   ss << "(";
   for (std::size_t d = 0; d < dims && d < betti.counts.size(); ++d)
   {
      ss << (d ? "," : "") << betti.counts[d];
   }
   ss << ")";
   return ss.str();
}

int checked_max_dim(const ExperimentConfig& cfg)
{
   const std::size_t d = cfg.size_value("max_dim");
   if (d > 2)
   {
      throw ConfigError("max_dim must be 0, 1 or 2");
   }
   return static_cast<int>(d);
}

RipsOptions rips_options(const ExperimentConfig& cfg)
{
   RipsOptions opts;
   opts.max_dim = checked_max_dim(cfg);
   opts.max_edge = cfg.optional_real("max_edge");
   return opts;
}

std::string tag(double value)
{
   std::ostringstream ss;
   ss << value;
   return ss.str();
}

Check fraction_check(const std::string& name, bool hard, std::size_t hits, std::size_t total, double min_fraction)
{
   Check c;
   c.name = name;
   c.hard = hard;
   c.passed = total > 0 && static_cast<double>(hits) >= min_fraction * static_cast<double>(total) - 1e-12;
   c.detail = std::to_string(hits) + "/" + std::to_string(total) + " runs (need fraction >= " + tag(min_fraction) + ")";
   return c;
}

KnnGraph connected_graph(const KnnGraph& g, const std::function<KnnGraph()>& auto_build, Json& info)
{
   info["k"] = g.k;
   if (g.connected())
   {
      info["auto_k"] = false;
      return g;
   }
   KnnGraph fixed = auto_build();
   info["k"] = fixed.k;
   info["auto_k"] = true;
   return fixed;
}

SamplingScheme scheme_from(const std::string& name)
{
   if (name == "UniformGrid")
   {
      return SamplingScheme::UniformGrid;
   }
   if (name == "UniformRandom")
   {
      return SamplingScheme::UniformRandom;
   }
   throw ConfigError("sampling must be UniformGrid or UniformRandom, got '" + name + "'");
}


} // namespace hdgeom::detail
