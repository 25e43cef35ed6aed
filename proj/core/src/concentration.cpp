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

#include "hdgeom/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hdgeom {

double ambient_intrinsic_dim(std::span<const double> spectrum)
{
   double total = 0.0;
   double largest = 0.0;
   for (double v : spectrum)
   {
      require(v >= 0.0 && std::isfinite(v), "ambient_intrinsic_dim: eigenvalues must be finite and >= 0");
      total += v;
      largest = std::max(largest, v);
   }
   require(largest > 0.0, "ambient_intrinsic_dim: spectrum has no positive eigenvalue");
   return total / largest;
}

GramStats gram_stats(const Matrix& y, bool with_cosine)
{
   GramStats stats;
   stats.gram.noalias() = y * y.transpose();
   // Mirror the lower triangle so the result is exactly symmetric.
   for (Eigen::Index i = 0; i < stats.gram.rows(); ++i)
   {
      for (Eigen::Index j = i + 1; j < stats.gram.cols(); ++j)
      {
         stats.gram(i, j) = stats.gram(j, i);
      }
   }
   stats.norms = y.rowwise().norm();
   if (with_cosine)
   {
      for (Eigen::Index i = 0; i < y.rows(); ++i)
      {
         require(stats.norms[i] > 0.0,
                 "gram_stats: row " + std::to_string(i) + " has zero norm; cosine is undefined");
      }
      stats.cosine.resize(y.rows(), y.rows());
      for (Eigen::Index i = 0; i < y.rows(); ++i)
      {
         for (Eigen::Index j = 0; j < y.rows(); ++j)
         {
            stats.cosine(i, j) =
               i == j ? 1.0 : stats.gram(i, j) / (stats.norms[i] * stats.norms[j]);
         }
      }
   }
   return stats;
}

double ghw_tail_bound(double frobenius_norm, double spectral_norm, double subgaussian_bound, double t,
                      double c)
{
   require(frobenius_norm > 0.0 && spectral_norm > 0.0,
           "ghw_tail_bound: matrix norms must be > 0");
   require(subgaussian_bound > 0.0, "ghw_tail_bound: K must be > 0");
   require(c > 0.0, "ghw_tail_bound: constant c must be > 0");
   require(t >= 0.0, "ghw_tail_bound: t must be >= 0");
   const double k2 = subgaussian_bound * subgaussian_bound;
   const double quadratic = t * t / (k2 * k2 * frobenius_norm * frobenius_norm);
   const double linear = t / (k2 * spectral_norm);
   return 2.0 * std::exp(-c * std::min(quadratic, linear));
}

std::string to_string(Normalization n)
{
   switch (n)
   {
   case Normalization::ByP:
      return "ByP";
   case Normalization::ByExpectedNorms:
      return "ByExpectedNorms";
   case Normalization::SelfNormalized:
      return "SelfNormalized";
   }
   return "?";
}

Normalization normalization_from_string(const std::string& s)
{
   if (s == "ByP")
   {
      return Normalization::ByP;
   }
   if (s == "ByExpectedNorms")
   {
      return Normalization::ByExpectedNorms;
   }
   if (s == "SelfNormalized")
   {
      return Normalization::SelfNormalized;
   }
   throw InvalidArgument("unknown normalization '" + s + "'");
}

DeviationReport max_gram_deviation(const Matrix& y, const Matrix& target_gram, double sigma,
                                   const DeviationOptions& options)
{
   const Eigen::Index n = y.rows();
   require(target_gram.rows() == n && target_gram.cols() == n,
           "max_gram_deviation: target Gram is " + std::to_string(target_gram.rows()) + "x" +
              std::to_string(target_gram.cols()) + " but Y has " + std::to_string(n) + " rows");
   require(sigma >= 0.0, "max_gram_deviation: sigma must be >= 0");

   const double p = static_cast<double>(y.cols());
   const double s2 = sigma * sigma;
   const Matrix gram = y * y.transpose();

   DeviationReport report;
   report.normalization = options.normalization;
   report.sigma_sq_used = s2;
   report.diagonal_excluded =
      options.exclude_diagonal || options.normalization == Normalization::SelfNormalized;

   Vector observed_norm;
   Vector gamma;
   Vector target_norm;
   if (options.normalization == Normalization::SelfNormalized)
   {
      observed_norm = gram.diagonal().cwiseSqrt();
      target_norm = target_gram.diagonal().cwiseSqrt();
      gamma.resize(n);
      for (Eigen::Index i = 0; i < n; ++i)
      {
         require(target_norm[i] > 0.0,
                 "max_gram_deviation: zero phi-norm at row " + std::to_string(i) +
                    " makes gamma undefined");
         require(observed_norm[i] > 0.0,
                 "max_gram_deviation: zero observed norm at row " + std::to_string(i));
         gamma[i] = std::sqrt(target_gram(i, i) + p * s2) / target_norm[i];
      }
   }
   Vector expected_sq;
   if (options.normalization == Normalization::ByExpectedNorms)
   {
      expected_sq = target_gram.diagonal().array() + p * s2;
      for (Eigen::Index i = 0; i < n; ++i)
      {
         require(expected_sq[i] > 0.0, "max_gram_deviation: zero expected norm at row " +
                                          std::to_string(i));
      }
   }

   if (options.keep_per_pair)
   {
      report.per_pair = Matrix::Zero(n, n);
   }

   double best = 0.0;
   for (Eigen::Index i = 0; i < n; ++i)
   {
      for (Eigen::Index j = 0; j < n; ++j)
      {
         if (i == j && report.diagonal_excluded)
         {
            continue;
         }
         const double same = i == j ? 1.0 : 0.0;
         double dev = 0.0;
         switch (options.normalization)
         {
         case Normalization::ByP:
            dev = std::abs(gram(i, j) / p - target_gram(i, j) / p - s2 * same);
            break;
         case Normalization::ByExpectedNorms:
            dev = std::abs(gram(i, j) - target_gram(i, j) - p * s2 * same) /
                  std::sqrt(expected_sq[i] * expected_sq[j]);
            break;
         case Normalization::SelfNormalized:
         {
            const double cos_y = gram(i, j) / (observed_norm[i] * observed_norm[j]);
            const double cos_t = target_gram(i, j) / (target_norm[i] * target_norm[j]);
            dev = std::abs(cos_y - cos_t / (gamma[i] * gamma[j]));
            break;
         }
         }
         if (report.per_pair)
         {
            (*report.per_pair)(i, j) = dev;
         }
         if (dev > best)
         {
            best = dev;
            report.argmax_i = static_cast<std::size_t>(i);
            report.argmax_j = static_cast<std::size_t>(j);
         }
      }
   }
   report.max_abs_deviation = best;
   return report;
}

double median(std::vector<double> values)
{
   require(!values.empty(), "median of an empty list");
   std::sort(values.begin(), values.end());
   const std::size_t m = values.size() / 2;
   if (values.size() % 2 == 1)
   {
      return values[m];
   }
   return 0.5 * (values[m - 1] + values[m]);
}

} // namespace hdgeom
