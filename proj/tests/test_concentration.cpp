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
#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hdgeom {
namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols)
{
   std::normal_distribution<double> g(0.0, 1.0);
   Matrix m(rows, cols);
   for (Eigen::Index i = 0; i < rows; ++i)
   {
      for (Eigen::Index j = 0; j < cols; ++j)
      {
         m(i, j) = g(rng);
      }
   }
   return m;
}

TEST(AmbientDim, Examples)
{
   EXPECT_DOUBLE_EQ(ambient_intrinsic_dim(std::vector<double>(7, 1.0)), 7.0);
   EXPECT_DOUBLE_EQ(ambient_intrinsic_dim(std::vector<double>{1.0, 0.0, 0.0}), 1.0);
   EXPECT_DOUBLE_EQ(ambient_intrinsic_dim(std::vector<double>{2.0, 1.0, 1.0}), 2.0);
   EXPECT_THROW(ambient_intrinsic_dim(std::vector<double>{0.0, 0.0}), InvalidArgument);
   EXPECT_THROW(ambient_intrinsic_dim(std::vector<double>{1.0, -1.0}), InvalidArgument);
}

TEST(AmbientDim, ScaleInvariantAndBounded)
{
   std::mt19937_64 rng(4);
   std::uniform_real_distribution<double> u(0.0, 3.0);
   for (int t = 0; t < 100; ++t)
   {
      std::vector<double> s(1 + t % 9);
      for (auto& v : s)
      {
         v = u(rng);
      }
      s[0] += 0.1;
      const double d = ambient_intrinsic_dim(s);
      std::vector<double> scaled = s;
      for (auto& v : scaled)
      {
         v *= 3.7;
      }
      EXPECT_NEAR(ambient_intrinsic_dim(scaled), d, 1e-12 * d);
      EXPECT_GE(d, 1.0);
      EXPECT_LE(d, static_cast<double>(s.size()) + 1e-12);
   }
}

TEST(GramStats, Identity)
{
   const Matrix eye = Matrix::Identity(2, 2);
   const GramStats g = gram_stats(eye);
   EXPECT_EQ(g.gram, eye);
   EXPECT_EQ(g.cosine, eye);
}

TEST(GramStats, DuplicateRowHasUnitCosine)
{
   std::mt19937_64 rng(1);
   Matrix y = random_matrix(rng, 4, 6);
   y.row(3) = y.row(1);
   const GramStats g = gram_stats(y);
   EXPECT_NEAR(g.cosine(1, 3), 1.0, 1e-15);
   for (Eigen::Index i = 0; i < 4; ++i)
   {
      EXPECT_NEAR(g.cosine(i, i), 1.0, 1e-15);
   }
}

TEST(GramStats, MatchesBruteForce)
{
   std::mt19937_64 rng(2);
   for (const auto& [r, c] : {std::pair{5, 7}, std::pair{10, 20}})
   {
      const Matrix y = random_matrix(rng, r, c);
      const GramStats g = gram_stats(y);
      const Matrix ref = oracle::brute_gram(y);
      EXPECT_LE((g.gram - ref).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_EQ(g.gram, g.gram.transpose());
      EXPECT_LE(g.cosine.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
   }
}

TEST(GramStats, ZeroRowWithCosineNamesTheRow)
{
   Matrix y = Matrix::Ones(3, 2);
   y.row(2).setZero();
   try
   {
      gram_stats(y);
      FAIL() << "expected an error";
   }
   catch (const InvalidArgument& e)
   {
      EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
   }
   EXPECT_NO_THROW(gram_stats(y, false));
}

TEST(TailBound, Examples)
{
   EXPECT_DOUBLE_EQ(ghw_tail_bound(1.0, 1.0, 1.0, 0.0), 2.0);
   EXPECT_NEAR(ghw_tail_bound(1.0, 1.0, 1.0, 1.0, 1.0), 2.0 * std::exp(-1.0), 1e-15);
   EXPECT_THROW(ghw_tail_bound(0.0, 1.0, 1.0, 1.0), InvalidArgument);
   EXPECT_THROW(ghw_tail_bound(1.0, 1.0, 0.0, 1.0), InvalidArgument);
   EXPECT_THROW(ghw_tail_bound(1.0, 1.0, 1.0, -1.0), InvalidArgument);
   EXPECT_THROW(ghw_tail_bound(1.0, 1.0, 1.0, 1.0, 0.0), InvalidArgument);
}

TEST(TailBound, MonotoneAndScaleInvariant)
{
   std::mt19937_64 rng(5);
   std::uniform_real_distribution<double> u(0.1, 5.0);
   for (int trial = 0; trial < 200; ++trial)
   {
      const double frob = u(rng);
      const double spec = std::min(frob, u(rng));
      const double k = u(rng);
      const double t1 = u(rng);
      const double t2 = t1 + u(rng);
      const double b1 = ghw_tail_bound(frob, spec, k, t1);
      EXPECT_LE(ghw_tail_bound(frob, spec, k, t2), b1);
      EXPECT_GE(ghw_tail_bound(frob, spec, k * 1.5, t1), b1);
      EXPECT_GT(b1, 0.0);
      EXPECT_LE(b1, 2.0);
      const double a = u(rng);
      EXPECT_NEAR(ghw_tail_bound(a * frob, a * spec, k, a * t1), b1, 1e-12);
   }
}

TEST(Deviation, ExactMatchIsZero)
{
   const LatentSample latent = sample_latent(Circle{1.0}, 12, SamplingScheme::UniformGrid, 0);
   const Matrix phi = feature_matrix(make_toy_circle(9), latent);
   const DeviationReport r = max_gram_deviation(phi, phi * phi.transpose(), 0.0);
   EXPECT_EQ(r.max_abs_deviation, 0.0);
   EXPECT_EQ(r.normalization, Normalization::ByP);
   const DeviationReport s = max_gram_deviation(phi, phi * phi.transpose(), 0.0,
                                                DeviationOptions{Normalization::SelfNormalized, false, false});
   EXPECT_LE(s.max_abs_deviation, 1e-15);
   EXPECT_TRUE(s.diagonal_excluded);
}

TEST(Deviation, ByPMatchesDefinition)
{
   std::mt19937_64 rng(8);
   const Matrix y = random_matrix(rng, 6, 9);
   const Matrix target = random_matrix(rng, 6, 6);
   const Matrix sym = (target + target.transpose()) / 2.0;
   const double sigma = 0.3;
   const DeviationReport r =
      max_gram_deviation(y, sym, sigma, DeviationOptions{Normalization::ByP, false, true});
   double worst = 0.0;
   for (Eigen::Index i = 0; i < 6; ++i)
   {
      for (Eigen::Index j = 0; j < 6; ++j)
      {
         const double dev =
            std::abs(y.row(i).dot(y.row(j)) / 9.0 - sym(i, j) / 9.0 - (i == j ? sigma * sigma : 0.0));
         worst = std::max(worst, dev);
         EXPECT_NEAR((*r.per_pair)(i, j), dev, 1e-14);
      }
   }
   EXPECT_EQ(r.max_abs_deviation, r.per_pair->maxCoeff());
   EXPECT_NEAR(r.max_abs_deviation, worst, 1e-14);
   EXPECT_DOUBLE_EQ(r.sigma_sq_used, sigma * sigma);
}

TEST(Deviation, SelfNormalizedUsesGammaCorrection)
{
   // With Y = phi exactly and sigma > 0 the target cosine is shrunk by gamma_i gamma_j.
   // The noise dimension is the column count of Y.
   const LatentSample latent = sample_latent(Circle{1.0}, 5, SamplingScheme::UniformGrid, 0);
   const std::size_t p = 9;
   const Matrix phi = feature_matrix(make_toy_circle(p), latent);
   const double sigma = 0.4;
   const DeviationReport r = max_gram_deviation(phi, phi * phi.transpose(), sigma,
                                                DeviationOptions{Normalization::SelfNormalized, false, true});
   double worst = 0.0;
   for (Eigen::Index i = 0; i < 5; ++i)
   {
      for (Eigen::Index j = 0; j < 5; ++j)
      {
         if (i == j)
         {
            continue;
         }
         const double ni = phi.row(i).norm();
         const double nj = phi.row(j).norm();
         const double cos = phi.row(i).dot(phi.row(j)) / (ni * nj);
         const double cols = static_cast<double>(phi.cols());
         const double gi = std::sqrt(ni * ni + cols * sigma * sigma) / ni;
         const double gj = std::sqrt(nj * nj + cols * sigma * sigma) / nj;
         worst = std::max(worst, std::abs(cos - cos / (gi * gj)));
      }
   }
   EXPECT_NEAR(r.max_abs_deviation, worst, 1e-14);
}

TEST(Deviation, DimensionMismatchIsRejected)
{
   EXPECT_THROW(max_gram_deviation(Matrix::Ones(3, 2), Matrix::Ones(2, 2), 0.0), InvalidArgument);
}

TEST(Deviation, PermutationEquivariant)
{
   std::mt19937_64 rng(9);
   const Matrix y = random_matrix(rng, 8, 5);
   const Matrix t = oracle::brute_gram(random_matrix(rng, 8, 5));
   std::vector<int> perm(8);
   std::iota(perm.begin(), perm.end(), 0);
   std::shuffle(perm.begin(), perm.end(), rng);
   Matrix yp(8, 5);
   Matrix tp(8, 8);
   for (int i = 0; i < 8; ++i)
   {
      yp.row(i) = y.row(perm[static_cast<std::size_t>(i)]);
      for (int j = 0; j < 8; ++j)
      {
         tp(i, j) = t(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      }
   }
   for (const auto norm : {Normalization::ByP, Normalization::ByExpectedNorms, Normalization::SelfNormalized})
   {
      const DeviationOptions opts{norm, false, false};
      EXPECT_EQ(max_gram_deviation(y, t, 0.2, opts).max_abs_deviation,
                max_gram_deviation(yp, tp, 0.2, opts).max_abs_deviation);
   }
}

TEST(Deviation, DistanceIdentityBound)
{
   const std::size_t p = 40;
   const LatentSample latent = sample_latent(Circle{1.0}, 30, SamplingScheme::UniformGrid, 0);
   ModelSpec spec{make_toy_circle(p)};
   spec.p = p;
   spec.seed = 21;
   const Matrix y = sample_data(spec, latent).values;
   const Matrix phi = feature_matrix(spec.feature_map, latent);
   const double dev = max_gram_deviation(y, phi * phi.transpose(), 0.0).max_abs_deviation;
   for (Eigen::Index i = 0; i < 30; ++i)
   {
      for (Eigen::Index j = 0; j < 30; ++j)
      {
         if (i == j)
         {
            continue;
         }
         const double lhs = std::abs((y.row(i) - y.row(j)).squaredNorm() / static_cast<double>(p) -
                                     (phi.row(i) - phi.row(j)).squaredNorm() / static_cast<double>(p));
         EXPECT_LE(lhs, 4.0 * dev + 1e-12);
      }
   }
}

TEST(Deviation, ToyCircleShrinksWithP)
{
   auto median_dev = [](std::size_t p) {
      std::vector<double> devs;
      const LatentSample latent = sample_latent(Circle{1.0}, 200, SamplingScheme::UniformGrid, 0);
      for (std::uint64_t s = 0; s < 20; ++s)
      {
         ModelSpec spec{make_toy_circle(p)};
         spec.p = p;
         spec.sigma = std::sqrt(0.02);
         spec.seed = s;
         const Matrix y = sample_data(spec, latent).values;
         const Matrix phi = feature_matrix(spec.feature_map, latent);
         devs.push_back(max_gram_deviation(y, phi * phi.transpose(), spec.sigma,
                                           DeviationOptions{Normalization::ByP, true, false})
                           .max_abs_deviation);
      }
      return median(devs);
   };
   EXPECT_LT(median_dev(400), median_dev(50));
}

TEST(RateStudy, IidGaussianSlopeNearOne)
{
   const std::vector<GridPoint> grid{{100, 64}, {100, 128}, {100, 256}, {100, 512}, {100, 1024}};
   const RateStudy study = rate_study(iid_rate_template(Family::Gaussian, 0), grid, 10);
   EXPECT_EQ(study.cells.size(), grid.size());
   EXPECT_EQ(study.seeds, 10u);
   EXPECT_GE(study.fitted_slope, 0.85);
   EXPECT_LE(study.fitted_slope, 1.15);
   const auto rescaled = rescaled_medians(study);
   const auto [lo, hi] = std::minmax_element(rescaled.begin(), rescaled.end());
   EXPECT_LT(*hi / *lo, 2.0);
}

TEST(RateStudy, RademacherSlopeCloseToGaussian)
{
   const std::vector<GridPoint> grid{{100, 64}, {100, 128}, {100, 256}, {100, 512}, {100, 1024}};
   const double g = rate_study(iid_rate_template(Family::Gaussian, 0), grid, 10).fitted_slope;
   const double r = rate_study(iid_rate_template(Family::Rademacher, 0), grid, 10).fitted_slope;
   EXPECT_LT(std::abs(g - r), 0.1);
}

TEST(RateStudy, DegenerateInputsAreRejected)
{
   const std::vector<GridPoint> single{{100, 64}};
   EXPECT_THROW(rate_study(iid_rate_template(Family::Gaussian, 0), single, 5), InvalidArgument);
   const std::vector<GridPoint> two{{100, 64}, {100, 128}};
   EXPECT_THROW(rate_study(iid_rate_template(Family::Gaussian, 0), two, 2), InvalidArgument);
   EXPECT_THROW(rate_study(iid_rate_template(Family::Gaussian, 0), std::vector<GridPoint>{}, 5),
                InvalidArgument);
}

TEST(RateStudy, MedianIsOrderIndependent)
{
   EXPECT_DOUBLE_EQ(median({3.0, 1.0, 2.0}), 2.0);
   EXPECT_DOUBLE_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
   EXPECT_THROW(median({}), InvalidArgument);
}

} // namespace
} // namespace hdgeom
