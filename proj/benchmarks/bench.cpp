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


#include "hdgeom/geodesic.hpp"
#include "hdgeom/homology.hpp"
#include "hdgeom/model.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

using namespace hdgeom;

Matrix torus_cloud(std::size_t n, std::uint64_t seed)
{
   return sample_latent(FlatTorusRhombus{}, n, SamplingScheme::UniformRandom, seed).points;
}

Matrix noisy_circle(std::size_t n, std::uint64_t seed)
{
   std::mt19937_64 rng(seed);
   std::normal_distribution<double> noise(0.0, 0.05);
   Matrix points(static_cast<Eigen::Index>(n), 2);
   const LatentSample latent = sample_latent(Circle{1.0}, n, SamplingScheme::UniformRandom, seed);
   for (Eigen::Index i = 0; i < points.rows(); ++i)
   {
      points(i, 0) = std::cos(latent.points(i, 0)) + noise(rng);
      points(i, 1) = std::sin(latent.points(i, 0)) + noise(rng);
   }
   return points;
}

void BM_RipsH1(benchmark::State& state)
{
   const DistanceMatrix dm = distance_matrix(noisy_circle(static_cast<std::size_t>(state.range(0)), 1), Scaling::Raw);
   for (auto _ : state)
   {
      benchmark::DoNotOptimize(rips_persistence(dm, RipsOptions{1, {}}));
   }
}
BENCHMARK(BM_RipsH1)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RipsH2(benchmark::State& state)
{
   const DistanceMatrix dm = distance_matrix(torus_cloud(static_cast<std::size_t>(state.range(0)), 2), Scaling::Raw);
   for (auto _ : state)
   {
      benchmark::DoNotOptimize(rips_persistence(dm, RipsOptions{2, {}}));
   }
}
BENCHMARK(BM_RipsH2)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_KnnTeleport(benchmark::State& state)
{
   const Matrix points = torus_cloud(static_cast<std::size_t>(state.range(0)), 3);
   const LatentMetric metric = RhombusTeleport{FlatTorusRhombus{}};
   for (auto _ : state)
   {
      benchmark::DoNotOptimize(knn_graph(points, metric, KnnOptions{}));
   }
}
BENCHMARK(BM_KnnTeleport)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_DijkstraAllPairs(benchmark::State& state)
{
   const Matrix points = torus_cloud(static_cast<std::size_t>(state.range(0)), 4);
   const KnnGraph graph = knn_graph(points, LatentMetric{RhombusTeleport{FlatTorusRhombus{}}}, KnnOptions{});
   for (auto _ : state)
   {
      benchmark::DoNotOptimize(shortest_paths(graph));
   }
}
BENCHMARK(BM_DijkstraAllPairs)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Bottleneck(benchmark::State& state)
{
   std::mt19937_64 rng(5);
   std::uniform_real_distribution<double> u(0.0, 1.0);
   auto diagram = [&] {
      std::vector<PersistencePair> pairs;
      for (int i = 0; i < state.range(0); ++i)
      {
         const double b = u(rng);
         pairs.push_back({1, b, b + u(rng)});
      }
      return pairs;
   };
   const auto a = diagram();
   const auto b = diagram();
   for (auto _ : state)
   {
      benchmark::DoNotOptimize(bottleneck(a, b));
   }
}
BENCHMARK(BM_Bottleneck)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
