// Copyright 2026 The mcxenc Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <benchmark/benchmark.h>

#include "mcxenc/pathopt.hpp"

namespace {

mcxenc::CostMatrix random_costs(int size) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 40);
  mcxenc::CostMatrix c(size);
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) c(i, j) = c(j, i) = pick(rng);
  }
  return c;
}

void BM_HeldKarp(benchmark::State& state) {
  const auto costs = random_costs(static_cast<int>(state.range(0)) + 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcxenc::solve_tsp(costs, mcxenc::OrderMode::kExact));
  }
}
BENCHMARK(BM_HeldKarp)->DenseRange(4, 14, 2)->Unit(benchmark::kMicrosecond);

void BM_TwoOpt(benchmark::State& state) {
  const auto costs = random_costs(static_cast<int>(state.range(0)) + 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mcxenc::solve_tsp(costs, mcxenc::OrderMode::kHeuristic));
  }
}
BENCHMARK(BM_TwoOpt)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

}  // namespace
