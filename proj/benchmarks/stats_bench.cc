// Copyright 2026 The phrasefix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "phrasefix/stats.h"

namespace phrasefix {
namespace {

void BM_ChiSquaredStatistic(benchmark::State& state) {
  const std::vector<int> correct = {53, 59, 60};
  const std::vector<int> totals = {80, 80, 80};
  const ContingencyTable table = ContingencyTable::correct_incorrect(correct, totals);
  for (auto _ : state) benchmark::DoNotOptimize(chi_squared_statistic(table));
}
BENCHMARK(BM_ChiSquaredStatistic);

void BM_ChiSquaredPvalue(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chi_squared_pvalue(x, 2));
}
// Small statistics take the series branch, large ones the continued fraction.
BENCHMARK(BM_ChiSquaredPvalue)->Arg(1)->Arg(40);

void BM_TwoProportionTest(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(two_proportion_test(61, 80, 73, 80));
}
BENCHMARK(BM_TwoProportionTest);

}  // namespace
}  // namespace phrasefix
