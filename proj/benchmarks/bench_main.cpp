// Copyright 2026 The qcell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "qcell/decomposer.hpp"
#include "qcell/fabric.hpp"
#include "qcell/game.hpp"
#include "qcell/optics.hpp"

namespace {

using namespace qcell;

void BM_ZyzDecompose(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Matrix u = haar_random_unitary(2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zyz_decompose(u));
  }
}
BENCHMARK(BM_ZyzDecompose);

void BM_KakDecompose(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Matrix u = haar_random_unitary(4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kak_decompose(u));
  }
}
BENCHMARK(BM_KakDecompose);

void BM_CompileUnitary2q(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Matrix u = haar_random_unitary(4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile_unitary2q(u));
  }
}
BENCHMARK(BM_CompileUnitary2q);

void BM_ProgramToUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> a(0.0, 3.0);
  CellProgram p{n, 0.0, {}};
  for (int c = 0; c < 4; ++c) {
    Cell cell(n);
    for (int l = 0; l <= n; ++l) {
      for (int w = 1; w <= n; ++w) {
        cell.slot(l, w) = {0.0, a(rng), a(rng), a(rng)};
      }
    }
    const std::vector<CnotSlot> all = cell.cnots();
    for (const CnotSlot& s : all) {
      cell.set_cnot(s.control, s.target, true);
    }
    p.cells.push_back(cell);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(program_to_unitary(p));
  }
}
BENCHMARK(BM_ProgramToUnitary)->DenseRange(2, 6, 2);

void BM_OpticsSetup(benchmark::State& state) {
  const optics::PhotonQubit c{std::sqrt(0.5), std::sqrt(0.5)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(optics::simulate_cnot_setup(c, {1.0, 0.0}, optics::AncillaKind::bell));
  }
}
BENCHMARK(BM_OpticsSetup);

void BM_BestResponse(benchmark::State& state) {
  const game::GameConfig cfg{kPi / 2, {}, game::JConvention::paper};
  for (auto _ : state) {
    benchmark::DoNotOptimize(game::best_response_scan(cfg, {0.0, kPi, 0.0, 0.0}, 12));
  }
}
BENCHMARK(BM_BestResponse);

}  // namespace

BENCHMARK_MAIN();
