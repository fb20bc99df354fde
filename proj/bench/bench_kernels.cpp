// Copyright 2026 The qubus Authors
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

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "qubus/fock.hpp"
#include "qubus/kernels.hpp"
#include "qubus/protocols.hpp"

namespace {

using namespace qubus;

Eigen::VectorXcd random_state(int n_qubits, int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Random((Eigen::Index{1} << n_qubits) * dim);
  return v / v.norm();
}

template <bool kParallel>
void BM_Blockwise(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int dim = static_cast<int>(state.range(1));
  Eigen::VectorXcd psi = random_state(n, dim);
  const Eigen::MatrixXcd d0 = displacement_matrix({0.3, 0.1}, dim);
  const Eigen::MatrixXcd d1 = displacement_matrix({-0.3, -0.1}, dim);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::parallel::apply_blockwise(psi, n, dim, 0, d0, d1);
    } else {
      kernels::serial::apply_blockwise(psi, n, dim, 0, d0, d1);
    }
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_Blockwise<false>)->Args({4, 64})->Args({8, 64});
BENCHMARK(BM_Blockwise<true>)->Args({4, 64})->Args({8, 64});

template <bool kParallel>
void BM_MixQubit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int dim = 64;
  Eigen::VectorXcd psi = random_state(n, dim);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::parallel::mix_qubit(psi, n, dim, n - 1, gates::hadamard());
    } else {
      kernels::serial::mix_qubit(psi, n, dim, n - 1, gates::hadamard());
    }
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_MixQubit<false>)->Arg(8)->Arg(12);
BENCHMARK(BM_MixQubit<true>)->Arg(8)->Arg(12);

template <bool kParallel>
void BM_QndShots(benchmark::State& state) {
  const ShotOptions opt{static_cast<std::uint64_t>(state.range(0)), 7, kParallel, std::nullopt};
  for (auto _ : state) {
    auto r = qnd_qubit_measurement(std::sqrt(0.5), std::sqrt(0.5), 1.0, 0.0, Complex{}, opt);
    benchmark::DoNotOptimize(r.metrics);
  }
}
BENCHMARK(BM_QndShots<false>)->Arg(20000);
BENCHMARK(BM_QndShots<true>)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
