// Copyright 2026 The QSCI Authors
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

// Serial reference kernels against their OpenMP counterparts. Each pair runs
// on identical inputs; the Serial/Parallel suffix names the variant.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "qsci/determinant.hpp"
#include "qsci/integrals.hpp"
#include "qsci/kernels.hpp"
#include "qsci/pauli.hpp"

namespace {

using namespace qsci;

std::vector<cplx> random_amplitudes(int n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return a;
}

const MolecularIntegrals& molecule(const std::string& name) {
  static std::map<std::string, MolecularIntegrals> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, read_fcidump(std::string(QSCI_FIXTURE_DIR) + "/" + name + ".fcidump")).first;
  return it->second;
}

const kernels::Mat2 kRy{cplx(0.8, 0), cplx(-0.6, 0), cplx(0.6, 0), cplx(0.8, 0)};

kernels::Mat4 givens() {
  kernels::Mat4 m{};
  m[0] = m[15] = 1.0;
  m[5] = m[10] = 0.8;
  m[6] = -0.6;
  m[9] = 0.6;
  return m;
}

template <bool Parallel>
void BM_Apply1q(benchmark::State& st) {
  auto a = random_amplitudes(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    for (int q = 0; q < st.range(0); ++q) {
      if constexpr (Parallel) kernels::apply_1q(a, q, kRy);
      else kernels::apply_1q_serial(a, q, kRy);
    }
    benchmark::DoNotOptimize(a.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0) * static_cast<std::int64_t>(a.size()));
}

template <bool Parallel>
void BM_Apply2q(benchmark::State& st) {
  auto a = random_amplitudes(static_cast<int>(st.range(0)));
  const auto m = givens();
  for (auto _ : st) {
    for (int q = 0; q + 1 < st.range(0); ++q) {
      if constexpr (Parallel) kernels::apply_2q(a, q, q + 1, m);
      else kernels::apply_2q_serial(a, q, q + 1, m);
    }
    benchmark::DoNotOptimize(a.data());
  }
}

template <bool Parallel>
void BM_PauliExpectation(benchmark::State& st) {
  const std::string name = st.range(0) == 8 ? "h4" : "h6";
  const auto h = jordan_wigner(molecule(name));
  const auto a = random_amplitudes(h.n_qubits());
  for (auto _ : st) {
    if constexpr (Parallel) benchmark::DoNotOptimize(kernels::pauli_expectation(a, h));
    else benchmark::DoNotOptimize(kernels::pauli_expectation_serial(a, h));
  }
  st.SetLabel(name + ", " + std::to_string(h.size()) + " terms");
}

template <bool Parallel>
void BM_SubspaceMatrix(benchmark::State& st) {
  const auto& mol = molecule("h6");
  auto dets = sector_determinants(mol.n_orbitals, mol.reference_sector());
  dets.resize(std::min<std::size_t>(dets.size(), static_cast<std::size_t>(st.range(0))));
  for (auto _ : st) {
    if constexpr (Parallel) benchmark::DoNotOptimize(kernels::subspace_matrix(dets, mol));
    else benchmark::DoNotOptimize(kernels::subspace_matrix_serial(dets, mol));
  }
}

template <bool Parallel>
void BM_SampleOutcomes(benchmark::State& st) {
  const auto a = random_amplitudes(16);
  std::vector<double> cdf(a.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) cdf[i] = acc += std::norm(a[i]);
  const auto shots = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) {
    if constexpr (Parallel) benchmark::DoNotOptimize(kernels::sample_outcomes(cdf, shots, 7));
    else benchmark::DoNotOptimize(kernels::sample_outcomes_serial(cdf, shots, 7));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

BENCHMARK(BM_Apply1q<false>)->Name("Apply1q/Serial")->Arg(16)->Arg(20);
BENCHMARK(BM_Apply1q<true>)->Name("Apply1q/Parallel")->Arg(16)->Arg(20);
BENCHMARK(BM_Apply2q<false>)->Name("Apply2q/Serial")->Arg(16)->Arg(20);
BENCHMARK(BM_Apply2q<true>)->Name("Apply2q/Parallel")->Arg(16)->Arg(20);
BENCHMARK(BM_PauliExpectation<false>)->Name("PauliExpectation/Serial")->Arg(8)->Arg(12);
BENCHMARK(BM_PauliExpectation<true>)->Name("PauliExpectation/Parallel")->Arg(8)->Arg(12);
BENCHMARK(BM_SubspaceMatrix<false>)->Name("SubspaceMatrix/Serial")->Arg(100)->Arg(400);
BENCHMARK(BM_SubspaceMatrix<true>)->Name("SubspaceMatrix/Parallel")->Arg(100)->Arg(400);
BENCHMARK(BM_SampleOutcomes<false>)->Name("SampleOutcomes/Serial")->Arg(10000)->Arg(1000000);
BENCHMARK(BM_SampleOutcomes<true>)->Name("SampleOutcomes/Parallel")->Arg(10000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
