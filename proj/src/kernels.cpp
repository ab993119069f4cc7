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

#include "qsci/kernels.hpp"

#include <algorithm>
#include <bit>

#include "qsci/rng.hpp"

namespace qsci::kernels {

namespace {

// Index with a zero bit inserted at position q.
inline std::uint64_t insert_zero(std::uint64_t i, int q) {
  const std::uint64_t low = i & ((std::uint64_t{1} << q) - 1);
  return ((i >> q) << (q + 1)) | low;
}

inline void mix1(std::span<cplx> a, std::uint64_t i0, std::uint64_t i1, const Mat2& m) {
  const cplx v0 = a[i0], v1 = a[i1];
  a[i0] = m[0] * v0 + m[1] * v1;
  a[i1] = m[2] * v0 + m[3] * v1;
}

inline void mix2(std::span<cplx> a, std::uint64_t base, std::uint64_t b0, std::uint64_t b1,
                 const Mat4& m) {
  const std::uint64_t idx[4] = {base, base | b0, base | b1, base | b0 | b1};
  const cplx v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
  for (int r = 0; r < 4; ++r)
    a[idx[r]] = m[4 * r] * v[0] + m[4 * r + 1] * v[1] + m[4 * r + 2] * v[2] + m[4 * r + 3] * v[3];
}

inline std::int64_t half(std::span<const cplx> a, int shift) {
  return static_cast<std::int64_t>(a.size() >> shift);
}

}  // namespace

void apply_1q_serial(std::span<cplx> amps, int q, const Mat2& m) {
  const std::int64_t n = half(amps, 1);
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t i0 = insert_zero(i, q);
    mix1(amps, i0, i0 | bit, m);
  }
}

void apply_1q(std::span<cplx> amps, int q, const Mat2& m) {
  const std::int64_t n = half(amps, 1);
  const std::uint64_t bit = std::uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t i0 = insert_zero(i, q);
    mix1(amps, i0, i0 | bit, m);
  }
}

void apply_2q_serial(std::span<cplx> amps, int q0, int q1, const Mat4& m) {
  const std::int64_t n = half(amps, 2);
  const int lo = std::min(q0, q1), hi = std::max(q0, q1);
  const std::uint64_t b0 = std::uint64_t{1} << q0, b1 = std::uint64_t{1} << q1;
  for (std::int64_t i = 0; i < n; ++i)
    mix2(amps, insert_zero(insert_zero(i, lo), hi), b0, b1, m);
}

void apply_2q(std::span<cplx> amps, int q0, int q1, const Mat4& m) {
  const std::int64_t n = half(amps, 2);
  const int lo = std::min(q0, q1), hi = std::max(q0, q1);
  const std::uint64_t b0 = std::uint64_t{1} << q0, b1 = std::uint64_t{1} << q1;
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i)
    mix2(amps, insert_zero(insert_zero(i, lo), hi), b0, b1, m);
}

void apply_x(std::span<cplx> amps, int q) {
  const std::int64_t n = half(amps, 1);
  const std::uint64_t bit = std::uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t i0 = insert_zero(i, q);
    std::swap(amps[i0], amps[i0 | bit]);
  }
}

void apply_y(std::span<cplx> amps, int q) {
  // Y|0> = i|1>, Y|1> = -i|0>
  const std::int64_t n = half(amps, 1);
  const std::uint64_t bit = std::uint64_t{1} << q;
  const cplx I{0, 1};
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t i0 = insert_zero(i, q);
    const cplx v0 = amps[i0], v1 = amps[i0 | bit];
    amps[i0] = -I * v1;
    amps[i0 | bit] = I * v0;
  }
}

void apply_z(std::span<cplx> amps, int q) {
  const std::int64_t n = half(amps, 1);
  const std::uint64_t bit = std::uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) amps[insert_zero(i, q) | bit] *= -1.0;
}

void apply_cnot(std::span<cplx> amps, int control, int target) {
  const std::int64_t n = half(amps, 2);
  const int lo = std::min(control, target), hi = std::max(control, target);
  const std::uint64_t bc = std::uint64_t{1} << control, bt = std::uint64_t{1} << target;
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t base = insert_zero(insert_zero(i, lo), hi) | bc;
    std::swap(amps[base], amps[base | bt]);
  }
}

void apply_cz(std::span<cplx> amps, int q0, int q1) {
  const std::int64_t n = half(amps, 2);
  const int lo = std::min(q0, q1), hi = std::max(q0, q1);
  const std::uint64_t both = (std::uint64_t{1} << q0) | (std::uint64_t{1} << q1);
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) amps[insert_zero(insert_zero(i, lo), hi) | both] *= -1.0;
}

namespace {

constexpr cplx kIPow[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
// Fixed chunking makes the summation order independent of thread count.
constexpr std::int64_t kChunk = 4096;

// sum over y in chunk of conj(a[y ^ x]) (-1)^{|y&z|} a[y]
inline cplx chunk_sum(std::span<const cplx> a, std::uint64_t x, std::uint64_t z,
                      std::int64_t begin, std::int64_t end) {
  double re = 0.0, im = 0.0;
  for (std::int64_t y = begin; y < end; ++y) {
    const cplx v = std::conj(a[y ^ x]) * a[y];
    const double s = (std::popcount(static_cast<std::uint64_t>(y) & z) & 1) ? -1.0 : 1.0;
    re += s * v.real();
    im += s * v.imag();
  }
  return {re, im};
}

}  // namespace

cplx pauli_expectation_serial(std::span<const cplx> amps, const QubitHamiltonian& h) {
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  cplx total = 0.0;
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.string.x(), z = t.string.z();
    cplx sum = 0.0;
    for (std::int64_t c = 0; c < chunks; ++c)
      sum += chunk_sum(amps, x, z, c * kChunk, std::min(n, (c + 1) * kChunk));
    total += t.coefficient * kIPow[std::popcount(x & z) & 3] * sum;
  }
  return total;
}

cplx pauli_expectation(std::span<const cplx> amps, const QubitHamiltonian& h) {
  const std::int64_t n = static_cast<std::int64_t>(amps.size());
  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  const auto& terms = h.terms();
  const std::int64_t nt = static_cast<std::int64_t>(terms.size());
  std::vector<cplx> partial(static_cast<std::size_t>(nt * chunks));
  // Parallel over (term, chunk) pairs; small states get one chunk per term.
#pragma omp parallel for schedule(static) if (nt * n > (1 << 16))
  for (std::int64_t k = 0; k < nt * chunks; ++k) {
    const auto& p = terms[k / chunks].string;
    const std::int64_t c = k % chunks;
    partial[k] = chunk_sum(amps, p.x(), p.z(), c * kChunk, std::min(n, (c + 1) * kChunk));
  }
  cplx total = 0.0;
  for (std::int64_t t = 0; t < nt; ++t) {
    cplx sum = 0.0;
    for (std::int64_t c = 0; c < chunks; ++c) sum += partial[t * chunks + c];
    const auto& p = terms[t].string;
    total += terms[t].coefficient * kIPow[std::popcount(p.x() & p.z()) & 3] * sum;
  }
  return total;
}

namespace {

inline double element(const Determinant& x, const Determinant& y, const MolecularIntegrals& mol) {
  if (std::popcount(x.bits()) != std::popcount(y.bits())) return 0.0;
  if (std::popcount(x.bits() ^ y.bits()) > 4) return 0.0;
  return slater_condon(x, y, mol);
}

}  // namespace

Eigen::MatrixXd subspace_matrix_serial(std::span<const Determinant> basis,
                                       const MolecularIntegrals& mol) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = element(basis[i], basis[j], mol);
  return m;
}

Eigen::MatrixXd subspace_matrix(std::span<const Determinant> basis,
                                const MolecularIntegrals& mol) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m(n, n);
#pragma omp parallel for schedule(dynamic, 16) if (n > 64)
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = element(basis[i], basis[j], mol);
  return m;
}

std::uint64_t draw_from_cdf(std::span<const double> cdf, double u) {
  // Scale by the final entry so tiny normalization drift cannot overflow.
  const double target = u * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  const std::size_t k = static_cast<std::size_t>(it - cdf.begin());
  return std::min<std::size_t>(k, cdf.size() - 1);
}

std::vector<std::uint64_t> sample_outcomes_serial(std::span<const double> cdf,
                                                  std::uint64_t n_shots, std::uint64_t seed) {
  std::vector<std::uint64_t> out(n_shots);
  for (std::uint64_t s = 0; s < n_shots; ++s)
    out[s] = draw_from_cdf(cdf, Stream(seed, s, kOutcome).uniform());
  return out;
}

std::vector<std::uint64_t> sample_outcomes(std::span<const double> cdf, std::uint64_t n_shots,
                                           std::uint64_t seed) {
  std::vector<std::uint64_t> out(n_shots);
  const std::int64_t n = static_cast<std::int64_t>(n_shots);
#pragma omp parallel for schedule(static) if (n > 1024)
  for (std::int64_t s = 0; s < n; ++s)
    out[s] = draw_from_cdf(cdf, Stream(seed, s, kOutcome).uniform());
  return out;
}

}  // namespace qsci::kernels
