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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qsci/circuit.hpp"
#include "qsci/error.hpp"
#include "qsci/kernels.hpp"
#include "qsci/pauli.hpp"
#include "qsci/statevector.hpp"
#include "test_support.hpp"

namespace qsci {
namespace {

using M = Eigen::MatrixXcd;
const cplx I{0, 1};

// Full-register matrix of a one-qubit gate; qubit 0 is the rightmost factor.
M embed1(int n, int q, const M& g) {
  M r = M::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) r = Eigen::kroneckerProduct(r, k == q ? g : M::Identity(2, 2)).eval();
  return r;
}

// Two-qubit gate given on the local basis index b(q0) + 2 b(q1).
M embed2(int n, int q0, int q1, const M& g) {
  const int dim = 1 << n;
  M r = M::Zero(dim, dim);
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y) {
      const int rest = ~((1 << q0) | (1 << q1));
      if ((x & rest) != (y & rest)) continue;
      const int lx = ((x >> q0) & 1) + 2 * ((x >> q1) & 1);
      const int ly = ((y >> q0) & 1) + 2 * ((y >> q1) & 1);
      r(x, y) = g(lx, ly);
    }
  return r;
}

M gate_matrix(int n, const Gate& g, double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  M m(2, 2);
  switch (g.kind) {
    case GateKind::RX: m << c, -I * s, -I * s, c; return embed1(n, g.q0, m);
    case GateKind::RY: m << c, -s, s, c; return embed1(n, g.q0, m);
    case GateKind::RZ: m << std::exp(-I * t / 2.0), 0, 0, std::exp(I * t / 2.0); return embed1(n, g.q0, m);
    case GateKind::H: m << 1, 1, 1, -1; return embed1(n, g.q0, m / std::sqrt(2.0));
    case GateKind::X: m << 0, 1, 1, 0; return embed1(n, g.q0, m);
    case GateKind::SDG: m << 1, 0, 0, -I; return embed1(n, g.q0, m);
    case GateKind::CNOT: {
      M g4 = M::Identity(4, 4);
      g4.row(1).swap(g4.row(3));  // control q0 set flips q1
      return embed2(n, g.q0, g.q1, g4);
    }
    case GateKind::CZ: {
      M g4 = M::Identity(4, 4);
      g4(3, 3) = -1;
      return embed2(n, g.q0, g.q1, g4);
    }
    case GateKind::GIVENS: {
      M g4 = M::Identity(4, 4);
      g4(1, 1) = c, g4(1, 2) = -s, g4(2, 1) = s, g4(2, 2) = c;
      return embed2(n, g.q0, g.q1, g4);
    }
  }
  return {};
}

Circuit random_circuit(std::mt19937_64& rng, int n, int n_gates) {
  Circuit c(n);
  for (int k = 0; k < n_gates; ++k) {
    const auto kind = static_cast<GateKind>(rng() % 9);
    const int q0 = rng() % n;
    int q1 = -1;
    if (gate_is_two_qubit(kind)) do q1 = rng() % n; while (q1 == q0);
    if (gate_takes_angle(kind)) {
      if (rng() % 2) c.add_parametrized(kind, q0, q1);
      else c.add_fixed(kind, q0, q1, double(rng() % 1000) / 100 - 5);
    } else {
      c.add(kind, q0, q1);
    }
  }
  return c;
}

TEST(Circuit, SimulationMatchesKroneckerOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + rng() % 4;
    const Circuit c = random_circuit(rng, n, 25);
    std::vector<double> p(c.n_params());
    for (auto& x : p) x = double(rng() % 1000) / 100 - 5;
    const Determinant init(rng() % (1u << n), n);
    const StateVector sv = simulate(c, p, init);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1 << n);
    v[init.bits()] = 1;
    for (const auto& g : c.gates()) v = gate_matrix(n, g, g.parametrized() ? p[g.slot] : g.angle) * v;
    for (int i = 0; i < (1 << n); ++i) ASSERT_LT(std::abs(v[i] - sv[i]), 1e-12);
    EXPECT_NEAR(sv.norm(), 1.0, 1e-10);
  }
}

TEST(Circuit, TextRoundTripAndErrors) {
  std::mt19937_64 rng(12);
  const Circuit c = random_circuit(rng, 4, 40);
  const Circuit back = Circuit::from_text(c.to_text(), 4);
  ASSERT_EQ(back.gates().size(), c.gates().size());
  EXPECT_EQ(back.n_params(), c.n_params());
  EXPECT_EQ(back.to_text(), c.to_text());
  const auto parsed = Circuit::from_text("# comment\nRY 0 p0\nCNOT 0 1\nRZ 1 0.25\nGIVENS 0 1 p1\n", 2);
  EXPECT_EQ(parsed.gates().size(), 4u);
  EXPECT_EQ(parsed.n_params(), 2);
  EXPECT_DOUBLE_EQ(parsed.gates()[2].angle, 0.25);
  EXPECT_THROW(Circuit::from_text("RY 5 p0\n", 2), ParseError);
  EXPECT_THROW(Circuit::from_text("FOO 0\n", 2), ParseError);
  EXPECT_THROW(Circuit::from_text("RY 0 p1\n", 2), std::invalid_argument);  // slots must be contiguous
  EXPECT_THROW(Circuit::from_text("CNOT 0 0\n", 2), ParseError);
}

TEST(Ansatz, RyParameterCountAndPreconditions) {
  EXPECT_EQ(ry_ansatz(8, 8).n_params(), 72);
  EXPECT_EQ(ry_ansatz(4, 2).n_params(), 12);
  EXPECT_THROW(ry_ansatz(8, 0), std::invalid_argument);
  EXPECT_THROW(rsp_ansatz(8, 0), std::invalid_argument);
  EXPECT_THROW(rsp_ansatz(3, 1), std::invalid_argument);
}

TEST(Ansatz, SymmetryPreservingStaysInSector) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3.2, 3.2);
  for (int n : {4, 6, 10}) {
    const Circuit c = rsp_ansatz(n, 5);
    for (int t = 0; t < 10; ++t) {
      std::vector<double> p(c.n_params());
      for (auto& x : p) x = u(rng);
      const Determinant init = hartree_fock_determinant(n / 2, Sector{n / 2, (n / 2) % 2});
      const StateVector sv = simulate(c, p, init);
      for (std::uint64_t i = 0; i < sv.dim(); ++i) {
        if (!in_sector(Determinant(i, n), sector_of(init))) ASSERT_EQ(sv[i], cplx(0.0, 0.0));
        ASSERT_EQ(sv[i].imag(), 0.0);
      }
      EXPECT_NEAR(sv.norm(), 1.0, 1e-10);
    }
  }
}

TEST(Kernels, ParallelMatchesSerialBitForBit) {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> g;
  const int n = 14;
  std::vector<cplx> a(1 << n), b;
  for (auto& x : a) x = {g(rng), g(rng)};
  b = a;
  kernels::Mat2 m1{cplx(0.3, 0.1), cplx(-0.2, 0.5), cplx(0.7, 0.0), cplx(0.1, -0.4)};
  kernels::Mat4 m2;
  for (auto& x : m2) x = {g(rng), g(rng)};
  for (int q = 0; q < n; ++q) {
    kernels::apply_1q(a, q, m1);
    kernels::apply_1q_serial(b, q, m1);
  }
  kernels::apply_2q(a, 3, 11, m2);
  kernels::apply_2q_serial(b, 3, 11, m2);
  kernels::apply_2q(a, 12, 0, m2);
  kernels::apply_2q_serial(b, 12, 0, m2);
  EXPECT_EQ(a, b);

  QubitHamiltonian h(n);
  for (int t = 0; t < 40; ++t) {
    std::string s(n, 'I');
    for (auto& c : s) c = "IXYZ"[rng() % 4];
    h.add_term(g(rng), PauliString::from_string(s));
  }
  h.normalize();
  EXPECT_EQ(kernels::pauli_expectation(a, h), kernels::pauli_expectation_serial(a, h));
}

TEST(StateVector, ExpectationMatchesDense) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> g;
  const int n = 4;
  std::vector<cplx> amps(1 << n);
  for (auto& x : amps) x = {g(rng), g(rng)};
  auto s = StateVector::from_amplitudes(n, amps);
  s.normalize();
  QubitHamiltonian h(n);
  for (int t = 0; t < 10; ++t) {
    std::string str(n, 'I');
    for (auto& c : str) c = "IXYZ"[rng() % 4];
    h.add_term(g(rng), PauliString::from_string(str));
  }
  h.normalize();
  Eigen::VectorXcd v(1 << n);
  for (int i = 0; i < (1 << n); ++i) v[i] = s[i];
  const cplx want = v.dot(h.dense() * v);
  EXPECT_NEAR(expectation(s, h), want.real(), 1e-12);
}

TEST(StateVector, RejectsBadSizes) {
  EXPECT_THROW(StateVector::from_amplitudes(3, std::vector<cplx>(7)), std::invalid_argument);
  EXPECT_THROW(StateVector(31), std::invalid_argument);
}

}  // namespace
}  // namespace qsci
