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

#include "qsci/circuit.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qsci/error.hpp"
#include "qsci/kernels.hpp"

namespace qsci {

namespace {

struct GateInfo {
  GateKind kind;
  const char* name;
  bool two_qubit;
  bool angle;
};

constexpr std::array<GateInfo, 9> kGates = {{
    {GateKind::RX, "RX", false, true},
    {GateKind::RY, "RY", false, true},
    {GateKind::RZ, "RZ", false, true},
    {GateKind::H, "H", false, false},
    {GateKind::X, "X", false, false},
    {GateKind::SDG, "SDG", false, false},
    {GateKind::CNOT, "CNOT", true, false},
    {GateKind::CZ, "CZ", true, false},
    {GateKind::GIVENS, "GIVENS", true, true},
}};

const GateInfo& info(GateKind k) { return kGates[static_cast<int>(k)]; }

}  // namespace

const char* gate_name(GateKind k) { return info(k).name; }
bool gate_is_two_qubit(GateKind k) { return info(k).two_qubit; }
bool gate_takes_angle(GateKind k) { return info(k).angle; }

void Circuit::validate(const Gate& g) const {
  const bool two = gate_is_two_qubit(g.kind);
  if (g.q0 < 0 || g.q0 >= n_qubits_ || (two && (g.q1 < 0 || g.q1 >= n_qubits_)))
    throw std::invalid_argument(std::string("gate ") + gate_name(g.kind) + ": qubit index out of range");
  if (two && g.q0 == g.q1)
    throw std::invalid_argument(std::string("gate ") + gate_name(g.kind) + ": repeated qubit");
  if (!two && g.q1 >= 0)
    throw std::invalid_argument(std::string("gate ") + gate_name(g.kind) + " takes one qubit");
}

void Circuit::add(GateKind kind, int q0, int q1) {
  if (gate_takes_angle(kind))
    throw std::invalid_argument(std::string("gate ") + gate_name(kind) + " needs an angle");
  Gate g{kind, q0, q1};
  validate(g);
  gates_.push_back(g);
}

void Circuit::add_fixed(GateKind kind, int q0, int q1, double angle) {
  Gate g{kind, q0, q1, -1, angle};
  validate(g);
  gates_.push_back(g);
}

void Circuit::add_parametrized(GateKind kind, int q0, int q1) {
  if (!gate_takes_angle(kind))
    throw std::invalid_argument(std::string("gate ") + gate_name(kind) + " has no parameter");
  Gate g{kind, q0, q1, n_params_};
  validate(g);
  gates_.push_back(g);
  ++n_params_;
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "# qubits " << n_qubits_ << '\n';
  for (const auto& g : gates_) {
    out << gate_name(g.kind) << ' ' << g.q0;
    if (g.two_qubit()) out << ' ' << g.q1;
    if (g.parametrized()) {
      out << " p" << g.slot;
    } else if (gate_takes_angle(g.kind)) {
      std::array<char, 64> buf{};
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), g.angle);
      (void)ec;
      out << ' ' << std::string_view(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
  return out.str();
}

Circuit Circuit::from_text(std::string_view text, int n_qubits) {
  Circuit c(n_qubits);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int max_slot = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    const GateInfo* gi = nullptr;
    for (const auto& k : kGates)
      if (name == k.name) gi = &k;
    if (!gi) throw ParseError(line_no, "unknown gate '" + name + "'");
    Gate g{gi->kind};
    if (!(fields >> g.q0)) throw ParseError(line_no, "missing qubit index");
    if (gi->two_qubit && !(fields >> g.q1)) throw ParseError(line_no, "missing second qubit index");
    if (gi->angle) {
      std::string arg;
      if (!(fields >> arg)) throw ParseError(line_no, "missing angle or parameter slot");
      if (arg[0] == 'p') {
        auto [ptr, ec] = std::from_chars(arg.data() + 1, arg.data() + arg.size(), g.slot);
        if (ec != std::errc() || ptr != arg.data() + arg.size() || g.slot < 0)
          throw ParseError(line_no, "bad parameter slot '" + arg + "'");
        max_slot = std::max(max_slot, g.slot);
      } else {
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), g.angle);
        if (ec != std::errc() || ptr != arg.data() + arg.size())
          throw ParseError(line_no, "bad angle '" + arg + "'");
      }
    }
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing field '" + extra + "'");
    try {
      c.validate(g);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    c.gates_.push_back(g);
  }
  // Slots must be contiguous from 0.
  std::vector<bool> seen(max_slot + 1, false);
  for (const auto& g : c.gates_)
    if (g.slot >= 0) seen[g.slot] = true;
  for (int s = 0; s <= max_slot; ++s)
    if (!seen[s]) throw std::invalid_argument("circuit parameter slots are not contiguous (p" + std::to_string(s) + " unused)");
  c.n_params_ = max_slot + 1;
  return c;
}

void apply_gate(StateVector& s, const Gate& g, std::span<const double> params) {
  auto a = s.amplitudes();
  const double theta = g.parametrized() ? params[g.slot] : g.angle;
  const double c = std::cos(0.5 * theta), sn = std::sin(0.5 * theta);
  const cplx I{0, 1};
  switch (g.kind) {
    case GateKind::RX: kernels::apply_1q(a, g.q0, {c, -I * sn, -I * sn, c}); break;
    case GateKind::RY: kernels::apply_1q(a, g.q0, {c, -sn, sn, c}); break;
    case GateKind::RZ:
      kernels::apply_1q(a, g.q0, {std::exp(-0.5 * I * theta), 0.0, 0.0, std::exp(0.5 * I * theta)});
      break;
    case GateKind::H: {
      const double r = M_SQRT1_2;
      kernels::apply_1q(a, g.q0, {r, r, r, -r});
      break;
    }
    case GateKind::X: kernels::apply_x(a, g.q0); break;
    case GateKind::SDG: kernels::apply_1q(a, g.q0, {1.0, 0.0, 0.0, -I}); break;
    case GateKind::CNOT: kernels::apply_cnot(a, g.q0, g.q1); break;
    case GateKind::CZ: kernels::apply_cz(a, g.q0, g.q1); break;
    case GateKind::GIVENS: {
      // local index b(q0) + 2 b(q1): |01> is q0 set, |10> is q1 set
      kernels::Mat4 m{};
      m[0] = 1.0;
      m[5] = c, m[6] = -sn;
      m[9] = sn, m[10] = c;
      m[15] = 1.0;
      kernels::apply_2q(a, g.q0, g.q1, m);
      break;
    }
  }
}

StateVector simulate(const Circuit& c, std::span<const double> params,
                     const Determinant& initial) {
  if (static_cast<int>(params.size()) != c.n_params())
    throw std::invalid_argument("simulate: circuit has " + std::to_string(c.n_params()) +
                                " parameters, got " + std::to_string(params.size()));
  if (initial.n_qubits() != c.n_qubits())
    throw std::invalid_argument("simulate: initial state width differs from circuit width");
  StateVector s = StateVector::basis(initial);
  for (const auto& g : c.gates()) apply_gate(s, g, params);
  return s;
}

Circuit ry_ansatz(int n_qubits, int depth) {
  if (n_qubits < 2) throw std::invalid_argument("ry_ansatz: need at least 2 qubits");
  if (depth < 1) throw std::invalid_argument("ry_ansatz: depth must be at least 1");
  Circuit c(n_qubits);
  for (int q = 0; q < n_qubits; ++q) c.add_parametrized(GateKind::RY, q);
  for (int d = 0; d < depth; ++d) {
    for (int q = 0; q + 1 < n_qubits; ++q) c.add(GateKind::CZ, q, q + 1);
    for (int q = 0; q < n_qubits; ++q) c.add_parametrized(GateKind::RY, q);
  }
  return c;
}

Circuit rsp_ansatz(int n_qubits, int depth) {
  if (n_qubits < 4 || n_qubits % 2 != 0)
    throw std::invalid_argument("rsp_ansatz: need an even qubit count of at least 4 (two spatial orbitals)");
  if (depth < 1) throw std::invalid_argument("rsp_ansatz: depth must be at least 1");
  const int n_orb = n_qubits / 2;
  Circuit c(n_qubits);
  for (int d = 0; d < depth; ++d) {
    // With two orbitals there is only one pair; use it on every layer.
    const int start = n_orb == 2 ? 0 : d % 2;
    for (int p = start; p + 1 < n_orb; p += 2) {
      c.add_parametrized(GateKind::GIVENS, 2 * p, 2 * p + 2);
      c.add_parametrized(GateKind::GIVENS, 2 * p + 1, 2 * p + 3);
    }
    for (int p = 0; p < n_orb; ++p) c.add(GateKind::CZ, 2 * p, 2 * p + 1);
  }
  return c;
}

}  // namespace qsci
