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

#include "qsci/pauli.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qsci/integrals.hpp"

namespace qsci {

namespace {

constexpr std::array<cplx, 4> kIPow = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

inline int popc(std::uint64_t v) { return std::popcount(v); }

}  // namespace

PauliString PauliString::from_string(std::string_view text) {
  const int n = static_cast<int>(text.size());
  if (n > kMaxQubits) throw std::invalid_argument("Pauli string longer than 64 qubits");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (text[n - 1 - q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli letter in '" + std::string(text) + "'");
    }
  }
  return PauliString(x, z, n);
}

PauliString PauliString::single(int n_qubits, int qubit, char letter) {
  std::string s(n_qubits, 'I');
  s[n_qubits - 1 - qubit] = letter;
  return from_string(s);
}

char PauliString::letter(int qubit) const noexcept {
  const bool xb = (x_ >> qubit) & 1u, zb = (z_ >> qubit) & 1u;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliString::to_string() const {
  std::string out(n_qubits_, 'I');
  for (int q = 0; q < n_qubits_; ++q) out[n_qubits_ - 1 - q] = letter(q);
  return out;
}

// Letter form L(x,z) = i^{|x&z|} X^x Z^z, so
// L1 L2 = i^{|x1&z1| + |x2&z2| - |x3&z3| + 2|z1&x2|} L3.
std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b) {
  const std::uint64_t x3 = a.x() ^ b.x(), z3 = a.z() ^ b.z();
  const int k = popc(a.x() & a.z()) + popc(b.x() & b.z()) - popc(x3 & z3) +
                2 * popc(a.z() & b.x());
  return {kIPow[((k % 4) + 4) % 4],
          PauliString(x3, z3, std::max(a.n_qubits(), b.n_qubits()))};
}

bool qubit_wise_commute(const PauliString& a, const PauliString& b) {
  const std::uint64_t both = a.support() & b.support();
  return ((a.x() ^ b.x()) & both) == 0 && ((a.z() ^ b.z()) & both) == 0;
}

cplx pauli_matrix_element(const PauliString& p, const Determinant& x,
                          const Determinant& y) {
  if ((y.bits() ^ p.x()) != x.bits()) return 0.0;
  const int k = popc(p.x() & p.z()) + 2 * popc(y.bits() & p.z());
  return kIPow[k % 4];
}

// ------------------------------------------------------------ QubitHamiltonian

QubitHamiltonian::QubitHamiltonian(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {}

QubitHamiltonian QubitHamiltonian::identity(int n_qubits, cplx coefficient) {
  QubitHamiltonian h(n_qubits);
  h.add_term(coefficient, PauliString(n_qubits));
  return h;
}

void QubitHamiltonian::add_term(cplx coefficient, const PauliString& string) {
  if (string.n_qubits() != n_qubits_)
    throw std::invalid_argument("Pauli string length does not match Hamiltonian");
  terms_.push_back({coefficient, string});
}

namespace {

struct MaskKey {
  std::uint64_t x, z;
  friend bool operator==(const MaskKey&, const MaskKey&) = default;
};
struct MaskHash {
  std::size_t operator()(const MaskKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.x * 0x9E3779B97F4A7C15ull ^ (k.z + 0x632BE59BD9B4E019ull));
  }
};
using TermMap = std::unordered_map<MaskKey, cplx, MaskHash>;

std::vector<PauliTerm> collect(const TermMap& map, int n_qubits) {
  std::vector<PauliTerm> out;
  out.reserve(map.size());
  for (const auto& [key, c] : map)
    if (std::abs(c) >= QubitHamiltonian::kDropTolerance)
      out.push_back({c, PauliString(key.x, key.z, n_qubits)});
  std::sort(out.begin(), out.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  return out;
}

}  // namespace

void QubitHamiltonian::normalize() {
  TermMap map;
  for (const auto& t : terms_) map[{t.string.x(), t.string.z()}] += t.coefficient;
  terms_ = collect(map, n_qubits_);
}

cplx QubitHamiltonian::identity_coefficient() const {
  cplx c = 0.0;
  for (const auto& t : terms_)
    if (t.string.is_identity()) c += t.coefficient;
  return c;
}

double QubitHamiltonian::one_norm(bool include_identity) const {
  double s = 0.0;
  for (const auto& t : terms_)
    if (include_identity || !t.string.is_identity()) s += std::abs(t.coefficient);
  return s;
}

double QubitHamiltonian::max_imaginary() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coefficient.imag()));
  return m;
}

QubitHamiltonian& QubitHamiltonian::operator+=(const QubitHamiltonian& other) {
  if (other.n_qubits_ != n_qubits_)
    throw std::invalid_argument("adding Hamiltonians on different qubit counts");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

QubitHamiltonian& QubitHamiltonian::operator*=(cplx scale) {
  for (auto& t : terms_) t.coefficient *= scale;
  normalize();
  return *this;
}

QubitHamiltonian operator*(const QubitHamiltonian& a, const QubitHamiltonian& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("multiplying Hamiltonians on different qubit counts");
  TermMap map;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) {
      const auto [phase, p] = multiply(s.string, t.string);
      map[{p.x(), p.z()}] += phase * s.coefficient * t.coefficient;
    }
  return QubitHamiltonian(a.n_qubits(), collect(map, a.n_qubits()));
}

cplx QubitHamiltonian::matrix_element(const Determinant& x, const Determinant& y) const {
  cplx sum = 0.0;
  for (const auto& t : terms_) sum += t.coefficient * pauli_matrix_element(t.string, x, y);
  return sum;
}

Eigen::MatrixXcd QubitHamiltonian::dense() const {
  if (n_qubits_ > 14) throw std::invalid_argument("dense(): too many qubits");
  const std::uint64_t dim = std::uint64_t{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_)
    for (std::uint64_t y = 0; y < dim; ++y) {
      const std::uint64_t row = y ^ t.string.x();
      const int k = popc(t.string.x() & t.string.z()) + 2 * popc(y & t.string.z());
      m(row, y) += t.coefficient * kIPow[k % 4];
    }
  return m;
}

namespace {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string QubitHamiltonian::to_text() const {
  std::ostringstream out;
  for (const auto& t : terms_) {
    out << format_double(t.coefficient.real());
    if (t.coefficient.imag() != 0.0) {
      if (t.coefficient.imag() >= 0) out << '+';
      out << format_double(t.coefficient.imag()) << 'j';
    }
    out << ' ' << t.string.to_string() << '\n';
  }
  return out.str();
}

QubitHamiltonian QubitHamiltonian::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliTerm> terms;
  int n = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string coeff, str;
    if (!(fields >> coeff) || coeff[0] == '#') continue;
    if (!(fields >> str))
      throw std::invalid_argument("line " + std::to_string(line_no) + ": missing Pauli string");
    cplx c;
    auto parse = [&](std::string_view tok, double& out) {
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad coefficient");
    };
    if (coeff.back() == 'j') {
      // re(+|-)imj; the sign search skips a leading sign and exponent signs.
      std::size_t split = std::string::npos;
      for (std::size_t i = 1; i + 1 < coeff.size(); ++i)
        if ((coeff[i] == '+' || coeff[i] == '-') && coeff[i - 1] != 'e' && coeff[i - 1] != 'E')
          split = i;
      if (split == std::string::npos)
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad complex coefficient");
      double re = 0, im = 0;
      parse(std::string_view(coeff).substr(0, split), re);
      std::string imag = coeff.substr(split, coeff.size() - split - 1);
      if (imag[0] == '+') imag.erase(0, 1);
      parse(imag, im);
      c = {re, im};
    } else {
      double re = 0;
      parse(coeff, re);
      c = re;
    }
    const auto p = PauliString::from_string(str);
    if (n < 0) n = p.n_qubits();
    else if (n != p.n_qubits())
      throw std::invalid_argument("line " + std::to_string(line_no) + ": inconsistent string length");
    terms.push_back({c, p});
  }
  QubitHamiltonian h(std::max(n, 0), std::move(terms));
  h.normalize();
  return h;
}

// --------------------------------------------------------------- Jordan-Wigner

namespace {

struct Ladder {
  // Two letter-form strings with coefficients.
  std::array<PauliTerm, 2> parts;
};

Ladder ladder(int j, int n_qubits, bool creation) {
  const std::uint64_t zs = (std::uint64_t{1} << j) - 1;
  const std::uint64_t bit = std::uint64_t{1} << j;
  const cplx iy = creation ? cplx{0, -0.5} : cplx{0, 0.5};
  return {{PauliTerm{0.5, PauliString(bit, zs, n_qubits)},
           PauliTerm{iy, PauliString(bit, zs | bit, n_qubits)}}};
}

}  // namespace

QubitHamiltonian jordan_wigner(const MolecularIntegrals& mol) {
  const int nq = mol.n_qubits();
  std::vector<Ladder> create(nq), annihilate(nq);
  for (int j = 0; j < nq; ++j) {
    create[j] = ladder(j, nq, true);
    annihilate[j] = ladder(j, nq, false);
  }
  TermMap map;
  map[{0, 0}] += mol.core_energy;

  auto accumulate = [&](cplx coeff, std::initializer_list<const Ladder*> ops) {
    // Expand the ordered product of two-term sums.
    std::vector<PauliTerm> acc{{coeff, PauliString(nq)}};
    for (const Ladder* op : ops) {
      std::vector<PauliTerm> next;
      next.reserve(acc.size() * 2);
      for (const auto& a : acc)
        for (const auto& b : op->parts) {
          const auto [phase, p] = multiply(a.string, b.string);
          next.push_back({a.coefficient * b.coefficient * phase, p});
        }
      acc.swap(next);
    }
    for (const auto& t : acc) map[{t.string.x(), t.string.z()}] += t.coefficient;
  };

  constexpr double kSkip = 1e-15;
  for (int P = 0; P < nq; ++P)
    for (int Q = 0; Q < nq; ++Q) {
      if ((P & 1) != (Q & 1)) continue;
      const double v = mol.h(P >> 1, Q >> 1);
      if (std::abs(v) < kSkip) continue;
      accumulate(v, {&create[P], &annihilate[Q]});
    }
  // 1/2 sum <PQ|RS> a+_P a+_Q a_S a_R with <PQ|RS> = (PR|QS).
  for (int P = 0; P < nq; ++P)
    for (int Q = 0; Q < nq; ++Q) {
      if (P == Q) continue;
      for (int R = 0; R < nq; ++R) {
        if ((P & 1) != (R & 1)) continue;
        for (int S = 0; S < nq; ++S) {
          if (R == S || (Q & 1) != (S & 1)) continue;
          const double v = mol.eri(P >> 1, R >> 1, Q >> 1, S >> 1);
          if (std::abs(v) < kSkip) continue;
          accumulate(0.5 * v, {&create[P], &create[Q], &annihilate[S], &annihilate[R]});
        }
      }
    }
  return QubitHamiltonian(nq, collect(map, nq));
}

SymmetryOperators symmetry_operators(int n_orbitals) {
  const int nq = 2 * n_orbitals;
  SymmetryOperators ops{QubitHamiltonian(nq), QubitHamiltonian(nq)};
  ops.number.add_term(0.5 * nq, PauliString(nq));
  for (int q = 0; q < nq; ++q) {
    const auto z = PauliString::single(nq, q, 'Z');
    ops.number.add_term(-0.5, z);
    ops.sz.add_term(q % 2 == 0 ? -0.25 : 0.25, z);
  }
  ops.number.normalize();
  ops.sz.normalize();
  return ops;
}

}  // namespace qsci
