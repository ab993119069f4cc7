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

#include "qsci/integrals.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsci/error.hpp"
#include "qsci/kernels.hpp"

namespace qsci {

MolecularIntegrals::MolecularIntegrals(int n_orbitals, int n_electrons,
                                       int ms2)
    : n_orbitals(n_orbitals), n_electrons(n_electrons), ms2(ms2) {
  if (n_orbitals < 1) throw std::invalid_argument("n_orbitals must be >= 1");
  if (2 * n_orbitals > kMaxQubits)
    throw std::invalid_argument("at most 32 spatial orbitals are supported");
  const std::size_t n = n_orbitals;
  one_body.assign(n * n, 0.0);
  two_body.assign(n * n * n * n, 0.0);
}

void MolecularIntegrals::set_h(int p, int q, double value) {
  one_body[p * n_orbitals + q] = value;
  one_body[q * n_orbitals + p] = value;
}

void MolecularIntegrals::set_eri(int p, int q, int r, int s, double value) {
  const std::size_t n = n_orbitals;
  auto at = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d)
      -> double& { return two_body[((a * n + b) * n + c) * n + d]; };
  at(p, q, r, s) = value;
  at(q, p, r, s) = value;
  at(p, q, s, r) = value;
  at(q, p, s, r) = value;
  at(r, s, p, q) = value;
  at(s, r, p, q) = value;
  at(r, s, q, p) = value;
  at(s, r, q, p) = value;
}

double MolecularIntegrals::symmetry_violation() const {
  double worst = 0.0;
  const int n = n_orbitals;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) worst = std::max(worst, std::abs(h(p, q) - h(q, p)));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = eri(p, q, r, s);
          for (double w : {eri(q, p, r, s), eri(p, q, s, r), eri(r, s, p, q),
                           eri(s, r, q, p)})
            worst = std::max(worst, std::abs(v - w));
        }
  return worst;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Header {
  std::optional<int> norb, nelec, ms2;
};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Pulls KEY=value pairs out of the namelist. Only NORB, NELEC and MS2 are
// interpreted; list-valued keys such as ORBSYM are skipped.
void scan_namelist(std::string_view body, Header& header, std::size_t line) {
  std::string text = upper(body);
  for (char& c : text)
    if (c == ',' || c == '\t' || c == '\n' || c == '\r') c = ' ';
  std::size_t pos = 0;
  while ((pos = text.find('=', pos)) != std::string::npos) {
    std::size_t k_end = pos;
    while (k_end > 0 && text[k_end - 1] == ' ') --k_end;
    std::size_t k_begin = k_end;
    while (k_begin > 0 && std::isalnum(static_cast<unsigned char>(text[k_begin - 1])))
      --k_begin;
    const std::string key = text.substr(k_begin, k_end - k_begin);
    std::size_t v = pos + 1;
    while (v < text.size() && text[v] == ' ') ++v;
    std::size_t v_end = v;
    while (v_end < text.size() && text[v_end] != ' ') ++v_end;
    const std::string value = text.substr(v, v_end - v);
    auto as_int = [&](std::optional<int>& slot) {
      int out = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw ParseError(line, "header field " + key + " is not an integer: '" + value + "'");
      slot = out;
    };
    if (key == "NORB") as_int(header.norb);
    else if (key == "NELEC") as_int(header.nelec);
    else if (key == "MS2") as_int(header.ms2);
    pos = v_end;
  }
}

bool parse_double(std::string_view token, double& out) {
  std::string t(token);
  // Fortran writers sometimes emit D exponents.
  for (auto& c : t)
    if (c == 'D' || c == 'd') c = 'E';
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

}  // namespace

MolecularIntegrals parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  Header header;
  std::string namelist;
  bool in_header = false, header_done = false;
  std::size_t header_line = 0;
  while (!header_done && std::getline(in, line)) {
    ++line_no;
    const std::string up = upper(line);
    if (!in_header) {
      const auto start = up.find("&FCI");
      if (start == std::string::npos) {
        if (up.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError(line_no, "expected '&FCI' namelist header");
      }
      in_header = true;
      header_line = line_no;
      namelist += line.substr(start + 4);
    } else {
      namelist += ' ';
      namelist += line;
    }
    const auto end = upper(namelist).find("&END");
    const auto slash = namelist.find('/');
    if (end != std::string::npos || slash != std::string::npos) {
      namelist.resize(std::min(end, slash));
      header_done = true;
    }
  }
  if (!header_done) throw ParseError(line_no, "unterminated &FCI namelist");
  scan_namelist(namelist, header, header_line);
  if (!header.norb) throw ParseError(header_line, "missing NORB in header");
  if (!header.nelec) throw ParseError(header_line, "missing NELEC in header");
  if (!header.ms2) throw ParseError(header_line, "missing MS2 in header");
  if (*header.norb < 1) throw ParseError(header_line, "NORB must be positive");
  if (*header.nelec < 0 || *header.nelec > 2 * *header.norb)
    throw ParseError(header_line, "NELEC out of range for NORB");

  MolecularIntegrals mol(*header.norb, *header.nelec, *header.ms2);
  const int n = mol.n_orbitals;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string value_tok;
    if (!(fields >> value_tok)) continue;
    double value = 0.0;
    if (!parse_double(value_tok, value))
      throw ParseError(line_no, "non-numeric value field '" + value_tok + "'");
    std::array<int, 4> idx{};
    for (int k = 0; k < 4; ++k) {
      std::string tok;
      if (!(fields >> tok)) throw ParseError(line_no, "expected four orbital indices");
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), idx[k]);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "non-integer orbital index '" + tok + "'");
      if (idx[k] < 0 || idx[k] > n)
        throw ParseError(line_no, "orbital index " + tok + " exceeds NORB=" + std::to_string(n));
    }
    const auto [p, q, r, s] = idx;
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      mol.core_energy = value;
    } else if (r == 0 && s == 0) {
      if (p == 0 || q == 0) throw ParseError(line_no, "one-body record with zero index");
      mol.set_h(p - 1, q - 1, value);
    } else if (p == 0 || q == 0 || r == 0 || s == 0) {
      // Orbital energies (i 0 0 0) carry no Hamiltonian information.
      if (!(q == 0 && r == 0 && s == 0))
        throw ParseError(line_no, "malformed index pattern");
    } else {
      mol.set_eri(p - 1, q - 1, r - 1, s - 1, value);
    }
  }
  return mol;
}

MolecularIntegrals read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_fcidump(buffer.str());
}

namespace {

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string write_fcidump(const MolecularIntegrals& mol) {
  std::ostringstream out;
  const int n = mol.n_orbitals;
  out << " &FCI NORB=" << n << ",NELEC=" << mol.n_electrons << ",MS2=" << mol.ms2
      << ",\n  ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = mol.eri(p, q, r, s);
          if (v == 0.0) continue;
          out << shortest(v) << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' '
              << s + 1 << '\n';
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      const double v = mol.h(p, q);
      if (v == 0.0) continue;
      out << shortest(v) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    }
  out << shortest(mol.core_energy) << " 0 0 0 0\n";
  return out.str();
}

nlohmann::json to_json(const MolecularIntegrals& mol) {
  nlohmann::json j;
  j["n_orbitals"] = mol.n_orbitals;
  j["n_electrons"] = mol.n_electrons;
  j["ms2"] = mol.ms2;
  j["core_energy"] = mol.core_energy;
  const int n = mol.n_orbitals;
  auto one = nlohmann::json::array();
  for (int p = 0; p < n; ++p) {
    auto row = nlohmann::json::array();
    for (int q = 0; q < n; ++q) row.push_back(mol.h(p, q));
    one.push_back(row);
  }
  j["one_body"] = one;
  auto two = nlohmann::json::array();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = mol.eri(p, q, r, s);
          if (v != 0.0) two.push_back({p, q, r, s, v});
        }
  j["two_body"] = two;
  return j;
}

// ------------------------------------------------------------ active space

MolecularIntegrals freeze_core(const MolecularIntegrals& mol,
                               std::span<const int> frozen,
                               std::span<const int> active) {
  const int n = mol.n_orbitals;
  std::set<int> seen;
  for (int list = 0; list < 2; ++list)
    for (int p : list == 0 ? frozen : active) {
      if (p < 0 || p >= n)
        throw std::out_of_range("orbital index " + std::to_string(p) + " out of range");
      if (!seen.insert(p).second)
        throw std::invalid_argument("orbital " + std::to_string(p) +
                                    " listed twice in frozen/active");
    }
  if (active.empty())
    throw std::invalid_argument("active space is empty; no active electrons representable");
  const int n_active_electrons = mol.n_electrons - 2 * static_cast<int>(frozen.size());
  if (n_active_electrons < 0)
    throw std::invalid_argument("freezing " + std::to_string(frozen.size()) +
                                " orbitals leaves a negative electron count");
  if (n_active_electrons > 2 * static_cast<int>(active.size()))
    throw std::invalid_argument("active space too small for the remaining electrons");

  const int na = static_cast<int>(active.size());
  MolecularIntegrals out(na, n_active_electrons, mol.ms2);

  double core = mol.core_energy;
  for (int c : frozen) {
    core += 2.0 * mol.h(c, c);
    for (int d : frozen) core += 2.0 * mol.eri(c, c, d, d) - mol.eri(c, d, d, c);
  }
  out.core_energy = core;

  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const int p = active[i], q = active[j];
      double v = mol.h(p, q);
      for (int c : frozen) v += 2.0 * mol.eri(p, q, c, c) - mol.eri(p, c, c, q);
      out.one_body[i * na + j] = v;
    }
  const std::size_t m = na;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < na; ++l)
          out.two_body[((i * m + j) * m + k) * m + l] =
              mol.eri(active[i], active[j], active[k], active[l]);
  return out;
}

// ------------------------------------------------------------------ CASCI

CasciResult casci_dense(const MolecularIntegrals& mol, const Sector& sector) {
  CasciResult result;
  result.basis = sector_determinants(mol.n_orbitals, sector);
  if (result.basis.empty()) throw std::invalid_argument("sector is empty");
  if (result.basis.size() > kDenseCasciCap)
    throw std::invalid_argument("sector dimension " + std::to_string(result.basis.size()) +
                                " exceeds the dense CASCI cap");
  Eigen::MatrixXd h = kernels::subspace_matrix(result.basis, mol);
  // Diagonalize around the mean diagonal; keeps absolute round-off small
  // when the core energy dominates.
  const double shift = h.diagonal().mean();
  h.diagonal().array() -= shift;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("CASCI eigensolver failed");
  result.eigenvalues = solver.eigenvalues().array() + shift;
  result.eigenvectors = solver.eigenvectors();
  return result;
}

}  // namespace qsci
