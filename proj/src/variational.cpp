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

#include "qsci/variational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "qsci/error.hpp"
#include "qsci/rng.hpp"

namespace qsci {

Objective::Objective(ObjectiveSpec spec, Circuit circuit, Determinant initial)
    : spec_(std::move(spec)), circuit_(std::move(circuit)), initial_(initial) {
  const int nq = circuit_.n_qubits();
  if (spec_.hamiltonian.n_qubits() != nq)
    throw std::invalid_argument("objective: Hamiltonian and circuit widths differ");
  if (initial_.n_qubits() != nq)
    throw std::invalid_argument("objective: initial determinant and circuit widths differ");
  effective_ = spec_.hamiltonian;
  for (const auto& p : spec_.penalties) {
    if (p.op.n_qubits() != nq) throw std::invalid_argument("objective: penalty operator width differs");
    if (p.weight < 0.0) throw std::invalid_argument("objective: penalty weight must be non-negative");
    const QubitHamiltonian shifted = p.op + QubitHamiltonian::identity(nq, -p.target);
    effective_ += (shifted * shifted) * cplx{p.weight};
  }
  for (const auto& o : spec_.overlaps) {
    if (o.state.n_qubits() != nq) throw std::invalid_argument("objective: overlap state width differs");
    if (o.weight < 0.0) throw std::invalid_argument("objective: overlap weight must be non-negative");
  }
}

StateVector Objective::state(std::span<const double> params) const {
  return simulate(circuit_, params, initial_);
}

double Objective::value(const StateVector& s) const {
  double v = expectation(s, effective_);
  for (const auto& o : spec_.overlaps) v += o.weight * std::norm(o.state.inner(s));
  return v;
}

double Objective::operator()(std::span<const double> params) const { return value(state(params)); }

double Objective::energy(std::span<const double> params) const {
  return expectation(state(params), spec_.hamiltonian);
}

std::string OptimizationTrace::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,value";
  const std::size_t np = entries.empty() ? 0 : entries.front().params.size();
  for (std::size_t k = 0; k < np; ++k) out << ",param_" << k;
  out << '\n';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << i << ',' << entries[i].value;
    for (double p : entries[i].params) out << ',' << p;
    out << '\n';
  }
  return out.str();
}

namespace {

double checked(const ScalarFunction& f, std::span<const double> x, std::size_t& evals) {
  const double v = f(x);
  ++evals;
  if (!std::isfinite(v)) throw NumericalError("objective returned a non-finite value");
  return v;
}

Eigen::VectorXd gradient(const ScalarFunction& f, const Eigen::VectorXd& x, double h,
                         std::size_t& evals) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd g(n);
  bool bad = false;
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (Eigen::Index k = 0; k < n; ++k) {
    std::vector<double> xp(x.data(), x.data() + n), xm = xp;
    xp[k] += h;
    xm[k] -= h;
    const double fp = f(xp), fm = f(xm);
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
#pragma omp atomic write
      bad = true;
    }
    g[k] = (fp - fm) / (2.0 * h);
  }
  evals += 2 * static_cast<std::size_t>(n);
  if (bad) throw NumericalError("objective returned a non-finite value");
  return g;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

OptimizationTrace minimize(const ScalarFunction& f, std::vector<double> x0,
                           const BfgsSettings& settings) {
  for (double v : x0)
    if (!std::isfinite(v)) throw std::invalid_argument("minimize: non-finite initial parameter");
  OptimizationTrace trace;
  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(x0.data(), n);
  double fx = checked(f, x0, trace.evaluations);
  trace.entries.push_back({x0, fx});
  if (settings.max_iterations <= 0 || n == 0) {
    trace.converged = n == 0;
    return trace;
  }

  Eigen::VectorXd g = gradient(f, x, settings.fd_step, trace.evaluations);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;

  for (int it = 0; it < settings.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < settings.gradient_tolerance) {
      trace.converged = true;
      break;
    }
    Eigen::VectorXd d = -hinv * g;
    double slope = g.dot(d);
    if (slope >= 0.0) {
      hinv.setIdentity();
      d = -g;
      slope = g.dot(d);
    }
    // First trial step moves no parameter by more than one radian.
    double alpha = std::min(1.0, 1.0 / d.lpNorm<Eigen::Infinity>());
    Eigen::VectorXd xn;
    double fn = fx;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      xn = x + alpha * d;
      fn = checked(f, to_std(xn), trace.evaluations);
      if (fn <= fx + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // No descent along d within resolution: treat as converged at x.
      trace.converged = true;
      break;
    }
    const Eigen::VectorXd gn = gradient(f, xn, settings.fd_step, trace.evaluations);
    const Eigen::VectorXd s = xn - x, y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * y;
      // (I - rho s y^T) H (I - rho y s^T) + rho s s^T, expanded
      hinv += rho * rho * y.dot(hy) * s * s.transpose() + rho * s * s.transpose() -
              rho * (hy * s.transpose() + s * hy.transpose());
    }
    const double gain = fx - fn;
    x = xn;
    fx = fn;
    g = gn;
    trace.entries.push_back({to_std(x), fx});
    if (gain < settings.value_tolerance) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

std::vector<double> initial_parameters(int n, std::uint64_t seed) {
  Stream rng(seed, 0, 3);
  std::vector<double> out(n);
  for (auto& v : out) v = -0.1 + 0.2 * rng.uniform();
  return out;
}

std::vector<VariationalState> prepare_vqd_chain(const ObjectiveSpec& base, const Circuit& circuit,
                                                const Determinant& initial, int n_states,
                                                double overlap_weight,
                                                const BfgsSettings& settings, std::uint64_t seed) {
  if (n_states < 1) throw std::invalid_argument("prepare_vqd_chain: n_states must be at least 1");
  if (overlap_weight < 0.0) throw std::invalid_argument("prepare_vqd_chain: overlap weight must be non-negative");
  std::vector<VariationalState> out;
  for (int k = 0; k < n_states; ++k) {
    ObjectiveSpec spec = base;
    for (const auto& prev : out) spec.overlaps.push_back({prev.state, overlap_weight});
    const Objective obj(std::move(spec), circuit, initial);
    auto trace = minimize(std::cref(obj), initial_parameters(circuit.n_params(), stream_seed(seed, k, 3)),
                          settings);
    auto params = trace.final().params;
    StateVector s = obj.state(params);
    const double e = expectation(s, base.hamiltonian);
    out.push_back({std::move(params), std::move(s), e, std::move(trace)});
  }
  return out;
}

}  // namespace qsci
