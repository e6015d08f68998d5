// Copyright 2026 The noncp Authors
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

#include "noncp/spectral_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace noncp {

MinEigenvalueObjective::MinEigenvalueObjective(Matrix base, std::vector<Matrix> directions)
    : base_(std::move(base)), directions_(std::move(directions)) {
  if (!is_hermitian(base_, 1e-9)) throw ContractViolation("MinEigenvalueObjective: base not Hermitian");
  base_ = hermitian_part(base_);
  for (auto& a : directions_) {
    if (a.rows() != base_.rows() || a.cols() != base_.cols()) {
      throw DimensionError("MinEigenvalueObjective: direction shape mismatch");
    }
    if (!is_hermitian(a, 1e-9)) throw ContractViolation("MinEigenvalueObjective: direction not Hermitian");
    a = hermitian_part(a);
  }
  scale_ = std::max(1e-3, eigenvalues_hermitian(base_).cwiseAbs().maxCoeff());
}

Matrix MinEigenvalueObjective::pencil(const RealVector& x) const {
  if (x.size() != dimension()) throw DimensionError("MinEigenvalueObjective: wrong variable count");
  Matrix m = base_;
  for (Index i = 0; i < dimension(); ++i) m -= x[i] * directions_[static_cast<std::size_t>(i)];
  return m;
}

double MinEigenvalueObjective::value(const RealVector& x) const {
  return min_eigenvalue(pencil(x));
}

RealVector MinEigenvalueObjective::subgradient(const RealVector& x, double tie_tol) const {
  const auto es = eig_hermitian(pencil(x));
  const double lmin = es.values[0];
  RealVector g = RealVector::Zero(dimension());
  Index count = 0;
  for (Index k = 0; k < es.values.size() && es.values[k] <= lmin + tie_tol; ++k) {
    const auto v = es.vectors.col(k);
    for (Index i = 0; i < dimension(); ++i) {
      g[i] -= (v.adjoint() * directions_[static_cast<std::size_t>(i)] * v)(0, 0).real();
    }
    ++count;
  }
  return g / static_cast<double>(count);
}

double MinEigenvalueObjective::smoothed(const RealVector& x, double mu, RealVector* grad) const {
  const auto es = eig_hermitian(pencil(x));
  const double lmin = es.values[0];
  RealVector w(es.values.size());
  for (Index k = 0; k < w.size(); ++k) w[k] = std::exp(-(es.values[k] - lmin) / mu);
  const double z = w.sum();
  if (grad) {
    grad->setZero(dimension());
    for (Index k = 0; k < w.size(); ++k) {
      const double p = w[k] / z;
      if (p < 1e-18) continue;
      const auto v = es.vectors.col(k);
      for (Index i = 0; i < dimension(); ++i) {
        (*grad)[i] -= p * (v.adjoint() * directions_[static_cast<std::size_t>(i)] * v)(0, 0).real();
      }
    }
  }
  return lmin - mu * std::log(z);
}

namespace {

struct StageOutcome {
  RealVector x;
  int iterations = 0;
  bool converged = false;
};

// BFGS ascent on the smoothed objective at fixed mu.
StageOutcome bfgs_stage(const MinEigenvalueObjective& obj, RealVector x, double mu,
                        const SpectralOptConfig& cfg) {
  const Index n = obj.dimension();
  StageOutcome out;
  RealVector g;
  double f = obj.smoothed(x, mu, &g);
  RealMatrix h = RealMatrix::Identity(n, n) * mu;
  bool scaled = false;
  for (int it = 0; it < cfg.max_iterations_per_stage; ++it) {
    out.iterations = it + 1;
    if (g.norm() <= cfg.gradient_tol) {
      out.converged = true;
      break;
    }
    RealVector dir = h * g;
    if (dir.dot(g) <= 0) {
      h = RealMatrix::Identity(n, n) * mu;
      dir = h * g;
    }
    // Backtracking Armijo search on the ascent direction.
    double step = 1.0;
    RealVector xn, gn;
    double fn = -std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * dir;
      fn = obj.smoothed(xn, mu, &gn);
      if (fn >= f + 1e-4 * step * g.dot(dir)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || !(fn > f)) {
      // No representable improvement left at this smoothing level.
      out.converged = fn >= f - 1e-15 * (1.0 + std::abs(f)) || g.norm() <= 1e3 * cfg.gradient_tol;
      if (!accepted && !scaled) {
        h = RealMatrix::Identity(n, n) * mu;
        scaled = true;
        continue;
      }
      break;
    }
    const RealVector s = xn - x;
    const RealVector y = g - gn;  // gradient of the minimized function -f_mu
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      if (!scaled) {
        h = RealMatrix::Identity(n, n) * (sy / y.squaredNorm());
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const RealMatrix i_n = RealMatrix::Identity(n, n);
      h = (i_n - rho * s * y.transpose()) * h * (i_n - rho * y * s.transpose()) +
          rho * s * s.transpose();
    }
    x = xn;
    f = fn;
    g = gn;
  }
  out.x = x;
  return out;
}

struct SimplexOutcome {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead maximization of the exact objective.
SimplexOutcome nelder_mead(const MinEigenvalueObjective& obj, const RealVector& x0, double step,
                           int max_iterations) {
  const Index n = obj.dimension();
  std::vector<RealVector> pts;
  std::vector<double> vals;
  pts.push_back(x0);
  for (Index i = 0; i < n; ++i) pts.push_back(x0 + step * RealVector::Unit(n, i));
  for (const auto& p : pts) vals.push_back(-obj.value(p));  // minimize -f

  // Adaptive coefficients for higher dimensions.
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 1.0 / (2.0 * dn),
               delta = 1.0 - 1.0 / dn;
  SimplexOutcome out;
  std::vector<std::size_t> order(pts.size());
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    double diam = 0.0;
    for (const auto& p : pts) diam = std::max(diam, (p - pts[best]).lpNorm<Eigen::Infinity>());
    if (vals[worst] - vals[best] <= 1e-15 * (1.0 + std::abs(vals[best])) && diam <= 1e-12) {
      out.converged = true;
      break;
    }
    RealVector centroid = RealVector::Zero(n);
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != worst) centroid += pts[k];
    centroid /= dn;
    const RealVector xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = -obj.value(xr);
    if (fr < vals[best]) {
      const RealVector xe = centroid + beta * (xr - centroid);
      const double fe = -obj.value(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + gamma * (xr - centroid))
                                  : RealVector(centroid - gamma * (centroid - pts[worst]));
    const double fc = -obj.value(xc);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k == best) continue;
      pts[k] = pts[best] + delta * (pts[k] - pts[best]);
      vals[k] = -obj.value(pts[k]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = pts[best];
  out.value = -vals[best];
  return out;
}

}  // namespace

SpectralOptResult maximize_min_eigenvalue(const MinEigenvalueObjective& objective,
                                          const RealVector& x0, const SpectralOptConfig& config) {
  if (x0.size() != objective.dimension()) {
    throw DimensionError("maximize_min_eigenvalue: starting point has the wrong length");
  }
  SpectralOptResult res;
  res.x = x0;
  res.value = objective.value(x0);
  if (objective.dimension() == 0) {
    res.converged = true;
    return res;
  }

  const double scale = objective.spectral_scale();
  RealVector x = x0;
  bool last_converged = false;
  for (double mu = config.mu_start * scale; mu >= config.mu_end * scale * 0.999;
       mu *= config.mu_factor) {
    const auto stage = bfgs_stage(objective, x, mu, config);
    res.iterations += stage.iterations;
    last_converged = stage.converged;
    x = stage.x;
    const double v = objective.value(x);
    if (v >= res.value) {
      res.value = v;
      res.x = x;
    }
  }
  res.converged = last_converged;
  res.message = last_converged ? "smoothed BFGS converged" : "smoothed BFGS stalled";

  if (config.simplex_fallback && !res.converged) {
    const double step = std::max(1e-6, 1e-3 * scale);
    const auto nm = nelder_mead(objective, res.x, step, config.simplex_max_iterations);
    res.iterations += nm.iterations;
    res.used_simplex = true;
    if (nm.value >= res.value) {
      res.value = nm.value;
      res.x = nm.x;
    }
    res.converged = nm.converged;
    res.message = nm.converged ? "simplex fallback converged" : "simplex fallback hit iteration limit";
  }
  return res;
}

}  // namespace noncp
