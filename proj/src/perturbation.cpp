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

#include "noncp/perturbation.hpp"

#include <algorithm>
#include <cmath>

namespace noncp {

namespace {

// Operators (1 (x) <mu|) W (1 (x) |nu>) sqrt(p_nu) in the eigenbasis of omega.
KrausSet env_kraus(const Matrix& w, const DensityMatrix& omega, BipartiteDims dims) {
  const EigenSystem es = eig_hermitian(omega.matrix());
  KrausSet out;
  for (Index nu = 0; nu < dims.b; ++nu) {
    const double p = std::max(0.0, es.values(nu));
    if (p == 0.0) continue;
    for (Index mu = 0; mu < dims.b; ++mu) {
      Matrix m = Matrix::Zero(dims.a, dims.a);
      for (Index a = 0; a < dims.a; ++a) {
        for (Index c = 0; c < dims.a; ++c) {
          Complex acc = 0.0;
          for (Index x = 0; x < dims.b; ++x) {
            for (Index y = 0; y < dims.b; ++y) {
              acc += std::conj(es.vectors(x, mu)) * w(a * dims.b + x, c * dims.b + y) *
                     es.vectors(y, nu);
            }
          }
          m(a, c) = std::sqrt(p) * acc;
        }
      }
      out.weights.push_back(1.0);
      out.operators.push_back(std::move(m));
    }
  }
  return out;
}

void check_environment(const DensityMatrix& omega) {
  const RealVector ev = eigenvalues_hermitian(omega.matrix());
  if (ev(0) <= 1e-10) {
    throw ContractViolation("WeakCouplingModel: omega0 must have full rank");
  }
  for (Index i = 1; i < ev.size(); ++i) {
    if (ev(i) - ev(i - 1) <= 1e-10) {
      throw ContractViolation("WeakCouplingModel: omega0 must be non-degenerate");
    }
  }
}

bool is_product_assignment(const AssignmentSpec& spec, const DensityMatrix& omega0) {
  const AssignmentSpec ref = AssignmentSpec::product(spec.d_a, omega0);
  constexpr double tol = 1e-12;
  if ((spec.b - ref.b).cwiseAbs().maxCoeff() > tol) return false;
  if (spec.B.size() > 0 && spec.B.cwiseAbs().maxCoeff() > tol) return false;
  if (spec.g.size() > 0 && spec.g.cwiseAbs().maxCoeff() > tol) return false;
  for (std::size_t k = 0; k < ref.G.size(); ++k) {
    if ((spec.G[k] - ref.G[k]).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace

WeakCouplingModel::WeakCouplingModel(HermitianOperator h_a, HermitianOperator h_int,
                                     double eta, DensityMatrix omega0,
                                     PerturbedAssignment assignment, double t)
    : h_a_(std::move(h_a)),
      h_int_(std::move(h_int)),
      eta_(eta),
      omega0_(std::move(omega0)),
      assignment_(std::move(assignment)),
      t_(t) {
  const Index da = h_a_.dim();
  const Index db = omega0_.dim();
  if (h_int_.dim() != da * db) {
    throw DimensionError("WeakCouplingModel: H_int must act on A (x) B");
  }
  assignment_.base.validate();
  if (assignment_.base.d_a != da || assignment_.base.d_b != db) {
    throw DimensionError("WeakCouplingModel: assignment dimensions disagree");
  }
  check_environment(omega0_);
}

UnitaryOperator WeakCouplingModel::joint_unitary(double eta) const {
  const Matrix h = tensor(h_a_.matrix(), identity(omega0_.dim())) + eta * h_int_.matrix();
  return unitary_evolve(HermitianOperator(h), t_);
}

AssignmentSpec WeakCouplingTemplate::linear_part() const {
  if (base.d_a == 0) return AssignmentSpec::product(d_a, DensityMatrix(omega0));
  return base;
}

WeakCouplingModel WeakCouplingTemplate::scaled(double epsilon, double eta) const {
  PerturbedAssignment pa{linear_part(), epsilon, beta1, gamma1};
  return WeakCouplingModel(HermitianOperator(h_a), HermitianOperator(h_int), eta,
                           DensityMatrix(omega0), std::move(pa), t);
}

WeakCouplingTemplate random_weak_coupling_template(Index d_a, Index d_b, Rng& rng) {
  if (d_a < 2 || d_b < 2) throw InvalidArgument("random_weak_coupling_template: d < 2");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GeneratorBasis sa = generator_basis(d_a);
  const GeneratorBasis sb = generator_basis(d_b);
  const Index na = sa.size();
  const Index nb = sb.size();

  WeakCouplingTemplate tmpl;
  tmpl.d_a = d_a;
  tmpl.d_b = d_b;
  tmpl.h_a = Matrix::Zero(d_a, d_a);
  for (const auto& s : sa) tmpl.h_a += u(rng) * s;
  tmpl.h_int = Matrix::Zero(d_a * d_b, d_a * d_b);
  for (const auto& s : sa) {
    for (const auto& r : sb) tmpl.h_int += u(rng) * tensor(s, r);
  }

  // Full rank with distinct eigenvalues; redraw in the measure-zero bad case.
  for (;;) {
    RealVector b0(nb);
    for (auto& v : b0) v = u(rng);
    b0 *= 0.3 * std::abs(u(rng)) / std::max(b0.norm(), 1e-300);
    Matrix w = sb.from_bloch(b0);
    const RealVector ev = eigenvalues_hermitian(w);
    bool ok = ev(0) > 1e-3;
    for (Index i = 1; i < ev.size(); ++i) ok = ok && ev(i) - ev(i - 1) > 1e-3;
    if (ok) {
      tmpl.omega0 = w;
      break;
    }
  }

  // beta1_j = alpha^T Q_j alpha, gamma1_ij = alpha^T R_ij alpha.
  std::vector<RealMatrix> q(static_cast<std::size_t>(nb), RealMatrix(na, na));
  for (auto& m : q) {
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  }
  std::vector<RealMatrix> r(static_cast<std::size_t>(na * nb), RealMatrix(na, na));
  for (auto& m : r) {
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  }
  tmpl.beta1 = [q](const RealVector& alpha) {
    RealVector out(static_cast<Index>(q.size()));
    for (std::size_t j = 0; j < q.size(); ++j) {
      out(static_cast<Index>(j)) = alpha.dot(q[j] * alpha);
    }
    return out;
  };
  tmpl.gamma1 = [r, na, nb](const RealVector& alpha) {
    RealMatrix out(na, nb);
    for (Index i = 0; i < na; ++i) {
      for (Index j = 0; j < nb; ++j) {
        out(i, j) = alpha.dot(r[static_cast<std::size_t>(i * nb + j)] * alpha);
      }
    }
    return out;
  };
  return tmpl;
}

EvolutionOutput evolve_exact(const WeakCouplingModel& model, const DensityMatrix& rho) {
  const AssignmentOutput tau = apply_assignment(model.assignment(), rho.matrix());
  const Matrix u = model.joint_unitary(model.eta()).matrix();
  EvolutionOutput out;
  out.rho = hermitian_part(partial_trace(u * tau.tau * u.adjoint(), model.dims(), Subsystem::A));
  out.tau_positive = tau.positive;
  out.tau_min_eigenvalue = tau.min_eigenvalue;
  return out;
}

Matrix coupling_derivative(const WeakCouplingModel& model, double h) {
  return (model.joint_unitary(h).matrix() - model.joint_unitary(-h).matrix()) / (2.0 * h);
}

KrausSet first_order_kraus(const WeakCouplingModel& model) {
  const Matrix w = model.joint_unitary(0.0).matrix() + model.eta() * coupling_derivative(model);
  return env_kraus(w, model.omega0(), model.dims());
}

Matrix first_order_prediction(const WeakCouplingModel& model, const DensityMatrix& rho) {
  return apply_kraus(first_order_kraus(model), rho.matrix());
}

std::vector<DensityMatrix> interior_probes(Index d, double c) {
  const GeneratorBasis basis = generator_basis(d);
  std::vector<DensityMatrix> out;
  out.push_back(DensityMatrix::maximally_mixed(d));
  for (const auto& s : basis) {
    out.emplace_back((identity(d) + c * s) / static_cast<double>(d));
    out.emplace_back((identity(d) - c * s) / static_cast<double>(d));
  }
  return out;
}

NoncpMetrics noncp_magnitude(const WeakCouplingModel& model,
                             const std::vector<DensityMatrix>& probes) {
  const BipartiteDims dims = model.dims();
  const Index d = dims.a;
  const Index k = static_cast<Index>(probes.size());
  Matrix in(d * d, k);
  Matrix out(d * d, k);
  NoncpMetrics m;
  const GeneratorBasis basis = generator_basis(d);
  const Matrix u = model.joint_unitary(model.eta()).matrix();
  for (Index j = 0; j < k; ++j) {
    const DensityMatrix& p = probes[static_cast<std::size_t>(j)];
    if (p.dim() != d) throw DimensionError("noncp_magnitude: probe dimension");
    const AssignmentOutput tau = apply_assignment(model.assignment(), p.matrix());
    m.tau_positive = m.tau_positive && tau.positive;
    const Matrix r = hermitian_part(partial_trace(u * tau.tau * u.adjoint(), dims, Subsystem::A));
    in.col(j) = vec_rows(p.matrix());
    out.col(j) = vec_rows(r);

    const Matrix rho = partial_trace(tau.tau, dims, Subsystem::A);
    const Matrix omega = partial_trace(tau.tau, dims, Subsystem::B);
    const Matrix corr = tau.tau - tensor(rho, omega);
    const Matrix x = partial_trace(u * corr * u.adjoint(), dims, Subsystem::A);
    m.shift = std::max(m.shift, basis.coefficients(hermitian_part(x)).norm());
  }

  Eigen::JacobiSVD<Matrix> svd(in);
  const RealVector sv = svd.singularValues();
  if (sv.size() < d * d || sv(d * d - 1) <= 1e-10 * sv(0)) {
    throw RankDeficient("noncp_magnitude: probes do not span the operator space");
  }
  // Least squares S In = Out, i.e. In^T S^T = Out^T.
  Eigen::JacobiSVD<Matrix> svd_t(in.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix super = svd_t.solve(out.transpose()).transpose();

  for (Index j = 0; j < k; ++j) {
    const Matrix pred = unvec_rows(super * in.col(j), d, d);
    const Matrix res = hermitian_part(pred - unvec_rows(out.col(j), d, d));
    m.nonlin = std::max(m.nonlin, trace_norm(res));
  }
  const ChoiMatrix fit = choi_from_superoperator(super, d, d);
  m.choi_fit = fit.matrix();
  m.noncp = std::max(0.0, -min_eigenvalue(fit.matrix()));
  return m;
}

std::string to_string(ScalingStatus s) {
  switch (s) {
    case ScalingStatus::fitted:
      return "fitted";
    case ScalingStatus::machine_precision:
      return "CP to machine precision";
    case ScalingStatus::not_applicable:
      return "not applicable";
  }
  return "unknown";
}

std::vector<double> geometric_grid(double hi, double lo, int n) {
  if (n < 2 || hi <= 0.0 || lo <= 0.0) throw InvalidArgument("geometric_grid: bad range");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = std::log(lo / hi) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = hi * std::exp(step * i);
  out.back() = lo;
  return out;
}

ScalingResult scaling_exponent(const WeakCouplingTemplate& tmpl,
                               const std::vector<double>& s_values) {
  if (s_values.size() < 4) throw InvalidArgument("scaling_exponent: need at least 4 scales");
  const auto [lo, hi] = std::minmax_element(s_values.begin(), s_values.end());
  if (*lo <= 0.0 || *hi / *lo < 100.0 * (1.0 - 1e-12)) {
    throw InvalidArgument("scaling_exponent: scales must be positive and span 2 decades");
  }

  ScalingResult result;
  const DensityMatrix omega0(tmpl.omega0);
  if (!is_product_assignment(tmpl.linear_part(), omega0)) {
    result.status = ScalingStatus::not_applicable;
    result.message =
        "linear part of the assignment is not rho (x) omega0; its correlations do not "
        "vanish with eps";
    return result;
  }

  const std::vector<DensityMatrix> probes = interior_probes(tmpl.d_a);
  for (double s : s_values) {
    double eps = s;
    for (int shrink = 0;; ++shrink) {
      const WeakCouplingModel model = tmpl.scaled(eps, s);
      bool positive = true;
      for (const auto& p : probes) {
        positive = positive && apply_assignment(model.assignment(), p.matrix()).positive;
      }
      if (positive || shrink == 60) break;
      eps *= 0.5;
    }
    const WeakCouplingModel model = tmpl.scaled(eps, s);
    result.scan.points.push_back({s, eps, s, noncp_magnitude(model, probes)});
  }

  bool at_floor = true;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& pt : result.scan.points) {
    const double total = pt.metrics.noncp + pt.metrics.nonlin;
    at_floor = at_floor && total <= 1e-11;
    xs.push_back(std::log(pt.s));
    ys.push_back(std::log(total + kScalingFloor));
  }
  if (at_floor) {
    result.status = ScalingStatus::machine_precision;
    result.message = "all metrics at the numerical floor";
    return result;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  result.slope = sxy / sxx;
  result.status = ScalingStatus::fitted;
  return result;
}

}  // namespace noncp
