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

#include "noncp/fano.hpp"

#include <cmath>

namespace noncp {

namespace {

void require_unit_trace_hermitian(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || !is_hermitian(m, kHermiticityTol)) {
    throw ContractViolation(std::string(what) + ": operator is not Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > kTraceTol) {
    throw ContractViolation(std::string(what) + ": operator does not have unit trace");
  }
}

Index num_generators(Index d) { return d * d - 1; }

}  // namespace

FanoState to_fano(const Matrix& tau, BipartiteDims dims) {
  if (tau.rows() != dims.total() || tau.cols() != dims.total()) {
    throw DimensionError("to_fano: operator size does not match d_A * d_B");
  }
  require_unit_trace_hermitian(tau, "to_fano");
  const auto sa = generator_basis(dims.a);
  const auto sb = generator_basis(dims.b);
  const double da = static_cast<double>(dims.a), db = static_cast<double>(dims.b);

  FanoState f{dims.a, dims.b, RealVector(sa.size()), RealVector(sb.size()),
              RealMatrix(sa.size(), sb.size())};
  // Partial traces make the single-subsystem projections cheap.
  const Matrix rho = partial_trace(tau, dims, Subsystem::A);
  const Matrix omega = partial_trace(tau, dims, Subsystem::B);
  f.alpha = sa.bloch(rho);
  f.beta = sb.bloch(omega);
  for (Index i = 0; i < sa.size(); ++i) {
    for (Index j = 0; j < sb.size(); ++j) {
      f.gamma(i, j) = (tensor(sa[i], sb[j]) * tau).trace().real() * da * db / 4.0;
    }
  }
  return f;
}

Matrix from_fano(const FanoState& f) {
  const auto sa = generator_basis(f.d_a);
  const auto sb = generator_basis(f.d_b);
  if (f.alpha.size() != sa.size() || f.beta.size() != sb.size() || f.gamma.rows() != sa.size() ||
      f.gamma.cols() != sb.size()) {
    throw DimensionError("from_fano: coefficient shapes do not match dimensions");
  }
  const Matrix ia = identity(f.d_a), ib = identity(f.d_b);
  Matrix tau = identity(f.d_a * f.d_b);
  tau += tensor(sa.combine(f.alpha), ib);
  tau += tensor(ia, sb.combine(f.beta));
  for (Index i = 0; i < sa.size(); ++i) {
    tau += tensor(sa[i], sb.combine(f.gamma.row(i).transpose()));
  }
  return tau / static_cast<double>(f.d_a * f.d_b);
}

CorrelationTensor correlation_tensor(const FanoState& f) {
  return {(f.gamma - f.alpha * f.beta.transpose()) / static_cast<double>(f.d_a * f.d_b)};
}

AssignmentSpec AssignmentSpec::zeros(Index d_a, Index d_b) {
  const Index na = num_generators(d_a), nb = num_generators(d_b);
  AssignmentSpec s;
  s.d_a = d_a;
  s.d_b = d_b;
  s.b = RealVector::Zero(nb);
  s.B = RealMatrix::Zero(nb, na);
  s.g = RealMatrix::Zero(na, nb);
  s.G.assign(static_cast<std::size_t>(na), RealMatrix::Zero(na, nb));
  return s;
}

AssignmentSpec AssignmentSpec::product(Index d_a, const DensityMatrix& omega0) {
  AssignmentSpec s = zeros(d_a, omega0.dim());
  s.b = generator_basis(omega0.dim()).bloch(omega0.matrix());
  for (Index k = 0; k < num_generators(d_a); ++k) {
    s.G[static_cast<std::size_t>(k)].row(k) = s.b.transpose();
  }
  return s;
}

void AssignmentSpec::validate() const {
  if (d_a < 2 || d_b < 2) throw InvalidArgument("AssignmentSpec: dimensions must be >= 2");
  const Index na = num_generators(d_a), nb = num_generators(d_b);
  bool ok = b.size() == nb && B.rows() == nb && B.cols() == na && g.rows() == na &&
            g.cols() == nb && static_cast<Index>(G.size()) == na;
  for (const auto& slice : G) ok = ok && slice.rows() == na && slice.cols() == nb;
  if (!ok) throw DimensionError("AssignmentSpec: coefficient shapes inconsistent");
}

RealVector AssignmentSpec::beta(const RealVector& alpha) const { return b + B * alpha; }

RealMatrix AssignmentSpec::gamma(const RealVector& alpha) const {
  RealMatrix out = g;
  for (std::size_t k = 0; k < G.size(); ++k) out += G[k] * alpha[static_cast<Index>(k)];
  return out;
}

namespace {

AssignmentOutput finish(FanoState f) {
  AssignmentOutput out;
  out.tau = from_fano(f);
  out.min_eigenvalue = min_eigenvalue(out.tau);
  out.positive = out.min_eigenvalue >= -kPositivityTol;
  return out;
}

}  // namespace

AssignmentOutput apply_assignment(const AssignmentSpec& spec, const Matrix& rho) {
  spec.validate();
  if (rho.rows() != spec.d_a) throw DimensionError("apply_assignment: wrong system dimension");
  require_unit_trace_hermitian(rho, "apply_assignment");
  const RealVector alpha = generator_basis(spec.d_a).bloch(rho);
  return finish({spec.d_a, spec.d_b, alpha, spec.beta(alpha), spec.gamma(alpha)});
}

AssignmentOutput apply_assignment(const PerturbedAssignment& spec, const Matrix& rho) {
  const auto& base = spec.base;
  base.validate();
  if (rho.rows() != base.d_a) throw DimensionError("apply_assignment: wrong system dimension");
  require_unit_trace_hermitian(rho, "apply_assignment");
  const RealVector alpha = generator_basis(base.d_a).bloch(rho);
  RealVector beta = base.beta(alpha);
  RealMatrix gamma = base.gamma(alpha);
  if (spec.epsilon != 0.0) {
    if (spec.beta1) {
      RealVector b1 = spec.beta1(alpha);
      if (b1.size() != beta.size()) throw DimensionError("apply_assignment: beta1 shape");
      beta += spec.epsilon * b1;
    }
    if (spec.gamma1) {
      RealMatrix g1 = spec.gamma1(alpha);
      if (g1.rows() != gamma.rows() || g1.cols() != gamma.cols()) {
        throw DimensionError("apply_assignment: gamma1 shape");
      }
      gamma += spec.epsilon * g1;
    }
  }
  return finish({base.d_a, base.d_b, alpha, beta, gamma});
}

Matrix toy_extension(const RealVector& alpha, double a) {
  if (alpha.size() != 3) throw DimensionError("toy_extension: alpha must have 3 components");
  if (alpha.norm() > 1.0 + 1e-12) throw InvalidArgument("toy_extension: |alpha| > 1");
  FanoState f{2, 2, alpha, RealVector::Zero(3), a * RealMatrix::Identity(3, 3)};
  return from_fano(f);
}

AssignmentSpec toy_assignment_spec(double a) {
  AssignmentSpec s = AssignmentSpec::zeros(2, 2);
  s.g = a * RealMatrix::Identity(3, 3);
  return s;
}

double toy_positivity_max(double alpha_norm) {
  if (!(alpha_norm >= 0.0 && alpha_norm <= 1.0)) {
    throw InvalidArgument("toy_positivity_max: |alpha| must lie in [0, 1]");
  }
  return (std::sqrt(4.0 - 3.0 * alpha_norm * alpha_norm) - 1.0) / 3.0;
}

double toy_domain_radius(double a) {
  if (!(a >= 0.0 && a <= 1.0 / 3.0)) {
    throw InvalidArgument("toy_domain_radius: a must lie in [0, 1/3]");
  }
  return std::sqrt((1.0 + a) * (1.0 - 3.0 * a));
}

EffectiveAssignment effective_assignment_from_unitary(const UnitaryOperator& v,
                                                      const DensityMatrix& omega0) {
  const Index db = omega0.dim();
  if (v.dim() % db != 0) throw DimensionError("effective_assignment_from_unitary: dims");
  const BipartiteDims dims{v.dim() / db, db};
  const auto sa = generator_basis(dims.a);
  const auto sb = generator_basis(dims.b);
  const Index na = sa.size();

  const ChoiMatrix system = choi_from_kraus(dilation_kraus(v, omega0, dims));
  const Matrix s = superoperator(system);
  Eigen::JacobiSVD<Matrix> svd(s);
  const RealVector sv = svd.singularValues();

  EffectiveAssignment out;
  out.spec = AssignmentSpec::zeros(dims.a, dims.b);
  out.min_singular_value = sv[sv.size() - 1];
  out.degenerate = out.min_singular_value < 1e-10 * sv[0];

  auto propagate = [&](const Matrix& rho0) {
    Matrix tau = v.matrix() * tensor(rho0, omega0.matrix()) * v.matrix().adjoint();
    return to_fano(hermitian_part(tau), dims);
  };

  if (!out.degenerate) {
    // Pull each Bloch-basis operator back through the inverse system map; the
    // induced assignment is then affine in alpha and read off exactly.
    const Eigen::PartialPivLU<Matrix> lu(s);
    auto preimage = [&](const RealVector& alpha) {
      Vector x = lu.solve(vec_rows(sa.from_bloch(alpha)));
      return hermitian_part(unvec_rows(x, dims.a, dims.a));
    };
    const FanoState f0 = propagate(preimage(RealVector::Zero(na)));
    out.spec.b = f0.beta;
    out.spec.g = f0.gamma;
    for (Index k = 0; k < na; ++k) {
      const FanoState fk = propagate(preimage(RealVector::Unit(na, k)));
      out.spec.B.col(k) = fk.beta - f0.beta;
      out.spec.G[static_cast<std::size_t>(k)] = fk.gamma - f0.gamma;
    }
    return out;
  }

  // Not one-to-one: fit beta = b + B alpha, gamma = g + G alpha over the images
  // of the Bloch basis {0, +e_k, -e_k}.
  std::vector<RealVector> alphas;
  alphas.push_back(RealVector::Zero(na));
  for (Index k = 0; k < na; ++k) {
    alphas.push_back(RealVector::Unit(na, k));
    alphas.push_back(-RealVector::Unit(na, k));
  }
  const Index n = static_cast<Index>(alphas.size());
  const Index nb = sb.size();
  RealMatrix design(n, 1 + na);
  RealMatrix targets(n, nb + na * nb);
  for (Index r = 0; r < n; ++r) {
    const FanoState f = propagate(sa.from_bloch(alphas[static_cast<std::size_t>(r)]));
    design(r, 0) = 1.0;
    design.row(r).tail(na) = f.alpha.transpose();
    targets.row(r).head(nb) = f.beta.transpose();
    for (Index i = 0; i < na; ++i) targets.row(r).segment(nb + i * nb, nb) = f.gamma.row(i);
  }
  const RealMatrix coef = design.completeOrthogonalDecomposition().solve(targets);
  out.spec.b = coef.row(0).head(nb).transpose();
  out.spec.B = coef.block(1, 0, na, nb).transpose();
  for (Index i = 0; i < na; ++i) out.spec.g.row(i) = coef.row(0).segment(nb + i * nb, nb);
  for (Index k = 0; k < na; ++k) {
    auto& slice = out.spec.G[static_cast<std::size_t>(k)];
    for (Index i = 0; i < na; ++i) slice.row(i) = coef.row(1 + k).segment(nb + i * nb, nb);
  }
  return out;
}

Matrix swap_gadget_extension(const DensityMatrix& rho,
                             const std::function<Matrix(const DensityMatrix&)>& f) {
  Matrix img = f(rho);
  try {
    DensityMatrix checked(img);
    return tensor(rho.matrix(), checked.matrix());
  } catch (const ContractViolation& e) {
    throw ContractViolation(std::string("swap_gadget_extension: f(rho) invalid: ") + e.what());
  }
}

}  // namespace noncp
