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

#include <cmath>

#include "noncp/applications.hpp"

namespace noncp {

double anticommutator_defect(const Matrix& p, const Matrix& h) {
  return max_abs(p * h * p.adjoint() + h);
}

DecouplingModel::DecouplingModel(HermitianOperator h_ab, UnitaryOperator p, double g,
                                 double t, BipartiteDims dims)
    : h_(std::move(h_ab)), p_(std::move(p)), g_(g), t_(t), dims_(dims) {
  if (h_.dim() != dims_.total() || p_.dim() != dims_.total()) {
    throw DimensionError("DecouplingModel: operators must act on A (x) B");
  }
  const double defect = anticommutator_defect(p_.matrix(), h_.matrix());
  if (defect > 1e-12 * std::max(1.0, max_abs(h_.matrix()))) {
    throw ContractViolation("DecouplingModel: pulse does not anticommute with H_AB (defect " +
                            std::to_string(defect) + ")");
  }
}

DecouplingModel DecouplingModel::spin_echo(double g, double t) {
  return DecouplingModel(HermitianOperator(tensor(pauli::z(), pauli::x())),
                         UnitaryOperator(tensor(pauli::x(), pauli::identity())), g, t, {2, 2});
}

UnitaryOperator DecouplingModel::evolution() const {
  return unitary_evolve(HermitianOperator(g_ * h_.matrix()), t_);
}

Matrix pulse_sequence_unchecked(const Matrix& h, const Matrix& p, double g, double t,
                                const DensityMatrix& rho, const DensityMatrix& omega,
                                BipartiteDims dims) {
  if (rho.dim() != dims.a || omega.dim() != dims.b || h.rows() != dims.total() ||
      p.rows() != dims.total()) {
    throw DimensionError("pulse_sequence: dimension mismatch");
  }
  const Matrix u = unitary_evolve(HermitianOperator(g * h), t).matrix();
  const Matrix w = p.adjoint() * u * p * u;
  const Matrix tau = w * tensor(rho.matrix(), omega.matrix()) * w.adjoint();
  return hermitian_part(partial_trace(tau, dims, Subsystem::A));
}

Matrix decoupling_sequence(const DecouplingModel& model, const DensityMatrix& rho,
                           const DensityMatrix& omega) {
  return pulse_sequence_unchecked(model.h_ab().matrix(), model.pulse().matrix(), model.g(),
                                  model.t(), rho, omega, model.dims());
}

std::vector<Matrix> extended_basis(Index d) {
  std::vector<Matrix> out{identity(d)};
  for (const auto& s : generator_basis(d)) out.push_back(s);
  return out;
}

Matrix HeisenbergTransfer::reconstruct(Index mu, Index nu) const {
  const auto ea = extended_basis(dims_.a);
  const auto eb = extended_basis(dims_.b);
  Matrix out = Matrix::Zero(dims_.total(), dims_.total());
  for (std::size_t k = 0; k < ea.size(); ++k) {
    for (std::size_t r = 0; r < eb.size(); ++r) {
      const double c = (*this)(mu, nu, static_cast<Index>(k), static_cast<Index>(r));
      if (c != 0.0) out += c * tensor(ea[k], eb[r]);
    }
  }
  return out;
}

HeisenbergTransfer heisenberg_transfer(const UnitaryOperator& u, BipartiteDims dims) {
  if (u.dim() != dims.total()) throw DimensionError("heisenberg_transfer: dimension mismatch");
  const auto ea = extended_basis(dims.a);
  const auto eb = extended_basis(dims.b);
  const Index na = static_cast<Index>(ea.size());
  const Index nb = static_cast<Index>(eb.size());
  // tr(e_k e_k) is d for the identity and 2 for every generator.
  auto norm = [](Index k, Index d) { return k == 0 ? static_cast<double>(d) : 2.0; };

  std::vector<Matrix> products;
  products.reserve(static_cast<std::size_t>(na * nb));
  for (Index k = 0; k < na; ++k) {
    for (Index r = 0; r < nb; ++r) {
      products.push_back(tensor(ea[static_cast<std::size_t>(k)], eb[static_cast<std::size_t>(r)]));
    }
  }
  const Matrix& um = u.matrix();
  RealMatrix s(na * nb, na * nb);
  for (Index col = 0; col < na * nb; ++col) {
    const Matrix img = um * products[static_cast<std::size_t>(col)] * um.adjoint();
    for (Index row = 0; row < na * nb; ++row) {
      const double n = norm(row / nb, dims.a) * norm(row % nb, dims.b);
      s(row, col) = (products[static_cast<std::size_t>(row)] * img).trace().real() / n;
    }
  }
  return HeisenbergTransfer(dims, std::move(s));
}

RecoveryMap recovery_map_choi(const DecouplingModel& model) {
  return recovery_map_choi(model, DensityMatrix::maximally_mixed(model.dims().b));
}

RecoveryMap recovery_map_choi(const DecouplingModel& model, const DensityMatrix& omega) {
  const BipartiteDims dims = model.dims();
  if (omega.dim() != dims.b) throw DimensionError("recovery_map_choi: omega dimension");
  const Index d = dims.a;
  const Matrix u = model.evolution().matrix();
  auto forward = [&](const Matrix& x) {
    return partial_trace(u * tensor(x, omega.matrix()) * u.adjoint(), dims, Subsystem::A);
  };
  const GeneratorBasis basis = generator_basis(d);
  const Index n = basis.size();
  RealMatrix k(n, n);
  for (Index i = 0; i < n; ++i) {
    const Matrix img = forward(basis[i]);
    for (Index j = 0; j < n; ++j) k(j, i) = 0.5 * (basis[j] * img).trace().real();
  }
  const RealVector offset = basis.bloch(forward(identity(d) / static_cast<double>(d)));

  Eigen::JacobiSVD<RealMatrix> svd(k);
  const RealVector sv = svd.singularValues();
  if (sv(n - 1) <= 1e-12 * std::max(1.0, sv(0))) {
    throw RankDeficient("recovery_map_choi: Bloch contraction is not invertible at this t");
  }
  const RealMatrix kinv = k.inverse();
  auto inverse = [&](const Matrix& x) {
    const Complex tr = x.trace();
    // Coefficients x_j = (d/2) tr(s_j X) for a general (not Hermitian) X.
    Eigen::VectorXcd c(n);
    for (Index j = 0; j < n; ++j) {
      c(j) = 0.5 * static_cast<double>(d) * (basis[j] * x).trace();
    }
    const Eigen::VectorXcd a = kinv.cast<Complex>() * (c - offset.cast<Complex>() * tr);
    Matrix out = tr * identity(d);
    for (Index i = 0; i < n; ++i) out += a(i) * basis[i];
    return Matrix(out / static_cast<double>(d));
  };
  ChoiMatrix choi = choi_from_map(inverse, d, d);
  const double lmin = min_eigenvalue(choi.matrix());
  const bool non_cp = lmin < -default_channel_tol(choi);
  return RecoveryMap{std::move(choi), lmin, non_cp, k, offset};
}

double distance_ratio(const ChoiMatrix& phi, const DensityMatrix& rho1,
                      const DensityMatrix& rho2) {
  const double before = trace_distance(rho1, rho2);
  if (before <= 0.0) throw InvalidArgument("distance_ratio: states coincide");
  return trace_norm(hermitian_part(apply_choi(phi, rho1) - apply_choi(phi, rho2))) / before;
}

}  // namespace noncp
