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

#include "noncp/affine_dynamics.hpp"

#include <cmath>
#include <numbers>

namespace noncp {

Matrix correlation_shift(const UnitaryOperator& u, const CorrelationTensor& corr,
                         BipartiteDims dims) {
  const auto sa = generator_basis(dims.a);
  const auto sb = generator_basis(dims.b);
  if (corr.gamma.rows() != sa.size() || corr.gamma.cols() != sb.size()) {
    throw DimensionError("correlation_shift: correlation tensor has the wrong shape");
  }
  Matrix c = Matrix::Zero(dims.total(), dims.total());
  for (Index i = 0; i < sa.size(); ++i) {
    c += tensor(sa[i], sb.combine(corr.gamma.row(i).transpose()));
  }
  return partial_trace(u.matrix() * c * u.matrix().adjoint(), dims, Subsystem::A);
}

AffineMapForm reduced_affine_form(const UnitaryOperator& u, const DensityMatrix& omega,
                                  const CorrelationTensor& corr) {
  const Index db = omega.dim();
  if (u.dim() % db != 0) throw DimensionError("reduced_affine_form: dimension mismatch");
  const BipartiteDims dims{u.dim() / db, db};
  AffineMapForm f;
  f.kraus = dilation_kraus(u, omega, dims);
  f.xi = generator_basis(dims.a).coefficients(correlation_shift(u, corr, dims));
  return f;
}

UnitaryOperator example_unitary(double theta) {
  Matrix u = Matrix::Identity(4, 4);
  const double c = std::cos(theta), s = std::sin(theta);
  u(1, 1) = c;
  u(1, 2) = s;
  u(2, 1) = -s;
  u(2, 2) = c;
  return UnitaryOperator(u);
}

RealVector example_xi(double a, double theta) {
  RealVector xi = RealVector::Zero(3);
  xi[2] = a * std::sin(2.0 * theta) / 2.0;
  return xi;
}

CorrelationTensor toy_correlation(double a) { return {a / 4.0 * RealMatrix::Identity(3, 3)}; }

ChoiMatrix toy_dynamical_matrix(double a, double theta) {
  const auto form = reduced_affine_form(example_unitary(theta), DensityMatrix::maximally_mixed(2),
                                        toy_correlation(a));
  return choi_of_affine(form);
}

std::vector<SpectrumRow> spectrum_sweep(double a, const std::vector<double>& thetas) {
  // At alpha = 0 the toy extension is positive for -1 <= a <= 1/3.
  if (!(a >= -1.0 && a <= 1.0 / 3.0)) {
    throw InvalidArgument("spectrum_sweep: a outside the positivity domain [-1, 1/3]");
  }
  std::vector<SpectrumRow> rows;
  rows.reserve(thetas.size());
  const auto omega = DensityMatrix::maximally_mixed(2);
  const auto corr = toy_correlation(a);
  for (double theta : thetas) {
    const auto form = reduced_affine_form(example_unitary(theta), omega, corr);
    rows.push_back({theta, eigenvalues_hermitian(choi_of_affine(form).matrix()), form.xi[2]});
  }
  return rows;
}

std::vector<double> theta_grid(int points) {
  if (points < 2) throw InvalidArgument("theta_grid: need at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    grid[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / (points - 1);
  }
  return grid;
}

CorrelationTensor quadratic_gamma(const AssignmentSpec& spec, const RealVector& alpha) {
  spec.validate();
  const Index na = spec.g.rows();
  if (alpha.size() != na) throw DimensionError("quadratic_gamma: alpha has the wrong length");
  RealMatrix out = spec.g;
  for (Index k = 0; k < na; ++k) {
    RealMatrix slice = spec.G[static_cast<std::size_t>(k)];
    slice.row(k) -= spec.b.transpose();
    out += slice * alpha[k];
  }
  // - sum_k B_jk alpha_i alpha_k = - alpha_i (B alpha)_j
  out -= alpha * (spec.B * alpha).transpose();
  return {out / static_cast<double>(spec.d_a * spec.d_b)};
}

PptResult ppt_check(const Matrix& tau, BipartiteDims dims) {
  if (tau.rows() != dims.total() || !is_hermitian(tau)) {
    throw ContractViolation("ppt_check: operator must be Hermitian on d_A * d_B");
  }
  if (std::abs(tau.trace().real() - 1.0) > kTraceTol) {
    throw ContractViolation("ppt_check: operator must have unit trace");
  }
  PptResult r;
  r.min_pt_eigenvalue = min_eigenvalue(partial_transpose(tau, dims, Subsystem::B));
  r.ppt = r.min_pt_eigenvalue >= -kPositivityTol;
  r.decides_separability = dims.total() <= 6;
  return r;
}

}  // namespace noncp
