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

#include "noncp/choi.hpp"

#include <cmath>

namespace noncp {

ChoiMatrix::ChoiMatrix(const Matrix& d, Index d_in, Index d_out) : d_in_(d_in), d_out_(d_out) {
  if (d_in < 1 || d_out < 1) throw InvalidArgument("ChoiMatrix: dimensions must be positive");
  const Index n = d_in * d_out;
  if (d.rows() != n || d.cols() != n) {
    throw DimensionError("ChoiMatrix: expected " + std::to_string(n) + "x" + std::to_string(n) +
                         " matrix");
  }
  if (!is_hermitian(d, 1e-9)) throw ContractViolation("ChoiMatrix: matrix is not Hermitian");
  d_ = hermitian_part(d);
}

KrausSet KrausSet::from_operators(std::vector<Matrix> ops) {
  KrausSet k;
  k.weights.assign(ops.size(), 1.0);
  k.operators = std::move(ops);
  return k;
}

Matrix apply_kraus(const KrausSet& k, const Matrix& rho) {
  if (k.size() == 0) throw InvalidArgument("apply_kraus: empty Kraus set");
  if (rho.rows() != k.d_in() || rho.cols() != k.d_in()) {
    throw DimensionError("apply_kraus: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(k.d_out(), k.d_out());
  for (std::size_t a = 0; a < k.size(); ++a) {
    out += k.weights[a] * k.operators[a] * rho * k.operators[a].adjoint();
  }
  return out;
}

Matrix apply_choi(const ChoiMatrix& d, const Matrix& rho) {
  const Index din = d.d_in(), dout = d.d_out();
  if (rho.rows() != din || rho.cols() != din) {
    throw DimensionError("apply_choi: input is " + std::to_string(rho.rows()) +
                         "-dimensional, map expects " + std::to_string(din));
  }
  Matrix out = Matrix::Zero(dout, dout);
  const Matrix& dm = d.matrix();
  for (Index m = 0; m < dout; ++m)
    for (Index n = 0; n < dout; ++n) {
      Complex acc = 0.0;
      for (Index s = 0; s < din; ++s)
        for (Index t = 0; t < din; ++t) acc += dm(m * din + s, n * din + t) * rho(s, t);
      out(m, n) = acc;
    }
  return out;
}

ChoiMatrix choi_from_kraus(const KrausSet& k) {
  if (k.size() == 0) throw InvalidArgument("choi_from_kraus: empty Kraus set");
  const Index din = k.d_in(), dout = k.d_out();
  Matrix d = Matrix::Zero(din * dout, din * dout);
  for (std::size_t a = 0; a < k.size(); ++a) {
    if (k.operators[a].rows() != dout || k.operators[a].cols() != din) {
      throw DimensionError("choi_from_kraus: inconsistent operator shapes");
    }
    Vector v = vec_rows(k.operators[a]);
    d += k.weights[a] * v * v.adjoint();
  }
  return ChoiMatrix(d, din, dout);
}

KrausSet kraus_from_choi(const ChoiMatrix& d, double drop_tol) {
  auto es = eig_hermitian(d.matrix());
  KrausSet k;
  for (Index a = 0; a < es.values.size(); ++a) {
    if (std::abs(es.values[a]) < drop_tol) continue;
    k.weights.push_back(es.values[a]);
    k.operators.push_back(unvec_rows(es.vectors.col(a), d.d_out(), d.d_in()));
  }
  return k;
}

double default_channel_tol(const ChoiMatrix& d) {
  return 1e-9 * std::max(1.0, std::abs(d.matrix().trace().real()));
}

Matrix output_partial_trace(const ChoiMatrix& d) {
  const Index din = d.d_in(), dout = d.d_out();
  Matrix out = Matrix::Zero(din, din);
  for (Index s = 0; s < din; ++s)
    for (Index t = 0; t < din; ++t)
      for (Index m = 0; m < dout; ++m) out(s, t) += d.at(m, s, m, t);
  return out;
}

Matrix input_partial_trace(const ChoiMatrix& d) {
  const Index din = d.d_in(), dout = d.d_out();
  Matrix out = Matrix::Zero(dout, dout);
  for (Index m = 0; m < dout; ++m)
    for (Index n = 0; n < dout; ++n)
      for (Index s = 0; s < din; ++s) out(m, n) += d.at(m, s, n, s);
  return out;
}

ChannelProperties channel_properties(const ChoiMatrix& d, std::optional<double> tol) {
  const double eps = tol.value_or(default_channel_tol(d));
  ChannelProperties p;
  p.trace_preserving = max_abs(output_partial_trace(d) - identity(d.d_in())) <= eps;
  const double ratio = static_cast<double>(d.d_in()) / static_cast<double>(d.d_out());
  p.unital = max_abs(input_partial_trace(d) - ratio * identity(d.d_out())) <= eps;
  p.min_eigenvalue = min_eigenvalue(d.matrix());
  p.cp = p.min_eigenvalue >= -eps;
  return p;
}

DifferenceForm difference_form(const ChoiMatrix& d) {
  DifferenceForm f;
  KrausSet all = kraus_from_choi(d);
  for (std::size_t a = 0; a < all.size(); ++a) {
    KrausSet& part = all.weights[a] > 0 ? f.plus : f.minus;
    part.weights.push_back(std::abs(all.weights[a]));
    part.operators.push_back(all.operators[a]);
  }
  return f;
}

ChoiMatrix choi_from_difference(const DifferenceForm& f) {
  if (f.plus.size() == 0 && f.minus.size() == 0) {
    throw InvalidArgument("choi_from_difference: both parts empty");
  }
  const KrausSet& any = f.plus.size() ? f.plus : f.minus;
  Matrix d = Matrix::Zero(any.d_in() * any.d_out(), any.d_in() * any.d_out());
  if (f.plus.size()) d += choi_from_kraus(f.plus).matrix();
  if (f.minus.size()) d -= choi_from_kraus(f.minus).matrix();
  return ChoiMatrix(d, any.d_in(), any.d_out());
}

Matrix apply_affine_form(const AffineMapForm& f, const Matrix& rho) {
  const auto basis = generator_basis(f.kraus.d_out());
  return apply_kraus(f.kraus, rho) + basis.combine(f.xi) * rho.trace();
}

ChoiMatrix choi_of_affine(const AffineMapForm& f) {
  ChoiMatrix base = choi_from_kraus(f.kraus);
  const auto basis = generator_basis(f.kraus.d_out());
  Matrix d = base.matrix() + tensor(basis.combine(f.xi), identity(f.kraus.d_in()));
  return ChoiMatrix(d, base.d_in(), base.d_out());
}

ChoiMatrix choi_from_map(const std::function<Matrix(const Matrix&)>& map, Index d_in,
                         Index d_out) {
  Matrix d = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (Index s = 0; s < d_in; ++s)
    for (Index t = 0; t < d_in; ++t) {
      Matrix unit = Matrix::Zero(d_in, d_in);
      unit(s, t) = 1.0;
      Matrix img = map(unit);
      if (img.rows() != d_out || img.cols() != d_out) {
        throw DimensionError("choi_from_map: map output has wrong dimension");
      }
      for (Index m = 0; m < d_out; ++m)
        for (Index n = 0; n < d_out; ++n) d(m * d_in + s, n * d_in + t) = img(m, n);
    }
  return ChoiMatrix(d, d_in, d_out);
}

Matrix superoperator(const ChoiMatrix& d) {
  const Index din = d.d_in(), dout = d.d_out();
  Matrix s(dout * dout, din * din);
  for (Index m = 0; m < dout; ++m)
    for (Index n = 0; n < dout; ++n)
      for (Index a = 0; a < din; ++a)
        for (Index b = 0; b < din; ++b) s(m * dout + n, a * din + b) = d.at(m, a, n, b);
  return s;
}

ChoiMatrix choi_from_superoperator(const Matrix& s, Index d_in, Index d_out) {
  if (s.rows() != d_out * d_out || s.cols() != d_in * d_in) {
    throw DimensionError("choi_from_superoperator: shape mismatch");
  }
  Matrix d(d_in * d_out, d_in * d_out);
  for (Index m = 0; m < d_out; ++m)
    for (Index n = 0; n < d_out; ++n)
      for (Index a = 0; a < d_in; ++a)
        for (Index b = 0; b < d_in; ++b) d(m * d_in + a, n * d_in + b) = s(m * d_out + n, a * d_in + b);
  return ChoiMatrix(hermitian_part(d), d_in, d_out);
}

ChoiMatrix compose(const ChoiMatrix& second, const ChoiMatrix& first) {
  if (second.d_in() != first.d_out()) throw DimensionError("compose: dimension mismatch");
  Matrix s = superoperator(second) * superoperator(first);
  return choi_from_superoperator(s, first.d_in(), second.d_out());
}

ChoiMatrix identity_choi(Index d) {
  return choi_from_kraus(KrausSet::from_operators({identity(d)}));
}

ChoiMatrix transpose_choi(Index d) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) m(a * d + b, b * d + a) = 1.0;
  return ChoiMatrix(m, d, d);
}

ChoiMatrix depolarizing_choi(Index d) {
  return ChoiMatrix(identity(d * d) / static_cast<double>(d), d, d);
}

ChoiMatrix unitary_choi(const UnitaryOperator& u) {
  return choi_from_kraus(KrausSet::from_operators({u.matrix()}));
}

ChoiMatrix preparation_choi(const DensityMatrix& sigma, Index d_in) {
  return ChoiMatrix(tensor(sigma.matrix(), identity(d_in)), d_in, sigma.dim());
}

KrausSet dilation_kraus(const UnitaryOperator& v, const DensityMatrix& omega, BipartiteDims dims) {
  if (v.dim() != dims.total() || omega.dim() != dims.b) {
    throw DimensionError("dilation_kraus: dimension mismatch");
  }
  const auto es = eig_hermitian(omega.matrix());
  // Rotate the environment into the eigenbasis of omega on both sides.
  const Matrix w = tensor(identity(dims.a), es.vectors);
  const Matrix vr = w.adjoint() * v.matrix() * w;
  KrausSet k;
  for (Index nu = 0; nu < dims.b; ++nu) {
    const double p = es.values[nu];
    if (p <= 1e-15) continue;
    for (Index mu = 0; mu < dims.b; ++mu) {
      Matrix m(dims.a, dims.a);
      for (Index i = 0; i < dims.a; ++i)
        for (Index j = 0; j < dims.a; ++j) m(i, j) = std::sqrt(p) * vr(i * dims.b + mu, j * dims.b + nu);
      k.weights.push_back(1.0);
      k.operators.push_back(std::move(m));
    }
  }
  return k;
}

std::pair<ChoiMatrix, ChoiMatrix> induced_choi_pair(const UnitaryOperator& v,
                                                    const DensityMatrix& omega0,
                                                    const DensityMatrix& rho0) {
  const BipartiteDims dims{rho0.dim(), omega0.dim()};
  if (v.dim() != dims.total()) throw DimensionError("induced_choi_pair: dimension mismatch");
  ChoiMatrix system = choi_from_kraus(dilation_kraus(v, omega0, dims));
  // Environment map: exchange the factors and reuse the system construction.
  const Matrix sw = swap_operator(dims.a, dims.b);
  UnitaryOperator vs(sw * v.matrix() * sw.adjoint(), 1e-10);
  ChoiMatrix env = choi_from_kraus(dilation_kraus(vs, rho0, {dims.b, dims.a}));
  return {system, env};
}

}  // namespace noncp
