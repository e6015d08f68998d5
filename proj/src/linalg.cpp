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

#include "noncp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace noncp {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix must be square");
  }
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= tol * scale;
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

HermitianOperator::HermitianOperator(const Matrix& m, double tol) {
  require_square(m, "HermitianOperator");
  if (!is_hermitian(m, tol)) {
    throw ContractViolation("HermitianOperator: deviation from hermiticity " +
                            fmt_double(max_abs(m - m.adjoint())));
  }
  m_ = hermitian_part(m);
}

DensityMatrix::DensityMatrix(const Matrix& m) {
  require_square(m, "DensityMatrix");
  if (!is_hermitian(m, kHermiticityTol)) {
    throw ContractViolation("DensityMatrix: not Hermitian");
  }
  m_ = hermitian_part(m);
  double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw ContractViolation("DensityMatrix: trace " + fmt_double(tr) + " != 1");
  }
  double lmin = min_eigenvalue(m_);
  if (lmin < -kPositivityTol) {
    throw ContractViolation("DensityMatrix: negative eigenvalue " + fmt_double(lmin));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  return DensityMatrix(identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
  Vector k = ket / ket.norm();
  return DensityMatrix(k * k.adjoint());
}

UnitaryOperator::UnitaryOperator(const Matrix& m, double tol) {
  require_square(m, "UnitaryOperator");
  double dev = max_abs(m.adjoint() * m - noncp::identity(m.rows()));
  if (dev > tol) {
    throw ContractViolation("UnitaryOperator: max|U^dagger U - 1| = " + fmt_double(dev));
  }
  m_ = m;
}

UnitaryOperator UnitaryOperator::identity(Index d) { return UnitaryOperator(noncp::identity(d)); }

Matrix GeneratorBasis::combine(const RealVector& x) const {
  if (x.size() != size()) {
    throw DimensionError("GeneratorBasis::combine: expected " + std::to_string(size()) +
                         " coefficients");
  }
  Matrix out = Matrix::Zero(d_, d_);
  for (Index i = 0; i < size(); ++i) out += x[i] * (*this)[i];
  return out;
}

RealVector GeneratorBasis::coefficients(const Matrix& x) const {
  if (x.rows() != d_ || x.cols() != d_) {
    throw DimensionError("GeneratorBasis::coefficients: dimension mismatch");
  }
  RealVector out(size());
  for (Index i = 0; i < size(); ++i) {
    out[i] = ((*this)[i] * x).trace().real() / 2.0;
  }
  return out;
}

RealVector GeneratorBasis::bloch(const Matrix& rho) const {
  return coefficients(rho) * static_cast<double>(d_);
}

Matrix GeneratorBasis::from_bloch(const RealVector& alpha) const {
  return (identity(d_) + combine(alpha)) / static_cast<double>(d_);
}

GeneratorBasis generator_basis(Index d) {
  if (d < 2) throw InvalidArgument("generator_basis: dimension must be >= 2");
  std::vector<Matrix> sym, anti, diag;
  const Complex i1(0.0, 1.0);
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      Matrix s = Matrix::Zero(d, d);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      sym.push_back(s);
      Matrix a = Matrix::Zero(d, d);
      a(j, k) = -i1;
      a(k, j) = i1;
      anti.push_back(a);
    }
  }
  for (Index l = 1; l < d; ++l) {
    Matrix m = Matrix::Zero(d, d);
    double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Index j = 0; j < l; ++j) m(j, j) = c;
    m(l, l) = -c * static_cast<double>(l);
    diag.push_back(m);
  }
  std::vector<Matrix> all;
  all.reserve(static_cast<std::size_t>(d * d - 1));
  for (auto* group : {&sym, &anti, &diag}) {
    all.insert(all.end(), group->begin(), group->end());
  }
  return GeneratorBasis(d, std::move(all));
}

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

Matrix identity(Index d) { return Matrix::Identity(d, d); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem keep) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(dims.total()) + " square");
  }
  const Index da = dims.a, db = dims.b;
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(da, da);
    for (Index i = 0; i < da; ++i)
      for (Index j = 0; j < da; ++j)
        for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (Index i = 0; i < db; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

Matrix partial_transpose(const Matrix& m, BipartiteDims dims, Subsystem which) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_transpose: dimension mismatch");
  }
  const Index da = dims.a, db = dims.b;
  Matrix out(m.rows(), m.cols());
  for (Index a1 = 0; a1 < da; ++a1)
    for (Index b1 = 0; b1 < db; ++b1)
      for (Index a2 = 0; a2 < da; ++a2)
        for (Index b2 = 0; b2 < db; ++b2) {
          Complex v = m(a1 * db + b1, a2 * db + b2);
          if (which == Subsystem::B) {
            out(a1 * db + b2, a2 * db + b1) = v;
          } else {
            out(a2 * db + b1, a1 * db + b2) = v;
          }
        }
  return out;
}

Matrix swap_operator(Index d_a, Index d_b) {
  const Index n = d_a * d_b;
  Matrix s = Matrix::Zero(n, n);
  for (Index a = 0; a < d_a; ++a)
    for (Index b = 0; b < d_b; ++b) s(b * d_a + a, a * d_b + b) = 1.0;
  return s;
}

EigenSystem eig_hermitian(const Matrix& h, double tol) {
  require_square(h, "eig_hermitian");
  if (!is_hermitian(h, tol)) {
    throw ContractViolation("eig_hermitian: input not Hermitian (deviation " +
                            fmt_double(max_abs(h - h.adjoint())) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem eig_hermitian(const HermitianOperator& h) { return eig_hermitian(h.matrix()); }

RealVector eigenvalues_hermitian(const Matrix& h, double tol) {
  require_square(h, "eigenvalues_hermitian");
  if (!is_hermitian(h, tol)) {
    throw ContractViolation("eigenvalues_hermitian: input not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& h, double tol) { return eigenvalues_hermitian(h, tol)[0]; }

UnitaryOperator unitary_evolve(const HermitianOperator& h, double t) {
  auto es = eig_hermitian(h);
  Vector phases(es.values.size());
  for (Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::exp(Complex(0.0, -es.values[k] * t));
  }
  Matrix u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  return UnitaryOperator(u);
}

double trace_norm(const Matrix& h) { return eigenvalues_hermitian(h).cwiseAbs().sum(); }

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw DimensionError("trace_distance: dimension mismatch");
  return trace_norm(rho1.matrix() - rho2.matrix());
}

Vector vec_rows(const Matrix& m) {
  Vector v(m.size());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) v[r * m.cols() + c] = m(r, c);
  return v;
}

Matrix unvec_rows(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec_rows: size mismatch");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  return m;
}

Matrix random_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  return g;
}

UnitaryOperator random_unitary(Index d, Rng& rng) {
  // QR of a Ginibre matrix with the phase fix gives the Haar measure.
  Eigen::HouseholderQR<Matrix> qr(random_ginibre(d, d, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    Complex diag = r(k, k);
    if (std::abs(diag) > 0) q.col(k) *= diag / std::abs(diag);
  }
  return UnitaryOperator(q, 1e-10);
}

HermitianOperator random_hermitian(Index d, Rng& rng) {
  return HermitianOperator(hermitian_part(random_ginibre(d, d, rng)));
}

DensityMatrix random_density(Index d, Rng& rng, Index rank) {
  if (rank <= 0 || rank > d) rank = d;
  Matrix g = random_ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitian_part(rho));
}

}  // namespace noncp
