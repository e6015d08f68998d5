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

#include "doctest.h"
#include "noncp/linalg.hpp"
#include "test_support.hpp"

using namespace noncp;
using noncp::testing::trace_out_a;
using noncp::testing::trace_out_b;

TEST_CASE("generators are traceless, Hermitian and orthonormal") {
  for (Index d : {2, 3, 4}) {
    const GeneratorBasis s = generator_basis(d);
    REQUIRE(s.size() == d * d - 1);
    for (Index i = 0; i < s.size(); ++i) {
      CHECK(std::abs(s[i].trace()) < 1e-14);
      CHECK(max_abs(s[i] - s[i].adjoint()) < 1e-14);
      for (Index j = 0; j < s.size(); ++j) {
        const double expect = i == j ? 2.0 : 0.0;
        CHECK(std::abs((s[i] * s[j]).trace() - expect) < 1e-13);
      }
    }
  }
}

TEST_CASE("qubit generators are the Pauli matrices in x, y, z order") {
  const GeneratorBasis s = generator_basis(2);
  CHECK(max_abs(s[0] - pauli::x()) == 0.0);
  CHECK(max_abs(s[1] - pauli::y()) == 0.0);
  CHECK(max_abs(s[2] - pauli::z()) == 0.0);
}

TEST_CASE("Bloch vector round trip") {
  Rng rng(3);
  for (Index d : {2, 3}) {
    const GeneratorBasis s = generator_basis(d);
    const DensityMatrix rho = random_density(d, rng);
    CHECK(max_abs(s.from_bloch(s.bloch(rho.matrix())) - rho.matrix()) < 1e-13);
  }
  // Qubit: alpha_i = tr(sigma_i rho).
  const Matrix rho = (pauli::identity() + 0.3 * pauli::x() - 0.2 * pauli::z()) / 2.0;
  const RealVector a = generator_basis(2).bloch(rho);
  CHECK(a(0) == doctest::Approx(0.3));
  CHECK(a(1) == doctest::Approx(0.0));
  CHECK(a(2) == doctest::Approx(-0.2));
}

TEST_CASE("partial traces agree with explicit index sums") {
  Rng rng(5);
  const Matrix m = random_ginibre(6, 6, rng);
  CHECK(max_abs(partial_trace(m, {2, 3}, Subsystem::A) - trace_out_b(m, 2, 3)) < 1e-14);
  CHECK(max_abs(partial_trace(m, {2, 3}, Subsystem::B) - trace_out_a(m, 2, 3)) < 1e-14);
}

TEST_CASE("partial trace of a product") {
  Rng rng(7);
  const Matrix a = random_density(2, rng).matrix();
  const Matrix b = random_density(3, rng).matrix();
  CHECK(max_abs(partial_trace(tensor(a, b), {2, 3}, Subsystem::A) - a) < 1e-14);
  CHECK(max_abs(partial_trace(tensor(a, b), {2, 3}, Subsystem::B) - b) < 1e-14);
}

TEST_CASE("swap operator exchanges tensor factors") {
  Rng rng(9);
  const Matrix x = random_ginibre(2, 2, rng);
  const Matrix y = random_ginibre(3, 3, rng);
  const Matrix s = swap_operator(2, 3);
  CHECK(max_abs(s * tensor(x, y) * s.adjoint() - tensor(y, x)) < 1e-14);
}

TEST_CASE("partial transpose of the singlet has eigenvalue -1/2") {
  Vector psi = Vector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  const Matrix pt = partial_transpose(psi * psi.adjoint(), {2, 2}, Subsystem::B);
  CHECK(min_eigenvalue(pt) == doctest::Approx(-0.5));
  // Transposing either side gives the same spectrum.
  const Matrix pa = partial_transpose(psi * psi.adjoint(), {2, 2}, Subsystem::A);
  CHECK((eigenvalues_hermitian(pt) - eigenvalues_hermitian(pa)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("validated roles reject bad input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator{m}, ContractViolation);
  CHECK_THROWS_AS(DensityMatrix{2.0 * identity(2)}, ContractViolation);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ContractViolation);
  CHECK_THROWS_AS(UnitaryOperator{2.0 * identity(2)}, ContractViolation);
  CHECK_NOTHROW(UnitaryOperator{pauli::y()});
}

TEST_CASE("unitary_evolve matches the spectral exponential") {
  Rng rng(11);
  const HermitianOperator h = random_hermitian(3, rng);
  const Matrix u = unitary_evolve(h, 0.37).matrix();
  CHECK(max_abs(u - noncp::testing::expm_hermitian(h.matrix(), 0.37)) < 1e-13);
  CHECK(max_abs(u.adjoint() * u - identity(3)) < 1e-13);
}

TEST_CASE("random states are valid and reproducible") {
  Rng a(42);
  Rng b(42);
  const DensityMatrix r1 = random_density(3, a, 2);
  const DensityMatrix r2 = random_density(3, b, 2);
  CHECK(max_abs(r1.matrix() - r2.matrix()) == 0.0);
  const RealVector ev = eigenvalues_hermitian(r1.matrix());
  CHECK(std::abs(ev(0)) < 1e-12);  // rank 2 in dimension 3
  CHECK(ev(1) > 0.0);
}

TEST_CASE("trace distance of orthogonal pure states is 2") {
  Vector k0 = Vector::Zero(2);
  k0(0) = 1.0;
  Vector k1 = Vector::Zero(2);
  k1(1) = 1.0;
  CHECK(trace_distance(DensityMatrix::pure(k0), DensityMatrix::pure(k1)) == doctest::Approx(2.0));
}

TEST_CASE("row-major vectorization") {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const Vector v = vec_rows(m);
  CHECK(v(1).real() == 2.0);
  CHECK(v(3).real() == 4.0);
  CHECK(max_abs(unvec_rows(v, 2, 3) - m) == 0.0);
}
