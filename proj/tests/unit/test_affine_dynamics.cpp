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

#include <numbers>

#include "doctest.h"
#include "noncp/affine_dynamics.hpp"
#include "test_support.hpp"

using namespace noncp;
using noncp::testing::brute_force_choi;
using noncp::testing::sorted_eigenvalues;
using noncp::testing::trace_out_b;

namespace {

Matrix sum_sigma_sigma() {
  const GeneratorBasis s = generator_basis(2);
  Matrix m = Matrix::Zero(4, 4);
  for (const auto& x : s) m += tensor(x, x);
  return m;
}

// rho -> tr_B[U (rho (x) 1/2 + tr(rho) (a/4) sum_i s_i (x) s_i) U^dagger].
Matrix toy_map(const Matrix& u, double a, const Matrix& x) {
  const Matrix tau = tensor(x, identity(2) / 2.0) + x.trace() * (a / 4.0) * sum_sigma_sigma();
  return trace_out_b(u * tau * u.adjoint(), 2, 2);
}

}  // namespace

TEST_CASE("shift of the rotation example is (0, 0, a sin(2 theta) / 2)") {
  const auto omega = DensityMatrix::maximally_mixed(2);
  for (double a : {0.1, 0.2}) {
    for (int k = 0; k <= 20; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / 20.0;
      const AffineMapForm f = reduced_affine_form(example_unitary(theta), omega, toy_correlation(a));
      CHECK(std::abs(f.xi(0)) < 1e-12);
      CHECK(std::abs(f.xi(1)) < 1e-12);
      CHECK(std::abs(f.xi(2) - a * std::sin(2.0 * theta) / 2.0) < 1e-12);
      CHECK((f.xi - example_xi(a, theta)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("affine form reproduces the reduced dynamics of the toy extension") {
  const double a = 0.2;
  const double theta = 0.9;
  const Matrix u = example_unitary(theta).matrix();
  const AffineMapForm f =
      reduced_affine_form(example_unitary(theta), DensityMatrix::maximally_mixed(2), toy_correlation(a));
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    // Stay inside the positivity domain of the toy extension.
    RealVector alpha = RealVector::Random(3);
    alpha *= 0.5 / alpha.norm();
    const Matrix rho = generator_basis(2).from_bloch(alpha);
    const Matrix tau = toy_extension(alpha, a);
    const Matrix direct = trace_out_b(u * tau * u.adjoint(), 2, 2);
    CHECK(max_abs(apply_affine_form(f, rho) - direct) < 1e-13);
  }
}

TEST_CASE("toy dynamical matrix matches an entrywise construction") {
  for (double theta : {0.0, 0.3, 1.0, 2.5, 4.0}) {
    const Matrix u = example_unitary(theta).matrix();
    const Matrix ref = brute_force_choi([&](const Matrix& x) { return toy_map(u, 0.2, x); }, 2, 2);
    CHECK(max_abs(toy_dynamical_matrix(0.2, theta).matrix() - ref) < 1e-13);
  }
}

TEST_CASE("sweep at a = 0.2 has negative branches and is pi-periodic") {
  const auto grid = theta_grid(201);
  REQUIRE(grid.size() == 201);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(2.0 * std::numbers::pi));
  const auto rows = spectrum_sweep(0.2, grid);
  double lowest = 0.0;
  int most_negative = 0;
  for (const auto& r : rows) {
    lowest = std::min(lowest, r.eigenvalues(0));
    int neg = 0;
    for (double v : r.eigenvalues) neg += v < -1e-12 ? 1 : 0;
    most_negative = std::max(most_negative, neg);
    // Independent eigensolve of the entrywise construction.
    const Matrix u = example_unitary(r.theta).matrix();
    const Matrix ref = brute_force_choi([&](const Matrix& x) { return toy_map(u, 0.2, x); }, 2, 2);
    CHECK((sorted_eigenvalues(ref) - r.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(lowest < 0.0);
  CHECK(most_negative <= 3);
  for (std::size_t k = 0; k + 100 < rows.size(); ++k) {
    CHECK((rows[k].eigenvalues - rows[k + 100].eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("trace of D(theta) is 2 and the map is trace preserving") {
  for (double theta : {0.1, 0.7, 2.0}) {
    const ChoiMatrix d = toy_dynamical_matrix(0.2, theta);
    CHECK(d.matrix().trace().real() == doctest::Approx(2.0));
    CHECK(channel_properties(d).trace_preserving);
  }
}

TEST_CASE("no correlations means no shift and a CP map") {
  Rng rng(2);
  const UnitaryOperator u = random_unitary(4, rng);
  const AffineMapForm f = reduced_affine_form(u, random_density(2, rng), toy_correlation(0.0));
  CHECK(f.xi.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(channel_properties(choi_of_affine(f)).cp);
}

TEST_CASE("correlation shift vanishes for local unitaries") {
  Rng rng(3);
  const Matrix local = tensor(random_unitary(2, rng).matrix(), random_unitary(2, rng).matrix());
  const Matrix x = correlation_shift(UnitaryOperator(local), toy_correlation(0.3), {2, 2});
  CHECK(max_abs(x) < 1e-14);
}

TEST_CASE("quadratic correlation tensor agrees with the assigned state") {
  Rng rng(4);
  AssignmentSpec s = AssignmentSpec::zeros(2, 2);
  s.b = 0.1 * RealVector::Random(3);
  s.B = 0.1 * RealMatrix::Random(3, 3);
  s.g = 0.1 * RealMatrix::Random(3, 3);
  for (auto& k : s.G) k = 0.1 * RealMatrix::Random(3, 3);
  const RealVector alpha = 0.4 * RealVector::Random(3);
  const Matrix tau = apply_assignment(s, generator_basis(2).from_bloch(alpha)).tau;
  const RealMatrix expect = correlation_tensor(to_fano(tau, {2, 2})).gamma;
  CHECK((quadratic_gamma(s, alpha).gamma - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("toy extension is PPT throughout its positive domain for a > 0") {
  for (int i = 1; i <= 10; ++i) {
    const double a_max = 1.0 / 3.0;
    const double a = a_max * i / 10.0;
    const double radius = toy_domain_radius(a);
    for (int j = 0; j < 10; ++j) {
      RealVector alpha(3);
      alpha << radius * j / 9.0 / std::sqrt(2.0), 0.0, radius * j / 9.0 / std::sqrt(2.0);
      const PptResult r = ppt_check(toy_extension(alpha, a));
      CHECK(r.ppt);
      CHECK(r.decides_separability);
    }
  }
}

TEST_CASE("singlet-like toy extension at a = -1 is not PPT") {
  const PptResult r = ppt_check(toy_extension(RealVector::Zero(3), -1.0));
  CHECK_FALSE(r.ppt);
  CHECK(r.min_pt_eigenvalue == doctest::Approx(-0.5));
}

TEST_CASE("sweep rejects correlation strengths outside the domain") {
  CHECK_THROWS_AS(spectrum_sweep(0.5, theta_grid(5)), InvalidArgument);
  CHECK_THROWS_AS(theta_grid(1), InvalidArgument);
}
