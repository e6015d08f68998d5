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
#include "noncp/accessibility.hpp"
#include "noncp/affine_dynamics.hpp"
#include "test_support.hpp"

using namespace noncp;
using noncp::testing::smallest_eigenvalue;

TEST_CASE("transpose: closed-form smallest eigenvalue of L(xi)") {
  const ChoiMatrix t = transpose_choi(2);
  for (double x : {-2.0, -0.5, 0.0, 1.0}) {
    for (double z : {-1.0, 0.0, 2.0}) {
      RealVector xi(3);
      xi << x, 0.3, z;
      const double direct = smallest_eigenvalue(shifted_choi(t, xi).matrix());
      CHECK(std::abs(direct - transpose_lambda_min(xi)) < 1e-12);
      CHECK(transpose_lambda_min(xi) == doctest::Approx(-std::sqrt(1.0 + xi.squaredNorm())));
    }
  }
}

TEST_CASE("transpose is not accessible, from any starting shift") {
  Rng rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    AccessibilityConfig cfg;
    cfg.xi0 = RealVector(3);
    for (auto& v : cfg.xi0) v = u(rng);
    const AccessibilityReport r = linear_accessibility_test(transpose_choi(2), cfg);
    CHECK(r.status == AccessStatus::not_accessible);
    CHECK(r.lambda_min_star == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(r.xi_star.norm() < 1e-4);
    CHECK_FALSE(r.certificate.has_value());
  }
}

TEST_CASE("CP trace-preserving maps are accessible with zero shift") {
  Rng rng(2);
  const AccessibilityReport r = linear_accessibility_test(unitary_choi(random_unitary(2, rng)));
  CHECK(r.status == AccessStatus::accessible);
  CHECK(r.lambda_min_star >= -1e-7);
  REQUIRE(r.certificate.has_value());
  for (double w : r.certificate->weights) CHECK(w >= -1e-7);
}

TEST_CASE("a shifted unitary channel recovers its shift") {
  Rng rng(3);
  for (Index d : {2, 3}) {
    const KrausSet k = KrausSet::from_operators({random_unitary(d, rng).matrix()});
    RealVector xi = 0.1 * RealVector::Random(d * d - 1);
    const ChoiMatrix dm = choi_of_affine({k, xi});
    const AccessibilityReport r = linear_accessibility_test(dm);
    CHECK(r.status == AccessStatus::accessible);
    CHECK((r.xi_star - xi).cwiseAbs().maxCoeff() < 1e-8);
    // The certificate reproduces the CP part.
    REQUIRE(r.certificate.has_value());
    CHECK(max_abs(choi_from_kraus(*r.certificate).matrix() - choi_from_kraus(k).matrix()) < 1e-6);
  }
}

TEST_CASE("non-CP toy dynamical matrix is accessible") {
  const ChoiMatrix d = toy_dynamical_matrix(0.2, 0.3);
  CHECK(smallest_eigenvalue(d.matrix()) < -0.01);
  const AccessibilityReport r = linear_accessibility_test(d);
  CHECK(r.status == AccessStatus::accessible);
  CHECK(smallest_eigenvalue(shifted_choi(d, r.xi_star).matrix()) >= -1e-7);
}

TEST_CASE("T' threshold at p = 2/3") {
  for (double p : {0.0, 0.5, 2.0 / 3.0, 0.9, 1.0}) {
    CHECK(smallest_eigenvalue(tprime_choi(p).matrix()) == doctest::Approx((3.0 * p - 2.0) / 2.0));
  }
  const auto p = accessibility_threshold([](double q) { return tprime_choi(q); }, 0.0, 1.0);
  REQUIRE(p.has_value());
  CHECK(std::abs(*p - 2.0 / 3.0) < 1e-6);
}

TEST_CASE("identity-transpose mixture stays inaccessible below p = 1") {
  auto mix = [](double p) {
    return ChoiMatrix(p * identity_choi(2).matrix() + (1.0 - p) * transpose_choi(2).matrix(), 2, 2);
  };
  CHECK(linear_accessibility_test(mix(0.99)).status == AccessStatus::not_accessible);
  CHECK(linear_accessibility_test(mix(1.0)).status == AccessStatus::accessible);
  const auto p = accessibility_threshold(mix, 0.0, 1.0);
  REQUIRE(p.has_value());
  CHECK(*p > 1.0 - 1e-6);
}

TEST_CASE("threshold reports nothing when both ends agree") {
  const auto p = accessibility_threshold([](double q) { return tprime_choi(q); }, 0.8, 1.0);
  CHECK_FALSE(p.has_value());
  CHECK_THROWS_AS(accessibility_threshold([](double q) { return tprime_choi(q); }, 1.0, 0.0),
                  InvalidArgument);
}

TEST_CASE("accessibility requires a trace-preserving map") {
  CHECK_THROWS_AS(linear_accessibility_test(ChoiMatrix(2.0 * identity_choi(2).matrix(), 2, 2)),
                  ContractViolation);
}

TEST_CASE("unital qubit affine forms are CP") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    // Random CP trace-preserving Kraus part from a Stinespring isometry; the
    // shift is fixed by unitality.
    const Index rank = 1 + trial % 4;
    const Matrix u = random_unitary(2 * rank, rng).matrix();
    std::vector<Matrix> ops;
    for (Index r = 0; r < rank; ++r) ops.push_back(u.block(2 * r, 0, 2, 2));
    const KrausSet k = KrausSet::from_operators(ops);
    const Matrix x = identity(2) / 2.0 - apply_kraus(k, identity(2) / 2.0);
    const AffineMapForm f{k, generator_basis(2).coefficients(x)};
    const UnitalCpResult r = unital_cp_check(f);
    CHECK(r.unital);
    CHECK(r.cp_forced);
    CHECK(r.min_eigenvalue >= -1e-9);
  }
}

TEST_CASE("non-unital affine forms are left alone") {
  RealVector xi(3);
  xi << 0.0, 0.0, 0.1;
  const UnitalCpResult r = unital_cp_check({KrausSet::from_operators({identity(2)}), xi});
  CHECK_FALSE(r.unital);
  CHECK_FALSE(r.cp_forced);
}

TEST_CASE("qutrit unital affine form with a non-PSD dynamical matrix is rejected") {
  // Kraus part |0><0|, |0><1|, |1><2| with the shift that restores 1/3 -> 1/3.
  // The composite vector |out 0>|in 2> sees only the shift term, with weight -1/3.
  std::vector<Matrix> ops(3, Matrix::Zero(3, 3));
  ops[0](0, 0) = 1.0;
  ops[1](0, 1) = 1.0;
  ops[2](1, 2) = 1.0;
  const KrausSet k = KrausSet::from_operators(ops);
  const Matrix x = identity(3) / 3.0 - apply_kraus(k, identity(3) / 3.0);
  const AffineMapForm f{k, generator_basis(3).coefficients(x)};
  CHECK(smallest_eigenvalue(choi_of_affine(f).matrix()) == doctest::Approx(-1.0 / 3.0));
  CHECK_THROWS_AS(unital_cp_check(f), ContractViolation);
}
