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
#include "noncp/fano.hpp"
#include "test_support.hpp"

using namespace noncp;
using noncp::testing::smallest_eigenvalue;
using noncp::testing::trace_out_b;

namespace {

// Largest a in [0, 1/3] with the toy extension PSD at Bloch vector alpha,
// by bisection on the smallest eigenvalue.
double toy_root(const RealVector& alpha) {
  double lo = 0.0;
  double hi = 1.0 / 3.0;
  if (smallest_eigenvalue(toy_extension(alpha, hi)) >= 0.0) return hi;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (smallest_eigenvalue(toy_extension(alpha, mid)) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("Fano round trip on random bipartite states") {
  Rng rng(1);
  for (BipartiteDims dims : {BipartiteDims{2, 2}, BipartiteDims{2, 3}, BipartiteDims{3, 2}}) {
    const Matrix tau = random_density(dims.total(), rng).matrix();
    const FanoState f = to_fano(tau, dims);
    CHECK(max_abs(from_fano(f) - tau) < 1e-13);
  }
}

TEST_CASE("qubit Fano coefficients are plain expectation values") {
  Rng rng(2);
  const Matrix tau = random_density(4, rng).matrix();
  const FanoState f = to_fano(tau, {2, 2});
  const GeneratorBasis s = generator_basis(2);
  for (Index i = 0; i < 3; ++i) {
    CHECK(f.alpha(i) == doctest::Approx((tensor(s[i], identity(2)) * tau).trace().real()));
    for (Index j = 0; j < 3; ++j) {
      CHECK(f.gamma(i, j) == doctest::Approx((tensor(s[i], s[j]) * tau).trace().real()));
    }
  }
}

TEST_CASE("product states have zero correlation tensor") {
  Rng rng(3);
  const Matrix tau = tensor(random_density(2, rng).matrix(), random_density(3, rng).matrix());
  CHECK(correlation_tensor(to_fano(tau, {2, 3})).gamma.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("correlation tensor expands tau minus the product of marginals") {
  Rng rng(4);
  const BipartiteDims dims{2, 3};
  const Matrix tau = random_density(6, rng).matrix();
  const CorrelationTensor c = correlation_tensor(to_fano(tau, dims));
  const GeneratorBasis sa = generator_basis(2);
  const GeneratorBasis sb = generator_basis(3);
  Matrix sum = Matrix::Zero(6, 6);
  for (Index i = 0; i < sa.size(); ++i) {
    for (Index j = 0; j < sb.size(); ++j) sum += c.gamma(i, j) * tensor(sa[i], sb[j]);
  }
  const Matrix rho = trace_out_b(tau, 2, 3);
  const Matrix omega = partial_trace(tau, dims, Subsystem::B);
  CHECK(max_abs(tau - tensor(rho, omega) - sum) < 1e-13);
}

TEST_CASE("toy positivity boundary matches the numeric root") {
  for (int k = 0; k <= 10; ++k) {
    const double r = 0.1 * k;
    RealVector alpha(3);
    alpha << 0.0, 0.0, r;
    CHECK(std::abs(toy_positivity_max(r) - toy_root(alpha)) < 1e-9);
    // The bound depends only on |alpha|.
    alpha << r / std::sqrt(3.0), -r / std::sqrt(3.0), r / std::sqrt(3.0);
    CHECK(std::abs(toy_positivity_max(r) - toy_root(alpha)) < 1e-9);
  }
}

TEST_CASE("toy domain radius marks the edge of positivity") {
  for (double a : {0.0, 0.1, 0.2}) {
    const double r = toy_domain_radius(a);
    CHECK(r == doctest::Approx(std::sqrt((1.0 + a) * (1.0 - 3.0 * a))));
    RealVector alpha(3);
    alpha << 0.0, r, 0.0;
    CHECK(std::abs(smallest_eigenvalue(toy_extension(alpha, a))) < 1e-12);
    // At a = 0 the edge is the Bloch sphere itself, where the guard applies.
    alpha *= 1.0 + 1e-6;
    if (r < 1.0) {
      CHECK(smallest_eigenvalue(toy_extension(alpha, a)) < 0.0);
    } else {
      CHECK_THROWS_AS(toy_extension(alpha, a), InvalidArgument);
    }
  }
  CHECK_THROWS_AS(toy_domain_radius(0.4), InvalidArgument);
}

TEST_CASE("toy extension has the right marginal") {
  RealVector alpha(3);
  alpha << 0.1, -0.2, 0.3;
  const Matrix tau = toy_extension(alpha, 0.2);
  CHECK(max_abs(trace_out_b(tau, 2, 2) - generator_basis(2).from_bloch(alpha)) < 1e-14);
  const AssignmentOutput out = apply_assignment(toy_assignment_spec(0.2), generator_basis(2).from_bloch(alpha));
  CHECK(max_abs(out.tau - tau) < 1e-14);
  CHECK(out.positive);
}

TEST_CASE("product assignment gives rho (x) omega0") {
  Rng rng(5);
  const DensityMatrix omega0 = random_density(3, rng);
  const AssignmentSpec spec = AssignmentSpec::product(2, omega0);
  const DensityMatrix rho = random_density(2, rng);
  const AssignmentOutput out = apply_assignment(spec, rho.matrix());
  CHECK(max_abs(out.tau - tensor(rho.matrix(), omega0.matrix())) < 1e-13);
}

TEST_CASE("assignment flags non-positive outputs instead of rejecting them") {
  RealVector alpha(3);
  alpha << 0.0, 0.0, 0.9;
  const AssignmentOutput out =
      apply_assignment(toy_assignment_spec(0.3), generator_basis(2).from_bloch(alpha));
  CHECK_FALSE(out.positive);
  CHECK(out.min_eigenvalue < 0.0);
}

TEST_CASE("assignment shape errors") {
  AssignmentSpec s = AssignmentSpec::zeros(2, 2);
  s.B = RealMatrix::Zero(2, 3);
  CHECK_THROWS_AS(s.validate(), DimensionError);
  CHECK_THROWS_AS(apply_assignment(AssignmentSpec::zeros(2, 2), identity(3) / 3.0), DimensionError);
}

TEST_CASE("effective assignment of a generic unitary reproduces the joint state") {
  Rng rng(6);
  const UnitaryOperator v = random_unitary(4, rng);
  const DensityMatrix omega0 = random_density(2, rng);
  const EffectiveAssignment eff = effective_assignment_from_unitary(v, omega0);
  REQUIRE_FALSE(eff.degenerate);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho0 = random_density(2, rng);
    const Matrix tau = v.matrix() * tensor(rho0.matrix(), omega0.matrix()) * v.matrix().adjoint();
    const Matrix rho = trace_out_b(tau, 2, 2);
    CHECK(max_abs(apply_assignment(eff.spec, rho).tau - tau) < 1e-10);
  }
}

TEST_CASE("SWAP induces a degenerate effective assignment") {
  Rng rng(7);
  const EffectiveAssignment eff =
      effective_assignment_from_unitary(UnitaryOperator(swap_operator(2, 2)), random_density(2, rng));
  CHECK(eff.degenerate);
  CHECK(eff.min_singular_value < 1e-10);
}

TEST_CASE("swap gadget realizes an arbitrary map of the marginal") {
  Rng rng(8);
  const DensityMatrix rho = random_density(2, rng);
  // A nonlinear target: rho -> rho^2 / tr(rho^2).
  auto f = [](const DensityMatrix& r) {
    const Matrix sq = r.matrix() * r.matrix();
    return Matrix(sq / sq.trace().real());
  };
  const Matrix tau = swap_gadget_extension(rho, f);
  CHECK(max_abs(trace_out_b(tau, 2, 2) - rho.matrix()) < 1e-14);
  const Matrix s = swap_operator(2, 2);
  CHECK(max_abs(trace_out_b(s * tau * s.adjoint(), 2, 2) - f(rho)) < 1e-14);
}
