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
#include "noncp/choi.hpp"
#include "test_support.hpp"

using namespace noncp;
using noncp::testing::brute_force_choi;
using noncp::testing::smallest_eigenvalue;

namespace {

KrausSet random_channel(Index d_in, Index d_out, Index rank, Rng& rng) {
  // Stinespring: isometry columns from a random unitary on d_out * rank.
  const Matrix u = random_unitary(d_out * rank, rng).matrix();
  std::vector<Matrix> ops;
  for (Index k = 0; k < rank; ++k) {
    Matrix m(d_out, d_in);
    for (Index o = 0; o < d_out; ++o) {
      for (Index i = 0; i < d_in; ++i) m(o, i) = u(o * rank + k, i);
    }
    ops.push_back(m);
  }
  return KrausSet::from_operators(ops);
}

}  // namespace

TEST_CASE("identity channel Choi matrix has ones at the corners") {
  const Matrix d = identity_choi(2).matrix();
  CHECK(d(0, 0) == Complex(1.0));
  CHECK(d(0, 3) == Complex(1.0));
  CHECK(d(3, 0) == Complex(1.0));
  CHECK(d(3, 3) == Complex(1.0));
  CHECK(d.cwiseAbs().sum() == doctest::Approx(4.0));
}

TEST_CASE("transpose Choi matrix is SWAP with spectrum (1, 1, 1, -1)") {
  const ChoiMatrix t = transpose_choi(2);
  CHECK(max_abs(t.matrix() - swap_operator(2, 2)) < 1e-15);
  const RealVector ev = eigenvalues_hermitian(t.matrix());
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(1.0));
  const ChannelProperties p = channel_properties(t);
  CHECK(p.trace_preserving);
  CHECK(p.unital);
  CHECK_FALSE(p.cp);
}

TEST_CASE("Choi from Kraus matches the brute-force construction") {
  Rng rng(1);
  const KrausSet k = random_channel(2, 3, 2, rng);
  const Matrix ref = brute_force_choi([&](const Matrix& x) { return apply_kraus(k, x); }, 2, 3);
  CHECK(max_abs(choi_from_kraus(k).matrix() - ref) < 1e-13);
}

TEST_CASE("Kraus and Choi round trip") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const KrausSet k = random_channel(2, 2, 1 + trial % 4, rng);
    const ChoiMatrix d = choi_from_kraus(k);
    const KrausSet back = kraus_from_choi(d);
    CHECK(max_abs(choi_from_kraus(back).matrix() - d.matrix()) < 1e-10);
    const DensityMatrix rho = random_density(2, rng);
    CHECK(max_abs(apply_kraus(back, rho.matrix()) - apply_choi(d, rho)) < 1e-10);
  }
}

TEST_CASE("Kraus decomposition of a non-CP map carries a negative weight") {
  const KrausSet k = kraus_from_choi(transpose_choi(2));
  int negative = 0;
  for (double w : k.weights) negative += w < 0.0 ? 1 : 0;
  CHECK(negative == 1);
  const DensityMatrix rho(Matrix((identity(2) + 0.3 * pauli::y()) / 2.0));
  CHECK(max_abs(apply_kraus(k, rho.matrix()) - rho.matrix().transpose()) < 1e-12);
}

TEST_CASE("trace-preserving maps have trace d_in") {
  Rng rng(3);
  for (Index d : {2, 3}) {
    const ChoiMatrix c = choi_from_kraus(random_channel(d, d, 3, rng));
    CHECK(std::abs(c.matrix().trace() - static_cast<double>(d)) < 1e-10);
    CHECK(channel_properties(c).trace_preserving);
    CHECK(channel_properties(c).cp);
  }
}

TEST_CASE("difference form reproduces the map with CP parts") {
  const ChoiMatrix t = transpose_choi(3);
  const DifferenceForm f = difference_form(t);
  for (double w : f.plus.weights) CHECK(w > 0.0);
  for (double w : f.minus.weights) CHECK(w > 0.0);
  CHECK(max_abs(choi_from_difference(f).matrix() - t.matrix()) < 1e-12);
  CHECK(smallest_eigenvalue(choi_from_kraus(f.plus).matrix()) > -1e-12);
  CHECK(smallest_eigenvalue(choi_from_kraus(f.minus).matrix()) > -1e-12);
}

TEST_CASE("affine form adds a state-independent shift") {
  RealVector xi(3);
  xi << 0.0, 0.0, 0.1;
  const AffineMapForm f{KrausSet::from_operators({identity(2)}), xi};
  Rng rng(4);
  const DensityMatrix rho = random_density(2, rng);
  const Matrix expected = rho.matrix() + 0.1 * pauli::z();
  CHECK(max_abs(apply_affine_form(f, rho.matrix()) - expected) < 1e-14);
  // The dynamical matrix reproduces the map on unit-trace inputs.
  CHECK(max_abs(apply_choi(choi_of_affine(f), rho) - expected) < 1e-14);
}

TEST_CASE("superoperator reshuffle is invertible and composes") {
  Rng rng(5);
  const ChoiMatrix a = choi_from_kraus(random_channel(2, 2, 2, rng));
  const ChoiMatrix b = choi_from_kraus(random_channel(2, 2, 3, rng));
  CHECK(max_abs(choi_from_superoperator(superoperator(a), 2, 2).matrix() - a.matrix()) < 1e-14);
  const DensityMatrix rho = random_density(2, rng);
  const Matrix two_step = apply_choi(b, apply_choi(a, rho));
  CHECK(max_abs(apply_choi(compose(b, a), rho) - two_step) < 1e-13);
}

TEST_CASE("CP maps contract the trace distance") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const ChoiMatrix c = choi_from_kraus(random_channel(2, 2, 1 + trial % 4, rng));
    const DensityMatrix r1 = random_density(2, rng);
    const DensityMatrix r2 = random_density(2, rng);
    const double after = trace_norm(apply_choi(c, r1) - apply_choi(c, r2));
    CHECK(after <= trace_distance(r1, r2) + 1e-12);
  }
}

TEST_CASE("dilation Kraus set reproduces the reduced dynamics") {
  Rng rng(7);
  const UnitaryOperator v = random_unitary(6, rng);
  const DensityMatrix omega = random_density(3, rng);
  const KrausSet k = dilation_kraus(v, omega, {2, 3});
  const DensityMatrix rho = random_density(2, rng);
  const Matrix joint = v.matrix() * tensor(rho.matrix(), omega.matrix()) * v.matrix().adjoint();
  CHECK(max_abs(apply_kraus(k, rho.matrix()) - noncp::testing::trace_out_b(joint, 2, 3)) < 1e-13);
}

TEST_CASE("induced pair for SWAP exchanges the roles of system and environment") {
  Rng rng(8);
  const DensityMatrix omega0 = random_density(2, rng);
  const DensityMatrix rho0 = random_density(2, rng);
  const auto [sys, env] = induced_choi_pair(UnitaryOperator(swap_operator(2, 2)), omega0, rho0);
  // System map: rho0 -> omega0; environment map: omega0 -> rho0.
  CHECK(max_abs(apply_choi(sys, rho0) - omega0.matrix()) < 1e-14);
  CHECK(max_abs(apply_choi(env, omega0) - rho0.matrix()) < 1e-14);
}

TEST_CASE("shape violations are reported") {
  CHECK_THROWS_AS(ChoiMatrix(identity(5), 2, 2), DimensionError);
  Matrix bad = identity(4);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(ChoiMatrix(bad, 2, 2), ContractViolation);
}
