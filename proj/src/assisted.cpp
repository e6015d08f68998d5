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

namespace {

Index int_pow(Index base, int n) {
  Index out = 1;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

// |b1 c1 b2 c2> -> |b1 b2 c1 c2>.
Matrix regroup_two_copies(Index db, Index dc) {
  const Index dim = db * dc * db * dc;
  Matrix p = Matrix::Zero(dim, dim);
  for (Index b1 = 0; b1 < db; ++b1) {
    for (Index c1 = 0; c1 < dc; ++c1) {
      for (Index b2 = 0; b2 < db; ++b2) {
        for (Index c2 = 0; c2 < dc; ++c2) {
          const Index from = ((b1 * dc + c1) * db + b2) * dc + c2;
          const Index to = ((b1 * db + b2) * dc + c1) * dc + c2;
          p(to, from) = 1.0;
        }
      }
    }
  }
  return p;
}

KrausSet tensor_kraus(const KrausSet& x, const KrausSet& y) {
  KrausSet out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      out.weights.push_back(x.weights[i] * y.weights[j]);
      out.operators.push_back(tensor(x.operators[i], y.operators[j]));
    }
  }
  return out;
}

}  // namespace

void AssistedChannel::validate() const {
  if (n != 1 && n != 2) throw InvalidArgument("AssistedChannel: block size must be 1 or 2");
  if (d_b < 1 || d_c < 1 || v.rows() != d_b * d_c || v.cols() < 1) {
    throw DimensionError("AssistedChannel: V must be (d_B d_C) x d_A");
  }
  if (max_abs(v.adjoint() * v - identity(v.cols())) > 1e-12) {
    throw ContractViolation("AssistedChannel: V is not an isometry");
  }
  if (povm.empty() || povm.size() != recoveries.size()) {
    throw ContractViolation("AssistedChannel: need one recovery per POVM outcome");
  }
  Matrix total = Matrix::Zero(d_c, d_c);
  for (const auto& e : povm) {
    if (e.rows() != d_c || e.cols() != d_c) throw DimensionError("AssistedChannel: POVM shape");
    if (!is_hermitian(e) || min_eigenvalue(e) < -1e-12) {
      throw ContractViolation("AssistedChannel: POVM element is not PSD");
    }
    total += e;
  }
  if (max_abs(total - identity(d_c)) > 1e-12) {
    throw ContractViolation("AssistedChannel: POVM does not sum to the identity");
  }
  for (const auto& r : recoveries) {
    if (r.d_in() != d_b || r.d_out() != d_b) {
      throw DimensionError("AssistedChannel: recovery must act on H_B");
    }
    const ChannelProperties props = channel_properties(r);
    if (!props.cp || !props.trace_preserving) {
      throw ContractViolation("AssistedChannel: recovery is not CP and trace preserving");
    }
  }
}

AssistedChannel AssistedChannel::unassisted() const {
  AssistedChannel out = *this;
  out.povm = {identity(d_c)};
  out.recoveries = {identity_choi(d_b)};
  return out;
}

Matrix assisted_transform(const AssistedChannel& ch, const DensityMatrix& input) {
  ch.validate();
  if (int_pow(ch.d_b * ch.d_c, ch.n) > kMaxAssistedDim) {
    throw Unsupported("assisted_transform: (d_B d_C)^n exceeds the supported size");
  }
  if (input.dim() != int_pow(ch.d_a(), ch.n)) {
    throw DimensionError("assisted_transform: input must live on H_A^n");
  }

  Matrix w = ch.v;
  if (ch.n == 2) w = regroup_two_copies(ch.d_b, ch.d_c) * tensor(ch.v, ch.v);
  const Matrix joint = w * input.matrix() * w.adjoint();
  const BipartiteDims dims{int_pow(ch.d_b, ch.n), int_pow(ch.d_c, ch.n)};
  const Matrix id_b = identity(dims.a);

  std::vector<KrausSet> kraus;
  for (const auto& r : ch.recoveries) kraus.push_back(kraus_from_choi(r));

  const std::size_t m = ch.povm.size();
  Matrix out = Matrix::Zero(dims.a, dims.a);
  const std::size_t outcomes = ch.n == 1 ? m : m * m;
  for (std::size_t x = 0; x < outcomes; ++x) {
    Matrix e;
    KrausSet r;
    if (ch.n == 1) {
      e = ch.povm[x];
      r = kraus[x];
    } else {
      e = tensor(ch.povm[x / m], ch.povm[x % m]);
      r = tensor_kraus(kraus[x / m], kraus[x % m]);
    }
    const Matrix cond = hermitian_part(partial_trace(tensor(id_b, e) * joint, dims, Subsystem::A));
    out += apply_kraus(r, cond);
  }
  return hermitian_part(out);
}

Matrix assisted_transform(const AssistedChannel& ch, const Vector& psi) {
  return assisted_transform(ch, DensityMatrix::pure(psi));
}

DistinguishabilityGain distinguishability_gain(const AssistedChannel& ch, const Vector& psi1,
                                               const Vector& psi2) {
  const AssistedChannel plain = ch.unassisted();
  DistinguishabilityGain out;
  out.assisted = trace_norm(assisted_transform(ch, psi1) - assisted_transform(ch, psi2));
  out.unassisted = trace_norm(assisted_transform(plain, psi1) - assisted_transform(plain, psi2));
  out.gain = out.assisted - out.unassisted;
  return out;
}

AssistedChannel dephasing_copy_channel(int n) {
  AssistedChannel ch;
  ch.d_b = 2;
  ch.d_c = 2;
  ch.v = Matrix::Zero(4, 2);
  ch.v(0, 0) = 1.0;
  ch.v(3, 1) = 1.0;
  Vector plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  Vector minus(2);
  minus << 1.0, -1.0;
  minus /= std::sqrt(2.0);
  ch.povm = {plus * plus.adjoint(), minus * minus.adjoint()};
  ch.recoveries = {identity_choi(2), unitary_choi(UnitaryOperator(pauli::z()))};
  ch.n = n;
  return ch;
}

}  // namespace noncp
