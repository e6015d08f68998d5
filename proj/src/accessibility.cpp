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

#include "noncp/accessibility.hpp"

#include <cmath>
#include <sstream>

namespace noncp {

std::string to_string(AccessStatus s) {
  switch (s) {
    case AccessStatus::accessible:
      return "accessible";
    case AccessStatus::not_accessible:
      return "not-accessible";
    case AccessStatus::boundary:
      return "boundary";
  }
  return "unknown";
}

namespace {

std::vector<Matrix> shift_directions(const ChoiMatrix& d) {
  std::vector<Matrix> dirs;
  const Matrix id = identity(d.d_in());
  for (const auto& s : generator_basis(d.d_out())) dirs.push_back(tensor(s, id));
  return dirs;
}

}  // namespace

ChoiMatrix shifted_choi(const ChoiMatrix& d, const RealVector& xi) {
  const auto basis = generator_basis(d.d_out());
  return ChoiMatrix(d.matrix() - tensor(basis.combine(xi), identity(d.d_in())), d.d_in(),
                    d.d_out());
}

AccessibilityReport linear_accessibility_test(const ChoiMatrix& d,
                                              const AccessibilityConfig& config) {
  if (!channel_properties(d).trace_preserving) {
    throw ContractViolation("linear_accessibility_test: map is not trace preserving");
  }
  MinEigenvalueObjective objective(d.matrix(), shift_directions(d));
  RealVector x0 = config.xi0.size() ? config.xi0 : RealVector::Zero(objective.dimension());
  const auto opt = maximize_min_eigenvalue(objective, x0, config.optimizer);

  AccessibilityReport r;
  r.xi_star = opt.x;
  r.lambda_min_star = opt.value;
  r.iterations = opt.iterations;
  r.converged = opt.converged;
  std::ostringstream diag;
  diag << opt.message << "; " << opt.iterations << " iterations";
  if (opt.value >= -config.tol) {
    r.status = AccessStatus::accessible;
    r.certificate = kraus_from_choi(shifted_choi(d, opt.x));
  } else if (!opt.converged) {
    r.status = AccessStatus::boundary;
    diag << "; optimizer did not converge";
  } else if (opt.value < -10.0 * config.tol) {
    r.status = AccessStatus::not_accessible;
  } else {
    r.status = AccessStatus::boundary;
    diag << "; lambda_min within 10 tol of zero";
  }
  r.diagnostics = diag.str();
  return r;
}

double transpose_lambda_min(const RealVector& xi) {
  if (xi.size() != 3) throw DimensionError("transpose_lambda_min: qubit shift has 3 components");
  return -std::sqrt(1.0 + xi.squaredNorm());
}

ChoiMatrix tprime_choi(double p) {
  return ChoiMatrix(p * depolarizing_choi(2).matrix() + (1.0 - p) * transpose_choi(2).matrix(), 2,
                    2);
}

std::optional<double> accessibility_threshold(const std::function<ChoiMatrix(double)>& family,
                                              double lo, double hi, double tol,
                                              const AccessibilityConfig& config) {
  if (!(lo < hi)) throw InvalidArgument("accessibility_threshold: need lo < hi");
  auto accessible = [&](double p) {
    return linear_accessibility_test(family(p), config).status == AccessStatus::accessible;
  };
  const bool at_lo = accessible(lo);
  const bool at_hi = accessible(hi);
  if (at_lo == at_hi) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (accessible(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

UnitalCpResult unital_cp_check(const AffineMapForm& f, double tol) {
  const Index d = f.kraus.d_out();
  if (f.kraus.d_in() != d) throw DimensionError("unital_cp_check: map must be square");
  const Matrix mixed = identity(d) / static_cast<double>(d);
  UnitalCpResult r;
  r.unital = max_abs(apply_affine_form(f, mixed) - mixed) <= tol;
  r.min_eigenvalue = min_eigenvalue(choi_of_affine(f).matrix());
  if (r.unital) {
    if (r.min_eigenvalue < -tol) {
      std::ostringstream os;
      os << "unital_cp_check: unital state-independent affine form has a non-PSD dynamical "
            "matrix (min eigenvalue "
         << r.min_eigenvalue << ")";
      throw ContractViolation(os.str());
    }
    r.cp_forced = true;
  }
  return r;
}

}  // namespace noncp
