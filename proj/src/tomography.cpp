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

#include "noncp/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace noncp {

namespace {

Matrix solve_superoperator(const TomographyRecord& rec) {
  if (rec.inputs.size() != rec.outputs.size() || rec.inputs.empty()) {
    throw DimensionError("tomography: inputs and outputs must pair up");
  }
  const Index din = rec.d_in;
  const Index dout = rec.d_out;
  const Index k = static_cast<Index>(rec.inputs.size());
  Matrix in(din * din, k);
  Matrix out(dout * dout, k);
  for (Index j = 0; j < k; ++j) {
    const auto& x = rec.inputs[static_cast<std::size_t>(j)];
    const auto& y = rec.outputs[static_cast<std::size_t>(j)];
    if (x.rows() != din || y.rows() != dout) throw DimensionError("tomography: operator shape");
    in.col(j) = vec_rows(x);
    out.col(j) = vec_rows(y);
  }
  Eigen::JacobiSVD<Matrix> svd(in.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector sv = svd.singularValues();
  if (sv.size() < din * din || sv(din * din - 1) <= 1e-10 * sv(0)) {
    throw RankDeficient("tomography: inputs are not tomographically complete");
  }
  return svd.solve(out.transpose()).transpose();
}

double min_eig(const ChoiMatrix& d) { return min_eigenvalue(d.matrix()); }

int parsimony_rank(FitModel m) {
  switch (m) {
    case FitModel::linear_cp:
      return 0;
    case FitModel::affine_with_shift:
      return 1;
    case FitModel::difference_form:
      return 2;
    case FitModel::linear_unconstrained:
      return 3;
  }
  return 4;
}

}  // namespace

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::linear_cp:
      return "linear-cp";
    case FitModel::linear_unconstrained:
      return "linear-unconstrained";
    case FitModel::difference_form:
      return "difference-form";
    case FitModel::affine_with_shift:
      return "affine-with-shift";
  }
  return "unknown";
}

std::vector<DensityMatrix> tomographic_inputs(Index d) {
  std::vector<DensityMatrix> out{DensityMatrix::maximally_mixed(d)};
  for (const auto& s : generator_basis(d)) {
    const double c = 1.0 / std::abs(min_eigenvalue(s));
    out.emplace_back((identity(d) + c * s) / static_cast<double>(d));
  }
  return out;
}

TomographyRecord simulate_tomography(const MapEvaluator& truth,
                                     const std::vector<DensityMatrix>& inputs, Index d_out,
                                     std::optional<std::int64_t> shots, std::uint64_t seed) {
  if (inputs.empty()) throw InvalidArgument("simulate_tomography: no inputs");
  if (shots && *shots <= 0) throw InvalidArgument("simulate_tomography: shots must be positive");
  TomographyRecord rec;
  rec.d_in = inputs.front().dim();
  rec.d_out = d_out;
  rec.shots = shots;
  rec.seed = seed;
  for (const auto& x : inputs) rec.inputs.push_back(x.matrix());

  Rng rng(seed);
  const GeneratorBasis basis = generator_basis(d_out);
  std::vector<EigenSystem> meas;
  for (const auto& s : basis) meas.push_back(eig_hermitian(s));

  for (const auto& x : inputs) {
    if (x.dim() != rec.d_in) throw DimensionError("simulate_tomography: mixed input dimensions");
    const Matrix exact = hermitian_part(truth(x.matrix()));
    if (exact.rows() != d_out || exact.cols() != d_out) {
      throw DimensionError("simulate_tomography: truth output has the wrong dimension");
    }
    if (!shots) {
      rec.outputs.push_back(exact);
      continue;
    }
    // Estimate <s_i> from multinomial counts over the eigenbasis of s_i.
    const Complex tr = exact.trace();
    Matrix est = tr * identity(d_out) / static_cast<double>(d_out);
    for (Index i = 0; i < basis.size(); ++i) {
      const EigenSystem& es = meas[static_cast<std::size_t>(i)];
      std::vector<double> p(static_cast<std::size_t>(d_out));
      double total = 0.0;
      for (Index k = 0; k < d_out; ++k) {
        const double pk = (es.vectors.col(k).adjoint() * exact * es.vectors.col(k))(0, 0).real();
        p[static_cast<std::size_t>(k)] = std::max(0.0, pk);
        total += p[static_cast<std::size_t>(k)];
      }
      std::int64_t left = *shots;
      double mass = total;
      double mean = 0.0;
      for (Index k = 0; k < d_out; ++k) {
        std::int64_t n = left;
        if (k + 1 < d_out) {
          const double q = mass > 0.0 ? std::clamp(p[static_cast<std::size_t>(k)] / mass, 0.0, 1.0) : 0.0;
          n = std::binomial_distribution<std::int64_t>(left, q)(rng);
        }
        mean += es.values(k) * static_cast<double>(n) / static_cast<double>(*shots);
        left -= n;
        mass -= p[static_cast<std::size_t>(k)];
      }
      // Rescale so that the estimate refers to the output's own trace.
      est += 0.5 * mean * total * basis[i];
    }
    rec.outputs.push_back(hermitian_part(est));
  }
  return rec;
}

double fit_residual(const TomographyRecord& rec, const ChoiMatrix& d) {
  double r = 0.0;
  for (std::size_t j = 0; j < rec.inputs.size(); ++j) {
    r = std::max(r, trace_norm(hermitian_part(apply_choi(d, rec.inputs[j]) - rec.outputs[j])));
  }
  return r;
}

FitResult linear_inversion(const TomographyRecord& rec) {
  const Matrix s = solve_superoperator(rec);
  ChoiMatrix choi = choi_from_superoperator(s, rec.d_in, rec.d_out);
  const double res = fit_residual(rec, choi);
  const double lmin = min_eig(choi);
  return FitResult{std::move(choi), res, FitModel::linear_unconstrained, lmin, {}, {}, {}};
}

FitResult fit_affine(const TomographyRecord& rec, const AffineFitConfig& config) {
  FitResult lin = linear_inversion(rec);
  const Index n = rec.d_out * rec.d_out - 1;
  const ChannelProperties props = channel_properties(lin.choi);
  RealVector xi = RealVector::Zero(n);
  std::string note = "linear part CP, zero shift";
  if (!props.cp) {
    const AccessibilityReport rep = linear_accessibility_test(lin.choi, config.access);
    xi = rep.xi_star;
    note = "shift from accessibility test: " + to_string(rep.status);
  }
  ChoiMatrix kraus_part = shifted_choi(lin.choi, xi);
  if (config.enforce_cp) {
    kraus_part = project_to_cptp(kraus_part).choi;
    note += "; CP part projected";
  }
  const Matrix shift = tensor(generator_basis(rec.d_out).combine(xi), identity(rec.d_in));
  ChoiMatrix choi(kraus_part.matrix() + shift, rec.d_in, rec.d_out);
  const double res = fit_residual(rec, choi);
  const double lmin = min_eig(kraus_part);
  return FitResult{std::move(choi), res, FitModel::affine_with_shift, lmin, xi, {}, note};
}

ProjectionResult project_to_cptp(const ChoiMatrix& d, int max_iter, double tol) {
  const Index din = d.d_in();
  const Index dout = d.d_out();
  const Matrix id_out = identity(dout);
  const Matrix id_in = identity(din);

  auto proj_psd = [](const Matrix& x) {
    const EigenSystem es = eig_hermitian(hermitian_part(x));
    const RealVector clipped = es.values.cwiseMax(0.0);
    return Matrix(es.vectors * clipped.asDiagonal() * es.vectors.adjoint());
  };
  auto proj_tp = [&](const Matrix& x) {
    const Matrix delta = output_partial_trace(ChoiMatrix(hermitian_part(x), din, dout)) - id_in;
    return Matrix(x - tensor(id_out, delta) / static_cast<double>(dout));
  };

  Matrix x = d.matrix();
  Matrix p = Matrix::Zero(x.rows(), x.cols());
  Matrix q = Matrix::Zero(x.rows(), x.cols());
  int it = 0;
  bool converged = false;
  for (; it < max_iter; ++it) {
    const Matrix y = proj_psd(x + p);
    p = x + p - y;
    const Matrix x_next = proj_tp(y + q);
    q = y + q - x_next;
    const double step = (x_next - x).norm();
    x = x_next;
    if (step <= tol && min_eigenvalue(hermitian_part(x)) >= -tol) {
      converged = true;
      ++it;
      break;
    }
  }
  // x is TP; mix with 1/d_out (x) 1 to lift any leftover negative eigenvalue.
  x = hermitian_part(x);
  const double lmin = min_eigenvalue(x);
  if (lmin < 0.0) {
    const double lift = 1.0 / static_cast<double>(dout);
    const double s = -lmin / (lift - lmin);
    x = (1.0 - s) * x + s * lift * identity(din * dout);
  }
  const double dist = (x - d.matrix()).norm();
  return ProjectionResult{ChoiMatrix(x, din, dout), it, converged, dist};
}

std::vector<FitResult> template_comparison(const TomographyRecord& rec,
                                           const TemplateConfig& config) {
  FitResult unconstrained = linear_inversion(rec);

  ChoiMatrix cp = project_to_cptp(unconstrained.choi).choi;
  const double cp_res = fit_residual(rec, cp);
  const double cp_min = min_eig(cp);
  FitResult linear_cp{std::move(cp), cp_res, FitModel::linear_cp, cp_min, {}, {},
                      "linear inversion projected onto CPTP maps"};

  AffineFitConfig aff;
  aff.enforce_cp = true;
  aff.access = config.access;
  FitResult affine = fit_affine(rec, aff);

  if (unconstrained.min_eigenvalue < -default_channel_tol(unconstrained.choi)) {
    unconstrained.difference = difference_form(unconstrained.choi);
    unconstrained.note = "non-CP; difference form attached";
  }

  std::vector<FitResult> fits{std::move(linear_cp), std::move(affine), std::move(unconstrained)};
  const double thr = config.accept_threshold;
  std::stable_sort(fits.begin(), fits.end(), [thr](const FitResult& a, const FitResult& b) {
    const bool ga = a.residual <= thr;
    const bool gb = b.residual <= thr;
    if (ga != gb) return ga;
    if (ga) return parsimony_rank(a.model) < parsimony_rank(b.model);
    return a.residual < b.residual;
  });
  return fits;
}

}  // namespace noncp
