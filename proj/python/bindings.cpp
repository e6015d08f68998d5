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

#include <optional>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "noncp/accessibility.hpp"
#include "noncp/affine_dynamics.hpp"
#include "noncp/applications.hpp"
#include "noncp/choi.hpp"
#include "noncp/errors.hpp"
#include "noncp/fano.hpp"
#include "noncp/perturbation.hpp"
#include "noncp/tomography.hpp"

namespace py = pybind11;
using namespace noncp;

namespace {

KrausSet kraus_from_list(const std::vector<Matrix>& ops) { return KrausSet::from_operators(ops); }

py::dict report_dict(const AccessibilityReport& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["xi_star"] = r.xi_star;
  d["lambda_min_star"] = r.lambda_min_star;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["diagnostics"] = r.diagnostics;
  return d;
}

py::dict fit_dict(const FitResult& f) {
  py::dict d;
  d["model"] = to_string(f.model);
  d["choi"] = f.choi;
  d["residual"] = f.residual;
  d["min_eigenvalue"] = f.min_eigenvalue;
  d["xi"] = f.xi;
  d["note"] = f.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Non-completely-positive reduced dynamics";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<RankDeficient>(m, "RankDeficient", base.ptr());
  py::register_exception<Unsupported>(m, "Unsupported", base.ptr());

  py::class_<ChoiMatrix>(m, "ChoiMatrix")
      .def(py::init<const Matrix&, Index, Index>(), py::arg("matrix"), py::arg("d_in"), py::arg("d_out"))
      .def_property_readonly("matrix", &ChoiMatrix::matrix)
      .def_property_readonly("d_in", &ChoiMatrix::d_in)
      .def_property_readonly("d_out", &ChoiMatrix::d_out)
      .def("__repr__", [](const ChoiMatrix& c) {
        return "ChoiMatrix(d_in=" + std::to_string(c.d_in()) + ", d_out=" + std::to_string(c.d_out()) + ")";
      });

  py::class_<ChannelProperties>(m, "ChannelProperties")
      .def_readonly("trace_preserving", &ChannelProperties::trace_preserving)
      .def_readonly("unital", &ChannelProperties::unital)
      .def_readonly("cp", &ChannelProperties::cp)
      .def_readonly("min_eigenvalue", &ChannelProperties::min_eigenvalue);

  // Choi calculus.
  m.def("choi_from_kraus", [](const std::vector<Matrix>& ops) { return choi_from_kraus(kraus_from_list(ops)); },
        py::arg("operators"));
  m.def(
      "kraus_from_choi",
      [](const ChoiMatrix& d, double drop_tol) {
        const KrausSet k = kraus_from_choi(d, drop_tol);
        return py::make_tuple(k.weights, k.operators);
      },
      py::arg("choi"), py::arg("drop_tol") = 1e-12, "Returns (weights, operators).");
  m.def("apply_choi", py::overload_cast<const ChoiMatrix&, const Matrix&>(&apply_choi), py::arg("choi"),
        py::arg("rho"));
  m.def("channel_properties", [](const ChoiMatrix& d) { return channel_properties(d); }, py::arg("choi"));
  m.def("identity_choi", &identity_choi, py::arg("d") = 2);
  m.def("transpose_choi", &transpose_choi, py::arg("d") = 2);
  m.def("depolarizing_choi", &depolarizing_choi, py::arg("d") = 2);
  m.def(
      "choi_of_affine",
      [](const std::vector<Matrix>& ops, const RealVector& xi) {
        return choi_of_affine({kraus_from_list(ops), xi});
      },
      py::arg("operators"), py::arg("xi"));

  // Toy extension and affine dynamics.
  m.def("toy_positivity_max", &toy_positivity_max, py::arg("alpha_norm"));
  m.def("toy_domain_radius", &toy_domain_radius, py::arg("a"));
  m.def("toy_extension", &toy_extension, py::arg("alpha"), py::arg("a"));
  m.def("example_xi", &example_xi, py::arg("a"), py::arg("theta"));
  m.def("toy_dynamical_matrix", &toy_dynamical_matrix, py::arg("a"), py::arg("theta"));
  m.def(
      "spectrum_sweep",
      [](double a, int points) {
        const auto rows = spectrum_sweep(a, theta_grid(points));
        RealMatrix out(static_cast<Index>(rows.size()), 6);
        for (std::size_t k = 0; k < rows.size(); ++k) {
          const auto i = static_cast<Index>(k);
          out(i, 0) = rows[k].theta;
          out.block(i, 1, 1, 4) = rows[k].eigenvalues.transpose();
          out(i, 5) = rows[k].xi_z;
        }
        return out;
      },
      py::arg("a"), py::arg("points") = 201, "Rows of (theta, lam1..lam4, xi_z).");
  m.def(
      "ppt_check",
      [](const Matrix& tau, Index d_a, Index d_b) {
        const PptResult r = ppt_check(tau, {d_a, d_b});
        py::dict d;
        d["ppt"] = r.ppt;
        d["min_pt_eigenvalue"] = r.min_pt_eigenvalue;
        d["decides_separability"] = r.decides_separability;
        return d;
      },
      py::arg("tau"), py::arg("d_a") = 2, py::arg("d_b") = 2);

  // Accessibility.
  m.def("tprime_choi", &tprime_choi, py::arg("p"));
  m.def("transpose_lambda_min", &transpose_lambda_min, py::arg("xi"));
  m.def("shifted_choi", &shifted_choi, py::arg("choi"), py::arg("xi"));
  m.def(
      "linear_accessibility_test",
      [](const ChoiMatrix& d, double tol) {
        AccessibilityConfig c;
        c.tol = tol;
        return report_dict(linear_accessibility_test(d, c));
      },
      py::arg("choi"), py::arg("tol") = 1e-7);
  m.def(
      "accessibility_threshold",
      [](const std::function<ChoiMatrix(double)>& family, double lo, double hi, double tol) {
        return accessibility_threshold(family, lo, hi, tol);
      },
      py::arg("family"), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("tol") = 1e-9);

  // Weak coupling.
  m.def(
      "scaling_exponent",
      [](Index d_a, Index d_b, std::uint64_t seed, double hi, double lo, int count) {
        Rng rng(seed);
        const ScalingResult r =
            scaling_exponent(random_weak_coupling_template(d_a, d_b, rng), geometric_grid(hi, lo, count));
        py::dict d;
        d["status"] = to_string(r.status);
        d["slope"] = r.slope;
        d["message"] = r.message;
        RealMatrix scan(static_cast<Index>(r.scan.points.size()), 6);
        for (std::size_t k = 0; k < r.scan.points.size(); ++k) {
          const auto& p = r.scan.points[k];
          scan.row(static_cast<Index>(k)) << p.s, p.epsilon, p.eta, p.metrics.noncp, p.metrics.nonlin,
              p.metrics.shift;
        }
        d["scan"] = scan;
        return d;
      },
      py::arg("d_a") = 2, py::arg("d_b") = 2, py::arg("seed") = 1, py::arg("hi") = 1e-1, py::arg("lo") = 1e-3,
      py::arg("count") = 8, "Scaling of a random weak-coupling model; scan columns s, eps, eta, noncp, nonlin, shift.");

  // Applications.
  m.def(
      "spin_echo",
      [](const Matrix& rho, const Matrix& omega, double g, double t) {
        return decoupling_sequence(DecouplingModel::spin_echo(g, t), DensityMatrix(rho), DensityMatrix(omega));
      },
      py::arg("rho"), py::arg("omega"), py::arg("g") = 1.0, py::arg("t") = 1.0);
  m.def(
      "recovery_map",
      [](double g, double t) {
        const RecoveryMap r = recovery_map_choi(DecouplingModel::spin_echo(g, t));
        py::dict d;
        d["choi"] = r.choi;
        d["min_eigenvalue"] = r.min_eigenvalue;
        d["non_cp"] = r.non_cp;
        d["contraction"] = r.contraction;
        d["offset"] = r.offset;
        return d;
      },
      py::arg("g") = 1.0, py::arg("t") = 1.0);
  m.def(
      "assisted_gain",
      [](const Vector& psi1, const Vector& psi2, int n) {
        const DistinguishabilityGain g = distinguishability_gain(dephasing_copy_channel(n), psi1, psi2);
        return py::make_tuple(g.assisted, g.unassisted);
      },
      py::arg("psi1"), py::arg("psi2"), py::arg("n") = 1,
      "Trace-norm distances (assisted, unassisted) for the dephasing-copy channel.");

  // Tomography.
  m.def(
      "tomography_fits",
      [](const ChoiMatrix& truth, std::optional<std::int64_t> shots, std::uint64_t seed, double accept) {
        const auto rec = simulate_tomography([&](const Matrix& x) { return apply_choi(truth, x); },
                                             tomographic_inputs(truth.d_in()), truth.d_out(), shots, seed);
        TemplateConfig cfg;
        cfg.accept_threshold = accept;
        py::list out;
        for (const auto& f : template_comparison(rec, cfg)) out.append(fit_dict(f));
        return out;
      },
      py::arg("truth"), py::arg("shots") = py::none(), py::arg("seed") = 1, py::arg("accept") = 1e-4,
      "Simulate tomography of a map and return ranked template fits.");
  m.def(
      "project_to_cptp",
      [](const ChoiMatrix& d) {
        const ProjectionResult r = project_to_cptp(d);
        return py::make_tuple(r.choi, r.distance, r.converged);
      },
      py::arg("choi"), "Returns (choi, distance, converged).");
}
