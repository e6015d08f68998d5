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

// noncp command-line tool: parameter sweeps, accessibility tests and the
// application demos. Results go to --out (or stdout) as CSV or JSON.
//
// Exit codes: 0 success, 1 usage error, 2 contract violation.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noncp/accessibility.hpp"
#include "noncp/affine_dynamics.hpp"
#include "noncp/applications.hpp"
#include "noncp/matrix_io.hpp"
#include "noncp/perturbation.hpp"
#include "noncp/tomography.hpp"

namespace {

using namespace noncp;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string out;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int points = 201;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot write " + g.out);
  f << text;
}

void emit_json(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

std::ostringstream csv_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  return os;
}

// "name:k=v,k=v" -> name and key/value map.
std::pair<std::string, std::map<std::string, std::string>> parse_spec(const std::string& s) {
  std::map<std::string, std::string> kv;
  const auto colon = s.find(':');
  const std::string name = s.substr(0, colon);
  if (colon == std::string::npos) return {name, kv};
  std::stringstream rest(s.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value in '" + s + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return {name, kv};
}

double get_num(const std::map<std::string, std::string>& kv, const std::string& key,
               double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number for " + key + ": " + it->second);
  }
}

// Built-in maps by name, or a Choi matrix from a JSON file.
ChoiMatrix named_choi(const std::string& spec) {
  const auto [name, kv] = parse_spec(spec);
  if (name == "identity") return identity_choi(static_cast<Index>(get_num(kv, "d", 2)));
  if (name == "transpose") return transpose_choi(static_cast<Index>(get_num(kv, "d", 2)));
  if (name == "depolarizing") return depolarizing_choi(static_cast<Index>(get_num(kv, "d", 2)));
  if (name == "tprime") return tprime_choi(get_num(kv, "p", 0.5));
  if (name == "mixture") {
    const double p = get_num(kv, "p", 0.5);
    return ChoiMatrix(p * identity_choi(2).matrix() + (1.0 - p) * transpose_choi(2).matrix(), 2, 2);
  }
  if (name == "toy") return toy_dynamical_matrix(get_num(kv, "a", 0.2), get_num(kv, "theta", 1.0));
  if (name == "affine") {
    RealVector xi(3);
    xi << get_num(kv, "x", 0.0), get_num(kv, "y", 0.0), get_num(kv, "z", 0.0);
    return choi_of_affine({KrausSet::from_operators({identity(2)}), xi});
  }
  if (name == "file") {
    const auto it = kv.find("path");
    if (it == kv.end()) throw UsageError("file: needs path=...");
    return choi_from_json(read_json_file(it->second));
  }
  throw UsageError("unknown map '" + name + "'");
}

std::function<ChoiMatrix(double)> named_family(const std::string& name) {
  if (name == "tprime") return [](double p) { return tprime_choi(p); };
  if (name == "mixture") {
    return [](double p) {
      return ChoiMatrix(p * identity_choi(2).matrix() + (1.0 - p) * transpose_choi(2).matrix(), 2, 2);
    };
  }
  throw UsageError("unknown family '" + name + "' (tprime, mixture)");
}

// ------------------------------------------------------------------ sweep

int run_sweep(const Globals& g, double a) {
  if (g.points < 2) throw UsageError("--points must be at least 2");
  const auto rows = spectrum_sweep(a, theta_grid(g.points));
  auto os = csv_stream();
  os << "theta,lam1,lam2,lam3,lam4,xi_z\n";
  for (const auto& r : rows) {
    os << r.theta;
    for (double v : r.eigenvalues) os << ',' << v;
    os << ',' << r.xi_z << '\n';
  }
  emit(g, os.str());
  return 0;
}

// ----------------------------------------------------------------- access

AccessibilityConfig access_config(const Globals& g) {
  AccessibilityConfig c;
  c.tol = g.tol;
  return c;
}

int run_access_test(const Globals& g, const std::string& map) {
  const ChoiMatrix d = named_choi(map);
  Json j = to_json(linear_accessibility_test(d, access_config(g)));
  j["map"] = map;
  emit_json(g, j);
  return 0;
}

int run_access_threshold(const Globals& g, const std::string& family, double lo, double hi) {
  const auto p = accessibility_threshold(named_family(family), lo, hi, 1e-9, access_config(g));
  Json j = {{"family", family}, {"lo", lo}, {"hi", hi}};
  j["p_star"] = p ? Json(*p) : Json(nullptr);
  emit_json(g, j);
  return 0;
}

// ---------------------------------------------------------------- perturb

std::vector<double> parse_scales(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--scales must be hi:lo:count");
  try {
    return geometric_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
  } catch (const noncp::InvalidArgument& e) {
    throw UsageError(e.what());
  } catch (const std::exception&) {
    throw UsageError("--scales must be hi:lo:count");
  }
}

// Quadratic forms alpha^T Q alpha read from nested arrays of real matrices.
WeakCouplingTemplate template_from_json(const Json& j, Rng& rng) {
  const Index da = j.value("d_a", 2);
  const Index db = j.value("d_b", 2);
  WeakCouplingTemplate t = random_weak_coupling_template(da, db, rng);
  if (j.contains("h_a")) t.h_a = matrix_from_json(j.at("h_a"));
  if (j.contains("h_int")) t.h_int = matrix_from_json(j.at("h_int"));
  if (j.contains("omega0")) t.omega0 = matrix_from_json(j.at("omega0"));
  if (j.contains("t")) t.t = j.at("t").get<double>();
  if (j.contains("assignment")) t.base = assignment_from_json(j.at("assignment"));
  if (j.contains("linear_only") && j.at("linear_only").get<bool>()) {
    t.beta1 = nullptr;
    t.gamma1 = nullptr;
  }
  if (j.contains("beta1")) {
    std::vector<RealMatrix> q;
    for (const auto& m : j.at("beta1")) q.push_back(real_matrix_from_json(m));
    t.beta1 = [q](const RealVector& a) {
      RealVector out(static_cast<Index>(q.size()));
      for (std::size_t k = 0; k < q.size(); ++k) out(static_cast<Index>(k)) = a.dot(q[k] * a);
      return out;
    };
  }
  if (j.contains("gamma1")) {
    std::vector<std::vector<RealMatrix>> r;
    for (const auto& row : j.at("gamma1")) {
      r.emplace_back();
      for (const auto& m : row) r.back().push_back(real_matrix_from_json(m));
    }
    t.gamma1 = [r](const RealVector& a) {
      const Index rows = static_cast<Index>(r.size());
      const Index cols = rows == 0 ? 0 : static_cast<Index>(r[0].size());
      RealMatrix out(rows, cols);
      for (Index i = 0; i < rows; ++i) {
        for (Index k = 0; k < cols; ++k) {
          out(i, k) = a.dot(r[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * a);
        }
      }
      return out;
    };
  }
  return t;
}

int run_perturb_scan(const Globals& g, const std::string& config, const std::string& scales) {
  Rng rng(g.seed);
  const Json cfg = config.empty() ? Json::object() : read_json_file(config);
  const WeakCouplingTemplate tmpl = template_from_json(cfg, rng);
  const ScalingResult res = scaling_exponent(tmpl, parse_scales(scales));

  auto os = csv_stream();
  os << "s,epsilon,eta,noncp,nonlin,shift\n";
  for (const auto& p : res.scan.points) {
    os << p.s << ',' << p.epsilon << ',' << p.eta << ',' << p.metrics.noncp << ','
       << p.metrics.nonlin << ',' << p.metrics.shift << '\n';
  }
  Json summary = {{"status", to_string(res.status)}, {"message", res.message}};
  summary["slope"] = res.slope ? Json(*res.slope) : Json(nullptr);
  if (g.out.empty() || g.out == "-") {
    std::cout << os.str();
    std::cerr << summary.dump() << "\n";
  } else {
    emit(g, os.str());
    std::cout << summary.dump(2) << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- decouple

int run_decouple(const Globals& g, double coupling, double t, int samples) {
  const DecouplingModel model = DecouplingModel::spin_echo(coupling, t);
  Rng rng(g.seed);
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const DensityMatrix rho = random_density(2, rng);
    const DensityMatrix omega = random_density(2, rng);
    err = std::max(err, trace_norm(decoupling_sequence(model, rho, omega) - rho.matrix()));
  }
  Json j = {{"g", coupling}, {"t", t}, {"samples", samples}, {"recovery_error", err}};
  try {
    const RecoveryMap rm = recovery_map_choi(model);
    RealVector plus(3);
    plus << 0.4, 0.0, 0.0;
    const GeneratorBasis basis = generator_basis(2);
    j["recovery_map_min_eig"] = rm.min_eigenvalue;
    j["recovery_map_non_cp"] = rm.non_cp;
    j["contraction"] = to_json(rm.contraction);
    j["witness_distance_ratio"] = distance_ratio(rm.choi, DensityMatrix(basis.from_bloch(plus)),
                                                 DensityMatrix(basis.from_bloch(-plus)));
    j["recovery_map"] = to_json(rm.choi);
  } catch (const RankDeficient& e) {
    j["recovery_map_min_eig"] = nullptr;
    j["recovery_map_error"] = e.what();
  }
  emit_json(g, j);
  return 0;
}

// ----------------------------------------------------------------- assist

int run_assist_demo(const Globals& g, int n) {
  const AssistedChannel ch = dephasing_copy_channel(n);
  Vector plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  Vector minus(2);
  minus << 1.0, -1.0;
  minus /= std::sqrt(2.0);
  Vector p1 = plus;
  Vector p2 = minus;
  if (n == 2) {
    p1 = tensor(plus, plus).col(0);
    p2 = tensor(minus, plus).col(0);
  }
  const DistinguishabilityGain d = distinguishability_gain(ch, p1, p2);
  const double id_err = max_abs(assisted_transform(ch, p1) - p1 * p1.adjoint());
  emit_json(g, {{"n", n},
                {"assisted", d.assisted},
                {"unassisted", d.unassisted},
                {"gain", d.gain},
                {"identity_error", id_err}});
  return 0;
}

// ------------------------------------------------------------------- tomo

int run_tomo(const Globals& g, const std::string& truth, long long shots, double accept) {
  const ChoiMatrix d = named_choi(truth);
  std::optional<std::int64_t> n;
  if (shots > 0) n = shots;
  const auto rec = simulate_tomography([&](const Matrix& x) { return apply_choi(d, x); },
                                       tomographic_inputs(d.d_in()), d.d_out(), n, g.seed);
  TemplateConfig cfg;
  cfg.accept_threshold = accept;
  cfg.access = access_config(g);
  Json fits = Json::array();
  for (const auto& f : template_comparison(rec, cfg)) fits.push_back(to_json(f));
  emit_json(g, {{"truth", truth},
                {"accept_threshold", accept},
                {"record", to_json(rec)},
                {"fits", std::move(fits)}});
  return 0;
}

// ---------------------------------------------------------------- channel

int run_channel_props(const Globals& g, const std::string& map) {
  const ChoiMatrix d = named_choi(map);
  Json j = to_json(channel_properties(d));
  j["map"] = map;
  j["eigenvalues"] = to_json(RealVector(eigenvalues_hermitian(d.matrix())));
  emit_json(g, j);
  return 0;
}

int run_channel_split(const Globals& g, const std::string& map) {
  const ChoiMatrix d = named_choi(map);
  const DifferenceForm f = difference_form(d);
  const double err = max_abs(choi_from_difference(f).matrix() - d.matrix());
  emit_json(g, {{"map", map},
                {"plus", to_json(f.plus)},
                {"minus", to_json(f.minus)},
                {"reconstruction_error", err}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncp: non-completely-positive reduced dynamics toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Output path (stdout when omitted)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--tol", g.tol, "Accessibility tolerance")->check(CLI::PositiveNumber);
  app.add_option("--points", g.points, "Grid size");

  int code = 0;
  auto* sweep = app.add_subcommand("sweep", "Eigenvalues of D(theta) for the toy extension");
  double a = 0.2;
  sweep->add_option("--a", a, "Correlation strength in [-1, 1/3]");
  sweep->callback([&] { code = run_sweep(g, a); });

  auto* access = app.add_subcommand("access", "Linear accessibility");
  access->require_subcommand(1);
  auto* atest = access->add_subcommand("test", "Test one map");
  std::string map = "transpose";
  atest->add_option("--map", map, "identity|transpose|depolarizing|tprime:p=|mixture:p=|toy:a=,theta=|affine:x=,y=,z=|file:path=");
  atest->callback([&] { code = run_access_test(g, map); });
  auto* athr = access->add_subcommand("threshold", "Accessibility threshold of a family");
  std::string family = "tprime";
  double lo = 0.0;
  double hi = 1.0;
  athr->add_option("--family", family, "tprime|mixture");
  athr->add_option("--lo", lo, "Lower end of the bracket");
  athr->add_option("--hi", hi, "Upper end of the bracket");
  athr->callback([&] { code = run_access_threshold(g, family, lo, hi); });

  auto* perturb = app.add_subcommand("perturb", "Weak coupling scans");
  perturb->require_subcommand(1);
  auto* scan = perturb->add_subcommand("scan", "Scaling of the non-CP and nonlinear parts");
  std::string config;
  std::string scales = "1e-1:1e-3:8";
  scan->add_option("--config", config, "Model JSON (random model from --seed when omitted)");
  scan->add_option("--scales", scales, "hi:lo:count geometric grid");
  scan->callback([&] { code = run_perturb_scan(g, config, scales); });

  auto* dec = app.add_subcommand("decouple", "Spin-echo decoupling and its recovery map");
  double coupling = 1.0;
  double t = 0.7;
  int samples = 20;
  dec->add_option("--g", coupling, "Coupling strength");
  dec->add_option("--t", t, "Half interval");
  dec->add_option("--samples", samples, "Random (rho, omega) pairs")->check(CLI::NonNegativeNumber);
  dec->callback([&] { code = run_decouple(g, coupling, t, samples); });

  auto* assist = app.add_subcommand("assist", "Environment-assisted channels");
  assist->require_subcommand(1);
  auto* demo = assist->add_subcommand("demo", "Dephasing-copy channel with feed-forward");
  int n = 1;
  demo->add_option("--n", n, "Block size")->check(CLI::Range(1, 2));
  demo->callback([&] { code = run_assist_demo(g, n); });

  auto* tomo = app.add_subcommand("tomo", "Simulated process tomography");
  tomo->require_subcommand(1);
  auto* trun = tomo->add_subcommand("run", "Simulate data and compare fit templates");
  std::string truth = "toy:a=0.2,theta=1.0";
  long long shots = 0;
  double accept = 1e-4;
  trun->add_option("--truth", truth, "True map, same names as access test --map");
  trun->add_option("--shots", shots, "Shots per measured generator (0 for exact)")
      ->check(CLI::NonNegativeNumber);
  trun->add_option("--accept", accept, "Residual threshold for accepting a template");
  trun->callback([&] { code = run_tomo(g, truth, shots, accept); });

  auto* channel = app.add_subcommand("channel", "Channel properties");
  channel->require_subcommand(1);
  auto* props = channel->add_subcommand("props", "TP, unital and CP checks");
  props->add_option("--map", map, "Map name or file:path=...");
  props->callback([&] { code = run_channel_props(g, map); });
  auto* split = channel->add_subcommand("split", "Difference form Lambda+ - Lambda-");
  split->add_option("--map", map, "Map name or file:path=...");
  split->callback([&] { code = run_channel_split(g, map); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const noncp::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const noncp::Error& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
