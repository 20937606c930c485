// Copyright (C) 2026 arcforge contributors
// SPDX-License-Identifier: Apache-2.0
//
// arcforge: synthesis, verification and family demos for finite-support
// measure transport through ReLU layers.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arcforge/arcs.hpp"
#include "arcforge/canon1d.hpp"
#include "arcforge/families.hpp"
#include "arcforge/json_io.hpp"
#include "arcforge/measure.hpp"
#include "arcforge/relu_net.hpp"
#include "arcforge/rng.hpp"
#include "arcforge/synthesis.hpp"

namespace {

using arcforge::DiscreteMeasure;
using arcforge::ReluNetwork;
using arcforge::StandardArc;
using arcforge::Vec;
using Json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitBadInput = 2;

std::string fnv1a_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

// Self-contained run report: outputs plus named invariant checks; the exit
// code is derived from the checks alone.
struct RunReport {
  Json doc;
  bool pass = true;

  explicit RunReport(const std::string& command) {
    doc["command"] = command;
    doc["inputs"] = Json::object();
    doc["outputs"] = Json::object();
    doc["invariants"] = Json::array();
  }

  void input(const std::string& name, const std::string& path) {
    doc["inputs"][name] = Json{{"path", path}, {"digest", fnv1a_digest(path)}};
  }

  void check(const std::string& name, double value, double threshold, bool ok) {
    doc["invariants"].push_back(
        Json{{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", ok}});
    pass = pass && ok;
  }

  int finish(const std::optional<std::string>& out_path) {
    doc["pass"] = pass;
    if (out_path) {
      std::ofstream out(*out_path);
      out << doc.dump(2) << '\n';
    } else {
      std::cout << doc.dump(2) << '\n';
    }
    return pass ? kExitPass : kExitInvariantFailure;
  }
};

nlohmann::json plain(const Json& j) { return nlohmann::json::parse(j.dump()); }
Json ordered(const nlohmann::json& j) { return Json::parse(j.dump()); }

double max_support_deviation(const DiscreteMeasure& mu, const StandardArc& arc) {
  double dev = 0.0;
  for (const auto& p : mu.points()) dev = std::max(dev, arcforge::distance_to_arc(p, arc));
  return dev;
}

// Shared by `synth` and `verify`: run the pipeline and record the checks.
void run_transport_checks(RunReport& report, const DiscreteMeasure& mu, const StandardArc& target,
                          Json* outputs, ReluNetwork* net_out) {
  const auto result = arcforge::synthesize_arc_transport(mu, target);
  const auto out = arcforge::pushforward(mu, result.net);
  const double deviation = max_support_deviation(out, target);

  // 1.0 is an impossible error for a successful recovery (report fields stay
  // finite even when recovery fails and the check below trips).
  double scale_error = 1.0;
  std::vector<double> recovered_scales;
  try {
    const auto recovered = arcforge::recover_arc(out, target.segments(), result.delta, 1e-9);
    recovered_scales = recovered.scales();
    scale_error = 0.0;
    for (std::size_t i = 0; i < target.segments(); ++i)
      scale_error = std::max(scale_error,
                             std::abs(recovered.scales()[i] - target.scales()[i]));
  } catch (const std::exception&) {
  }

  (*outputs)["delta"] = result.delta;
  (*outputs)["axis"] = result.projection.axis + 1;
  (*outputs)["sign"] = result.projection.sign;
  (*outputs)["breakpoints"] = result.plan.breakpoints;
  (*outputs)["knots"] = result.plan.knots;
  (*outputs)["max_support_deviation"] = deviation;
  (*outputs)["recovered_scales"] = recovered_scales;
  (*outputs)["recovered_scale_error"] = scale_error;

  report.check("delta_positive", result.delta, 0.0, result.delta > 0.0);
  report.check("support_deviation_below_1e-9", deviation, 1e-9, deviation < 1e-9);
  report.check("recovered_scales_within_1e-9", scale_error, 1e-9, scale_error <= 1e-9);
  report.check("delta_distributed", result.delta, result.delta,
               arcforge::is_delta_distributed(out, target, result.delta, 1e-9));
  if (net_out) *net_out = result.net;
}

DiscreteMeasure random_source_measure(arcforge::SplitMix64& rng, std::size_t min_atoms,
                                      std::size_t max_atoms, std::size_t d, std::size_t m) {
  while (true) {
    const std::size_t lo = std::max(min_atoms, m + 1);
    const std::size_t n = lo + static_cast<std::size_t>(rng.uniform_int(
                                   0, static_cast<long>(std::max(max_atoms, lo) - lo)));
    std::vector<Vec> points;
    for (std::size_t i = 0; i < n; ++i) {
      Vec p(d);
      for (auto& c : p) c = rng.uniform(-1.0, 3.0);
      points.push_back(std::move(p));
    }
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& c : w) {
      c = rng.uniform(0.2, 1.0);
      sum += c;
    }
    for (auto& c : w) c /= sum;
    DiscreteMeasure mu(std::move(points), std::move(w));
    try {
      arcforge::project_to_axis(mu, m);
      return mu;
    } catch (const arcforge::NoCoordinateError&) {
      continue;  // resample deterministically
    }
  }
}

StandardArc random_target_arc(arcforge::SplitMix64& rng, std::size_t m) {
  std::vector<double> scales(m, 1.0);
  for (std::size_t i = 0; i + 1 < m; ++i) scales[i] = rng.uniform(0.2, 3.0);
  return StandardArc(m, scales);
}

int cmd_synth(const std::string& measure_path, const std::string& arc_path,
              const std::optional<std::string>& net_path,
              const std::optional<std::string>& report_path,
              const std::optional<std::string>& vertices_path) {
  RunReport report("synth");
  report.input("measure", measure_path);
  report.input("arc", arc_path);
  const auto mu = arcforge::measure_from_json(arcforge::load_json_file(measure_path));
  const auto target = arcforge::arc_from_json(arcforge::load_json_file(arc_path));

  ReluNetwork net{arcforge::ReluLayer(arcforge::Mat::identity(2), Vec(2, 0.0))};
  run_transport_checks(report, mu, target, &report.doc["outputs"], &net);

  if (net_path) arcforge::save_json_file(*net_path, plain(ordered(arcforge::network_to_json(net))));
  if (vertices_path) {
    std::ofstream out(*vertices_path);
    out << arcforge::vertices_csv(target);
  }
  return report.finish(report_path);
}

int cmd_verify(const std::optional<std::string>& measure_path,
               const std::optional<std::string>& arc_path, std::uint64_t seed, int trials,
               const std::optional<std::string>& report_path) {
  RunReport report("verify");
  if (measure_path && arc_path) {
    report.input("measure", *measure_path);
    report.input("arc", *arc_path);
    const auto mu = arcforge::measure_from_json(arcforge::load_json_file(*measure_path));
    const auto target = arcforge::arc_from_json(arcforge::load_json_file(*arc_path));
    run_transport_checks(report, mu, target, &report.doc["outputs"], nullptr);
    return report.finish(report_path);
  }

  arcforge::SplitMix64 rng(seed);
  report.doc["outputs"]["seed"] = seed;
  report.doc["outputs"]["trials"] = trials;
  double worst_deviation = 0.0, worst_scale_error = 0.0, min_delta = 1.0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(2, 12));
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const auto mu = random_source_measure(rng, 10, 50, d, m);
    const auto target = random_target_arc(rng, m);

    Json outputs;
    RunReport inner("verify-trial");
    run_transport_checks(inner, mu, target, &outputs, nullptr);
    worst_deviation = std::max(worst_deviation, outputs["max_support_deviation"].get<double>());
    worst_scale_error = std::max(worst_scale_error, outputs["recovered_scale_error"].get<double>());
    min_delta = std::min(min_delta, outputs["delta"].get<double>());
    if (!inner.pass) report.pass = false;
  }
  report.doc["outputs"]["max_support_deviation"] = worst_deviation;
  report.doc["outputs"]["max_recovered_scale_error"] = worst_scale_error;
  report.doc["outputs"]["min_delta"] = min_delta;
  report.check("all_deviations_below_1e-9", worst_deviation, 1e-9, worst_deviation < 1e-9);
  report.check("all_scale_errors_within_1e-9", worst_scale_error, 1e-9,
               worst_scale_error <= 1e-9);
  report.check("all_deltas_positive", min_delta, 0.0, min_delta > 0.0);
  return report.finish(report_path);
}

const char* form_kind(const arcforge::Canon1DForm& form) {
  if (std::holds_alternative<arcforge::ConstantForm>(form)) return "constant";
  if (std::holds_alternative<arcforge::BoundedRampForm>(form)) return "bounded_ramp";
  return "knee";
}

int cmd_canon(const std::string& net_path, int grid,
              const std::optional<std::string>& report_path) {
  RunReport report("canon");
  report.input("net", net_path);
  const auto net = arcforge::network_from_json(arcforge::load_json_file(net_path));
  const auto pwl = arcforge::to_pwl(net);
  const auto form = arcforge::classify(net);
  const auto params = arcforge::to_three_layer(form);

  Json jform;
  jform["kind"] = form_kind(form);
  if (const auto* c = std::get_if<arcforge::ConstantForm>(&form)) {
    jform["c"] = c->c;
  } else if (const auto* r = std::get_if<arcforge::BoundedRampForm>(&form)) {
    jform["c1"] = r->c1;
    jform["c2"] = r->c2;
    jform["a1"] = r->a1;
    jform["a2"] = r->a2;
  } else {
    const auto& k = std::get<arcforge::KneeForm>(form);
    jform["c"] = k.c;
    jform["a"] = k.a;
    jform["w"] = k.w;
  }
  report.doc["outputs"]["form"] = jform;
  report.doc["outputs"]["three_layer"] =
      Json{{"w1", params.w1}, {"b1", params.b1}, {"w2", params.w2},
           {"b2", params.b2}, {"w3", params.w3}, {"b3", params.b3}};

  // equivalence grid across the breakpoints
  double lo = -10.0, hi = 10.0;
  if (!pwl.breakpoints().empty()) {
    lo = pwl.breakpoints().front() - 10.0;
    hi = pwl.breakpoints().back() + 10.0;
  }
  const auto rewritten = arcforge::realize(params);
  double err_form = 0.0, err_rewrite = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double x = lo + (hi - lo) * i / grid;
    const double direct = arcforge::eval(net, {x})[0];
    err_form = std::max(err_form, std::abs(arcforge::eval_form(form, x) - direct));
    err_rewrite = std::max(err_rewrite, std::abs(arcforge::eval(rewritten, {x})[0] - direct));
  }
  report.doc["outputs"]["max_form_error"] = err_form;
  report.doc["outputs"]["max_rewrite_error"] = err_rewrite;
  report.check("form_matches_network", err_form, 1e-9, err_form <= 1e-9);
  report.check("rewrite_matches_network", err_rewrite, 1e-9, err_rewrite <= 1e-9);
  return report.finish(report_path);
}

int cmd_prokhorov(const std::string& mu_path, const std::string& nu_path, double tol,
                  const std::optional<std::string>& report_path) {
  RunReport report("prokhorov");
  report.input("mu", mu_path);
  report.input("nu", nu_path);
  const auto mu = arcforge::measure_from_json(arcforge::load_json_file(mu_path));
  const auto nu = arcforge::measure_from_json(arcforge::load_json_file(nu_path));

  const double upper = arcforge::prokhorov_upper(mu, nu);
  report.doc["outputs"]["upper"] = upper;
  if (mu.size() + nu.size() <= 20) {
    const double exact = arcforge::prokhorov_exact(mu, nu, tol);
    report.doc["outputs"]["exact"] = exact;
    report.check("upper_dominates_exact", upper - exact, -1e-9, upper >= exact - 1e-9);
    report.check("distance_at_most_one", exact, 1.0, exact <= 1.0);
  } else {
    report.doc["outputs"]["exact"] = nullptr;
    report.check("distance_at_most_one", upper, 1.0, upper <= 1.0);
  }
  return report.finish(report_path);
}

int cmd_gamma(double t, int depth, bool decode, std::size_t dim,
              const std::optional<std::string>& report_path) {
  RunReport report("gamma");
  const auto seq = arcforge::gamma_curve(t, depth);
  report.doc["outputs"]["t"] = t;
  report.doc["outputs"]["depth"] = depth;
  report.doc["outputs"]["sequence"] = seq;
  if (decode) {
    const auto net = arcforge::decode_realisation(seq, dim);
    report.doc["outputs"]["network"] = ordered(arcforge::network_to_json(net));
  }
  return report.finish(report_path);
}

int cmd_walk(double t, const std::vector<std::string>& net_paths, const std::string& measure_path,
             const std::optional<std::string>& report_path) {
  RunReport report("walk");
  report.input("f0", net_paths[0]);
  report.input("f1", net_paths[1]);
  report.input("measure", measure_path);
  const auto f0 = arcforge::network_from_json(arcforge::load_json_file(net_paths[0]));
  const auto f1 = arcforge::network_from_json(arcforge::load_json_file(net_paths[1]));
  const auto mu = arcforge::measure_from_json(arcforge::load_json_file(measure_path));
  const auto mu_t = arcforge::walk_measure(t, f0, f1, mu);
  report.doc["outputs"]["t"] = t;
  report.doc["outputs"]["vertex"] = arcforge::walk_vertex(static_cast<std::size_t>(t));
  report.doc["outputs"]["measure"] = ordered(arcforge::measure_to_json(mu_t));
  const double mass = mu_t.total_mass();
  report.check("mass_preserved", std::abs(mass - 1.0), 1e-12, std::abs(mass - 1.0) <= 1e-12);
  return report.finish(report_path);
}

// Scatter data for the two locality bounds: measure pairs against the
// arc-recovery constant, arc pairs against the scale-map constant.
int cmd_lipschitz(std::uint64_t seed, int measure_pairs, int arc_pairs, std::size_t m, bool csv,
                  const std::optional<std::string>& report_path) {
  arcforge::SplitMix64 rng(seed);
  RunReport report("lipschitz");
  report.doc["outputs"]["seed"] = seed;
  int violations = 0;

  const double phi = std::numbers::pi / (2.0 * static_cast<double>(m));
  const double constant = 2.0 * std::sqrt(2.0) / std::sin(phi);
  Json measure_rows = Json::array();
  std::ostringstream csv_out;
  csv_out.imbue(std::locale::classic());
  csv_out.precision(17);
  csv_out << "kind,lhs,rhs,bound\n";

  const std::size_t per_segment = std::max<std::size_t>(1, 10 / m);
  for (int i = 0; i < measure_pairs; ++i) {
    std::vector<double> scales(m, 1.0);
    for (std::size_t k = 0; k + 1 < m; ++k) scales[k] = rng.uniform(0.4, 2.0);
    StandardArc a1(m, scales);
    auto scales2 = scales;
    for (std::size_t k = 0; k + 1 < m; ++k)
      scales2[k] = std::max(0.05, scales2[k] + rng.uniform(-0.01, 0.01));
    StandardArc a2(m, scales2);

    const auto atoms_on = [&](const StandardArc& arc) {
      const auto v = arc.vertices();
      std::vector<Vec> pts;
      for (std::size_t s = 0; s + 1 < v.size(); ++s)
        for (std::size_t k = 0; k < per_segment; ++k) {
          const double u = (k + 1.0) / (per_segment + 1.0);
          pts.push_back({v[s][0] + u * (v[s + 1][0] - v[s][0]),
                         v[s][1] + u * (v[s + 1][1] - v[s][1])});
        }
      return DiscreteMeasure(pts, std::vector<double>(pts.size(), 1.0 / pts.size()));
    };
    const auto mu1 = atoms_on(a1);
    const auto mu2 = atoms_on(a2);
    const double delta = 1.0 / static_cast<double>(m);
    const double dp = arcforge::prokhorov_exact(mu1, mu2, 1e-9);
    if (dp > delta) continue;  // outside the locality regime
    const double dca = arcforge::arc_metric(a1, a2);
    const bool ok = dca <= constant * (dp + 1e-9);
    if (!ok) ++violations;
    measure_rows.push_back(Json{{"d_p", dp}, {"d_ca", dca}, {"bound", constant * dp}, {"pass", ok}});
    csv_out << "measure_pair," << dp << ',' << dca << ',' << constant * dp << '\n';
  }

  Json arc_rows = Json::array();
  for (int i = 0; i < arc_pairs; ++i) {
    const auto a1 = random_target_arc(rng, m);
    const auto a2 = random_target_arc(rng, m);
    const double dca = arcforge::arc_metric(a1, a2);
    double dscale = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      dscale = std::max(dscale, std::abs(a1.scales()[k] - a2.scales()[k]));
    const bool ok = dscale <= 2.0 * dca + 1e-12;
    if (!ok) ++violations;
    arc_rows.push_back(Json{{"d_ca", dca}, {"d_scale", dscale}, {"bound", 2.0 * dca}, {"pass", ok}});
    csv_out << "arc_pair," << dca << ',' << dscale << ',' << 2.0 * dca << '\n';
  }

  if (csv) {
    std::cout << csv_out.str();
    return violations == 0 ? kExitPass : kExitInvariantFailure;
  }
  report.doc["outputs"]["measure_pairs"] = measure_rows;
  report.doc["outputs"]["arc_pairs"] = arc_rows;
  report.check("no_bound_violations", violations, 0, violations == 0);
  return report.finish(report_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-support measure transport through ReLU layers"};
  app.require_subcommand(1);

  std::string measure_path, arc_path, net_path, mu_path, nu_path;
  std::vector<std::string> walk_nets;
  std::optional<std::string> out_path, report_path, vertices_path;
  std::optional<std::string> verify_measure, verify_arc;
  double t = 0.0, tol = 1e-9;
  int depth = 8, grid = 10000, trials = 20, measure_pairs = 50, arc_pairs = 100;
  std::uint64_t seed = 1;
  std::size_t dim = 2, order = 4;
  bool decode = false, csv = false;

  auto* synth = app.add_subcommand("synth", "synthesize a transport network onto a target arc");
  synth->add_option("--measure", measure_path, "source measure JSON")->required();
  synth->add_option("--arc", arc_path, "target arc JSON")->required();
  synth->add_option("--out", out_path, "write the network JSON here");
  synth->add_option("--report", report_path, "write the report here instead of stdout");
  synth->add_option("--csv-vertices", vertices_path, "dump target arc vertices as CSV");

  auto* verify = app.add_subcommand("verify", "run transport pipelines and check their invariants");
  verify->add_option("--measure", verify_measure, "source measure JSON (with --arc)");
  verify->add_option("--arc", verify_arc, "target arc JSON (with --measure)");
  verify->add_option("--seed", seed, "seed for the randomised suite");
  verify->add_option("--trials", trials, "number of random trials");
  verify->add_option("--report", report_path, "write the report here instead of stdout");

  auto* canon = app.add_subcommand("canon", "canonicalize a one-dimensional network");
  canon->add_option("--net", net_path, "network JSON (one-dimensional)")->required();
  canon->add_option("--verify-grid", grid, "number of grid points for the equivalence check");
  canon->add_option("--report", report_path, "write the report here instead of stdout");

  auto* prokhorov = app.add_subcommand("prokhorov", "distance between two measures");
  prokhorov->add_option("--mu", mu_path, "first measure JSON")->required();
  prokhorov->add_option("--nu", nu_path, "second measure JSON")->required();
  prokhorov->add_option("--tol", tol, "bisection tolerance");
  prokhorov->add_option("--report", report_path, "write the report here instead of stdout");

  auto* gamma = app.add_subcommand("gamma", "evaluate the sequence-space curve");
  gamma->add_option("--t", t, "curve parameter")->required();
  gamma->add_option("--depth", depth, "planar curve recursion depth");
  gamma->add_flag("--decode", decode, "decode the sequence as network parameters");
  gamma->add_option("--dim", dim, "network dimension for --decode");
  gamma->add_option("--report", report_path, "write the report here instead of stdout");

  auto* walk = app.add_subcommand("walk", "evaluate the two-function walk family");
  walk->add_option("--t", t, "walk parameter")->required();
  walk->add_option("--nets", walk_nets, "the two network JSON files")->expected(2)->required();
  walk->add_option("--measure", measure_path, "prototype measure JSON")->required();
  walk->add_option("--report", report_path, "write the report here instead of stdout");

  auto* lipschitz = app.add_subcommand("lipschitz", "sample the locality bounds");
  lipschitz->add_option("--seed", seed, "seed");
  lipschitz->add_option("--pairs", measure_pairs, "number of measure pairs");
  lipschitz->add_option("--arc-pairs", arc_pairs, "number of arc pairs");
  lipschitz->add_option("--m", order, "number of arc segments");
  lipschitz->add_flag("--csv", csv, "emit CSV rows instead of a JSON report");
  lipschitz->add_option("--report", report_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (synth->parsed())
      return cmd_synth(measure_path, arc_path, out_path, report_path, vertices_path);
    if (verify->parsed()) return cmd_verify(verify_measure, verify_arc, seed, trials, report_path);
    if (canon->parsed()) return cmd_canon(net_path, grid, report_path);
    if (prokhorov->parsed()) return cmd_prokhorov(mu_path, nu_path, tol, report_path);
    if (gamma->parsed()) return cmd_gamma(t, depth, decode, dim, report_path);
    if (walk->parsed()) return cmd_walk(t, walk_nets, measure_path, report_path);
    if (lipschitz->parsed())
      return cmd_lipschitz(seed, measure_pairs, arc_pairs, order, csv, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
