// Command-line front end for the minimal intrinsic graph laboratory.
//
// Subcommands: area, curvature, solve, stability, foliate, calibrate,
// metric, verify.  Every run writes an append-only manifest into --out.
// Exit codes: 0 success, 1 verdict failure, 2 usage or config error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"

#include "hgraph/hgraph.hpp"

using namespace hgraph;
using nlohmann::json;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "runs";
  std::string grid_list;  // m1,...,m2n
  int n = 0;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON config file");
  cmd->add_option("--out", a.out_dir, "output directory (manifest + exports)");
  cmd->add_option("--grid", a.grid_list, "lattice sizes m1,...,m2n (overrides config)");
  cmd->add_option("--n", a.n, "Heisenberg index n (overrides config)");
  cmd->add_option("--seed", a.seed, "seed for generated fields");
  cmd->add_option("--tol", a.tol, "override the command's main tolerance");
}

json load_config(const CommonArgs& a) {
  json cfg = json::object();
  if (!a.config_path.empty()) {
    std::ifstream is(a.config_path);
    if (!is) throw std::runtime_error("cannot read config: " + a.config_path);
    std::stringstream ss;
    ss << is.rdbuf();
    cfg = json::parse(ss.str(), nullptr, false);
    if (cfg.is_discarded()) throw std::runtime_error("malformed JSON config: " + a.config_path);
  }
  if (a.n > 0) cfg["n"] = a.n;
  if (!a.grid_list.empty()) {
    std::vector<int> m;
    std::stringstream ss(a.grid_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) m.push_back(std::stoi(tok));
    cfg["grid"] = m;
  }
  if (!cfg.contains("seed")) cfg["seed"] = a.seed;
  return cfg;
}

GridPtr make_domain(const json& cfg) {
  if (!cfg.contains("n")) throw std::runtime_error("config needs n (or pass --n)");
  const int n = cfg.at("n").get<int>();
  const int d = 2 * n;
  std::vector<int> m(static_cast<size_t>(d), 9);
  if (cfg.contains("grid")) {
    if (cfg.at("grid").is_array()) {
      m = cfg.at("grid").get<std::vector<int>>();
    } else {
      m.assign(static_cast<size_t>(d), cfg.at("grid").get<int>());
    }
  }
  std::vector<double> lo(static_cast<size_t>(d), 0.0), hi(static_cast<size_t>(d), 1.0);
  if (cfg.contains("lo")) lo = cfg.at("lo").get<std::vector<double>>();
  if (cfg.contains("hi")) hi = cfg.at("hi").get<std::vector<double>>();
  return GridDomain::create(n, lo, hi, m);
}

ScalarField make_field(GridPtr dom, const json& cfg, const char* key, const json& fallback) {
  const json spec = cfg.contains(key) ? cfg.at(key) : fallback;
  return field_from_spec(dom, spec.dump());
}

SolverConfig solver_config(const json& cfg, double tol_override) {
  SolverConfig s;
  if (cfg.contains("solver")) {
    const json& j = cfg.at("solver");
    s.residual_tol = j.value("residual_tol", s.residual_tol);
    s.max_newton_iters = j.value("max_newton_iters", s.max_newton_iters);
    s.backtrack_factor = j.value("backtrack_factor", s.backtrack_factor);
    s.min_step = j.value("min_step", s.min_step);
    s.continuation_steps = j.value("continuation_steps", s.continuation_steps);
    s.linear_tol = j.value("linear_tol", s.linear_tol);
    if (j.value("initial_guess", "harmonic") == std::string("zero")) {
      s.initial_guess = SolverConfig::InitialGuess::Zero;
    }
  }
  if (tol_override > 0.0) s.residual_tol = tol_override;
  return s;
}

RunManifest start_manifest(const std::string& command, const json& cfg, GridPtr dom) {
  RunManifest man(command, cfg.dump());
  man.set_grid(*dom);
  man.set_seed(cfg.value("seed", 1ull));
  return man;
}

void warn_low_dimension(const GridDomain& dom) {
  if (dom.below_stability_dimension()) {
    std::cerr << "note: n = 1 is outside the stability theory; fine for cheap checks\n";
  }
}

int finish(RunManifest& man, const CommonArgs& args, bool ok) {
  man.append_to(args.out_dir);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- commands

int cmd_area(const CommonArgs& args) {
  const json cfg = load_config(args);
  GridPtr dom = make_domain(cfg);
  warn_low_dimension(*dom);
  ScalarField u = make_field(dom, cfg, "field", json{{"type", "zero"}});
  RunManifest man = start_manifest("area", cfg, dom);

  const FunctionalValue a = area(u);
  man.add_value("area", a.value);
  man.add_value("box_volume", dom->box_volume());
  std::cout << "area = " << a.value << " (box volume " << dom->box_volume() << ")\n";
  if (cfg.contains("f")) {
    ScalarField f = make_field(dom, cfg, "f", json{{"type", "zero"}});
    const double pv = prescribed_functional(u, f).value;
    man.add_value("prescribed_functional", pv);
    std::cout << "prescribed functional = " << pv << "\n";
  }
  const bool ok = a.value >= dom->box_volume() - 1e-9;
  man.add_verdict("area_dominates_volume", ok);
  return finish(man, args, ok);
}

int cmd_curvature(const CommonArgs& args) {
  const json cfg = load_config(args);
  GridPtr dom = make_domain(cfg);
  warn_low_dimension(*dom);
  ScalarField u = make_field(dom, cfg, "field", json{{"type", "zero"}});
  RunManifest man = start_manifest("curvature", cfg, dom);

  ScalarField H = mean_curvature(u);
  ScalarField M = mean_curvature_nondiv(u);
  const GradientState s = GradientState::compute(u);
  double identity_gap = 0.0;
  for (NodeIndex x : dom->interior()) {
    identity_gap = std::max(identity_gap, std::abs(M[x] - s.W[x] * H[x]));
  }
  man.add_value("curvature_sup", H.interior_max_abs());
  man.add_value("nondivergence_sup", M.interior_max_abs());
  man.add_value("form_identity_gap", identity_gap);

  std::filesystem::create_directories(args.out_dir);
  export_field_csv(H, (std::filesystem::path(args.out_dir) / "curvature.csv").string());
  export_field_json(H, (std::filesystem::path(args.out_dir) / "curvature.json").string());
  std::cout << "curvature sup " << H.interior_max_abs() << ", form identity gap " << identity_gap << "\n";
  man.add_verdict("curvature_evaluated", true);
  return finish(man, args, true);
}

int cmd_solve(const CommonArgs& args, bool probe_basin) {
  const json cfg = load_config(args);
  GridPtr dom = make_domain(cfg);
  warn_low_dimension(*dom);
  ScalarField phi = make_field(dom, cfg, "boundary", json{{"type", "zero"}});
  SolverConfig scfg = solver_config(cfg, args.tol);
  RunManifest man = start_manifest("solve", cfg, dom);
  man.add_tolerance("residual_tol", scfg.residual_tol);

  std::unique_ptr<ScalarField> f;
  if (cfg.contains("f")) f = std::make_unique<ScalarField>(make_field(dom, cfg, "f", json{{"type", "zero"}}));

  auto [u, rep] = solve_dirichlet(dom, phi, f.get(), scfg);
  man.add_value("final_residual", rep.final_residual);
  man.add_value("direct_form_residual", rep.direct_residual);
  man.add_value("newton_iterations", rep.newton_iterations);
  man.add_value("lambda1_sym", rep.lambda1_sym);
  man.add_verdict("converged", rep.converged, rep.diagnosis);
  if (rep.converged) man.add_verdict("strictly_stable", rep.strictly_stable);
  man.add_timing("solve_seconds", rep.wall_seconds);

  std::filesystem::create_directories(args.out_dir);
  export_field_json(u, (std::filesystem::path(args.out_dir) / "solution.json").string());
  export_field_csv(u, (std::filesystem::path(args.out_dir) / "solution.csv").string());

  if (probe_basin) {
    ScalarField profile = cfg.contains("boundary") && phi.max_abs() > 0
                              ? phi
                              : smooth_random_field(dom, cfg.value("seed", 1ull), 1.0);
    const BasinProbe probe = probe_amplitude_basin(dom, profile, scfg);
    man.set_eps0(probe.eps0);
    std::cout << "measured amplitude basin eps0 = " << probe.eps0 << "\n";
  }

  if (rep.converged) {
    std::cout << "converged in " << rep.newton_iterations << " Newton steps, residual "
              << rep.final_residual << ", lambda1 " << rep.lambda1_sym << "\n";
  } else {
    std::cout << "did not converge: " << rep.diagnosis << "\n";
  }
  return finish(man, args, rep.converged);
}

int cmd_stability(const CommonArgs& args, bool require_stable) {
  const json cfg = load_config(args);
  GridPtr dom = make_domain(cfg);
  warn_low_dimension(*dom);
  ScalarField u = make_field(dom, cfg, "field", json{{"type", "zero"}});
  RunManifest man = start_manifest("stability", cfg, dom);

  const FirstEigenvalue fe = first_eigenvalue(u);
  man.add_value("lambda1_sym", fe.sym.lambda1);
  man.add_value("lambda1_op", fe.op.lambda1);
  man.add_value("operator_scale", fe.scale);
  man.add_tolerance("stability_threshold", fe.stability_tol * fe.scale);
  man.add_note("lambda1_sym_method", fe.sym.method);
  man.add_note("lambda1_op_method", fe.op.method);
  man.add_verdict("strictly_stable", fe.strictly_stable);
  man.add_verdict("eigensolves_converged", fe.sym.converged && fe.op.converged);

  std::cout << "lambda1 (form) = " << fe.sym.lambda1 << " [" << fe.sym.method << "], lambda1 (operator) = "
            << fe.op.lambda1 << " [" << fe.op.method << "], "
            << (fe.strictly_stable ? "strictly stable" : "not certified stable") << "\n";
  const bool ok = !require_stable || fe.strictly_stable;
  return finish(man, args, ok);
}

int cmd_foliate(const CommonArgs& args) {
  const json cfg = load_config(args);
  GridPtr dom = make_domain(cfg);
  warn_low_dimension(*dom);
  SolverConfig scfg = solver_config(cfg, args.tol);
  RunManifest man = start_manifest("foliate", cfg, dom);

  ScalarField phi = make_field(dom, cfg, "boundary", json{{"type", "zero"}});
  auto [base, rep] = solve_dirichlet(dom, phi, nullptr, scfg);
  man.add_verdict("base_converged", rep.converged, rep.diagnosis);
  if (!rep.converged) {
    std::cout << "base solve failed: " << rep.diagnosis << "\n";
    return finish(man, args, false);
  }

  FoliationConfig fcfg;
  fcfg.solver = scfg;
  const double eps_max = cfg.value("eps_max", 0.05);
  const int leaves = cfg.value("leaves", 5);
  const Foliation fol = build_foliation(base, eps_max, leaves, fcfg);
  man.add_value("base_lambda1", fol.base_lambda1);
  man.add_value("used_eps_max", fol.used_eps_max);
  man.add_value("min_leaf_gap", fol.min_leaf_gap);
  man.add_value("min_derivative", fol.min_derivative);
  man.add_verdict("leaves_ordered", fol.ordered);
  man.add_verdict("derivative_positive", fol.min_derivative > 0.0);
  man.add_verdict("foliation_valid", fol.valid, fol.note);

  std::filesystem::create_directories(args.out_dir);
  export_field_json(fol.derivative, (std::filesystem::path(args.out_dir) / "derivative.json").string());
  for (size_t j = 0; j < fol.leaves.size(); ++j) {
    export_field_json(fol.leaves[j],
                      (std::filesystem::path(args.out_dir) / ("leaf_" + std::to_string(j) + ".json")).string());
  }
  std::cout << (fol.valid ? "foliation valid" : "foliation invalid") << ": " << fol.leaves.size()
            << " leaves, eps_max " << fol.used_eps_max << ", min gap " << fol.min_leaf_gap
            << ", inf v " << fol.min_derivative << "\n";
  return finish(man, args, fol.valid);
}

int cmd_calibrate(const CommonArgs& args, int seeds) {
  const json cfg = load_config(args);
  GridPtr dom = make_domain(cfg);
  warn_low_dimension(*dom);
  SolverConfig scfg = solver_config(cfg, args.tol);
  RunManifest man = start_manifest("calibrate", cfg, dom);

  ScalarField phi = make_field(dom, cfg, "boundary", json{{"type", "random_smooth"}, {"seed", 61}, {"amplitude", 0.04}});
  auto [base, rep] = solve_dirichlet(dom, phi, nullptr, scfg);
  if (!rep.converged || !rep.strictly_stable) {
    man.add_verdict("base_converged_stable", false, rep.diagnosis);
    std::cout << "no strictly stable base\n";
    return finish(man, args, false);
  }
  FoliationConfig fcfg;
  fcfg.solver = scfg;
  const Foliation fol = build_foliation(base, cfg.value("eps_max", 0.04), cfg.value("leaves", 5), fcfg);
  man.add_verdict("foliation_valid", fol.valid, fol.note);
  if (!fol.valid) return finish(man, args, false);

  const double amplitude = cfg.value("amplitude", 0.008);
  int passes = 0, applicable = 0;
  double min_delta = std::numeric_limits<double>::infinity();
  for (int s = 0; s < seeds; ++s) {
    double amp = amplitude;
    Competitor comp = generate_competitor(base, fol, static_cast<std::uint64_t>(s), amp,
                                          BumpProfile::RandomLowFrequency);
    int shrink = 0;
    while (!comp.contained && shrink < 4) {
      amp *= 0.5;
      comp = generate_competitor(base, fol, static_cast<std::uint64_t>(s), amp,
                                 BumpProfile::RandomLowFrequency);
      ++shrink;
    }
    if (!comp.contained) continue;
    ++applicable;
    const CalibrationOutcome out = calibration_compare(base, fol, comp);
    if (out.verdict == CalibrationVerdict::Pass) ++passes;
    min_delta = std::min(min_delta, out.delta_area);
  }
  man.add_value("competitors_contained", applicable);
  man.add_value("competitors_passed", passes);
  man.add_value("min_delta_area", min_delta);
  man.add_tolerance("area_slack", 10.0 * dom->max_spacing() * dom->max_spacing() * dom->box_volume());
  const bool ok = applicable == seeds && passes == seeds;
  man.add_verdict("all_competitors_pass", ok);
  std::cout << passes << "/" << seeds << " competitors pass the area comparison (min delta "
            << min_delta << ")\n";
  return finish(man, args, ok);
}

int cmd_metric(const CommonArgs& args) {
  const json cfg = load_config(args);
  GridPtr dom;
  if (cfg.contains("grid") || cfg.contains("lo")) {
    dom = make_domain(cfg);
  } else {
    dom = metric_adapted_box(cfg.value("n", 2), cfg.value("m", 21), cfg.value("vertical_half_extent", 0.01));
  }
  warn_low_dimension(*dom);
  ScalarField u = make_field(dom, cfg, "field", json{{"type", "zero"}});
  RunManifest man = start_manifest("metric", cfg, dom);

  std::vector<int> center(static_cast<size_t>(dom->dim()));
  for (int k = 0; k < dom->dim(); ++k) center[static_cast<size_t>(k)] = (dom->shape()[static_cast<size_t>(k)] - 1) / 2;
  const NodeIndex src = dom->flat_index(center);

  std::vector<double> radii;
  if (cfg.contains("radii")) {
    radii = cfg.at("radii").get<std::vector<double>>();
  } else {
    for (double r = 4.5; r <= 8.5; r += 1.0) radii.push_back(r * dom->spacing(0));
  }
  const BallVolumeReport rep = ball_volume_exponent(u, src, radii);
  const double expected = 2.0 * dom->heisenberg_n() + 1.0;
  man.add_value("volume_growth_slope", rep.slope);
  man.add_value("expected_homogeneous_dimension", expected);
  man.add_tolerance("slope_tolerance", 0.5);
  const bool flat = u.max_abs() == 0.0;
  const bool ok = !flat || std::abs(rep.slope - expected) <= 0.5;
  man.add_verdict(flat ? "slope_matches_homogeneous_dimension" : "slope_reported", ok);

  const DistanceField dist = cc_distance(u, src);
  man.add_value("max_snap_error", dist.max_snap_error);
  std::filesystem::create_directories(args.out_dir);
  ScalarField dfield(dom, dist.dist);
  export_field_csv(dfield, (std::filesystem::path(args.out_dir) / "distance.csv").string());

  std::cout << "volume-growth slope " << rep.slope << " (homogeneous dimension " << expected << ")\n";
  return finish(man, args, ok);
}

int cmd_verify(const CommonArgs& args, const std::string& suite) {
  const json cfg = load_config(args);
  const int n = cfg.value("n", 1);
  GridPtr dom = cfg.contains("grid") ? make_domain(cfg) : GridDomain::unit_box(n, n == 1 ? 33 : 9);
  RunManifest man = start_manifest("verify", cfg, dom);
  bool ok = true;

  const bool run_variation = suite == "variation" || suite == "all";
  const bool run_stability = suite == "stability" || suite == "all";
  const bool run_identity = suite == "identity" || suite == "all";
  const bool run_metric = suite == "metric" || suite == "all";
  if (!(run_variation || run_stability || run_identity || run_metric)) {
    throw CLI::ValidationError("--suite must be one of variation|stability|identity|metric|all");
  }

  if (run_variation) {
    double worst = 0.0;
    for (unsigned seed = 0; seed < 8; ++seed) {
      ScalarField u = smooth_random_field(dom, 1000 + seed, 0.4);
      ScalarField v = smooth_random_field(dom, 2000 + seed, 0.5, 2, true);
      const double wr = weak_residual(u, v, ScalarField(dom));
      const FDReport fd = fd_first_variation(u, v);
      worst = std::max(worst, fd.discrepancy(wr) / (1.0 + std::abs(fd.extrapolated)));
    }
    man.add_tolerance("first_variation_rel_tol", 1e-6);
    man.add_value("first_variation_worst_rel", worst);
    man.add_verdict("first_variation_oracle", worst <= 1e-6);
    ok = ok && worst <= 1e-6;
  }
  if (run_stability) {
    double worst = 0.0;
    for (unsigned seed = 0; seed < 6; ++seed) {
      ScalarField u = smooth_random_field(dom, 3000 + seed, 0.4);
      ScalarField v = smooth_random_field(dom, 4000 + seed, 0.5, 2, true);
      const double iv = index_form(u, v);
      const FDReport fd = fd_second_variation(u, v);
      worst = std::max(worst, fd.discrepancy(iv) / std::abs(iv));
    }
    man.add_tolerance("second_variation_rel_tol", 1e-5);
    man.add_value("second_variation_worst_rel", worst);
    man.add_verdict("second_variation_oracle", worst <= 1e-5);
    ok = ok && worst <= 1e-5;
  }
  if (run_identity) {
    std::vector<double> hs, errs;
    const std::vector<int> grids = n == 1 ? std::vector<int>{17, 33, 65} : std::vector<int>{9, 13, 17};
    for (int m : grids) {
      auto d = GridDomain::unit_box(n, m);
      ScalarField u = smooth_random_field(d, 42, 0.3, 1);
      const GradientState s = GradientState::compute(u);
      ScalarField H = mean_curvature(u);
      ScalarField M = mean_curvature_nondiv(u);
      double err = 0.0;
      for (NodeIndex x : d->interior()) err = std::max(err, std::abs(M[x] - s.W[x] * H[x]));
      hs.push_back(d->spacing(0));
      errs.push_back(err);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < hs.size(); ++k) {
      sx += std::log(hs[k]);
      sy += std::log(errs[k]);
      sxx += std::log(hs[k]) * std::log(hs[k]);
      sxy += std::log(hs[k]) * std::log(errs[k]);
    }
    const double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    man.add_value("form_identity_order", order);
    man.add_verdict("form_identity_refinement", order >= 0.9);
    ok = ok && order >= 0.9;
  }
  if (run_metric) {
    auto d = metric_adapted_box(2, 13, 0.03);
    ScalarField u0(d);
    std::vector<int> c(4, 6);
    std::vector<double> radii;
    for (double r = 3.5; r <= 7.5; r += 1.0) radii.push_back(r * d->spacing(0));
    const BallVolumeReport rep = ball_volume_exponent(u0, d->flat_index(c), radii);
    man.add_value("volume_growth_slope", rep.slope);
    man.add_verdict("volume_growth", rep.slope >= 3.8 && rep.slope <= 6.0);
    ok = ok && rep.slope >= 3.8 && rep.slope <= 6.0;
  }

  std::cout << (ok ? "verify: all checks within tolerance" : "verify: tolerance violation") << "\n";
  return finish(man, args, ok);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("HGRAPH_THREADS")) {
    const int t = std::atoi(threads);
    if (t > 0) Eigen::setNbThreads(t);
  }

  CLI::App app{"numerical laboratory for minimal intrinsic graphs in the Heisenberg group"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonArgs area_args, curv_args, solve_args, stab_args, fol_args, cal_args, met_args, ver_args;
  bool probe_basin = false, require_stable = false;
  int seeds = 100;
  std::string suite = "all";

  add_common(app.add_subcommand("area", "evaluate the intrinsic area functional"), area_args);
  add_common(app.add_subcommand("curvature", "evaluate divergence and nondivergence curvature"), curv_args);
  auto* solve_cmd = app.add_subcommand("solve", "solve the minimal-graph Dirichlet problem");
  add_common(solve_cmd, solve_args);
  solve_cmd->add_flag("--probe-basin", probe_basin, "bisect the solvable boundary amplitude");
  auto* stab_cmd = app.add_subcommand("stability", "assemble the stability operator and certify stability");
  add_common(stab_cmd, stab_args);
  stab_cmd->add_flag("--require-stable", require_stable, "exit 1 unless strictly stable");
  add_common(app.add_subcommand("foliate", "build a minimal-leaf family around a solved base"), fol_args);
  auto* cal_cmd = app.add_subcommand("calibrate", "area comparison against random competitors");
  add_common(cal_cmd, cal_args);
  cal_cmd->add_option("--seeds", seeds, "number of competitor seeds");
  add_common(app.add_subcommand("metric", "control distance and volume growth"), met_args);
  auto* ver_cmd = app.add_subcommand("verify", "run oracle cross-check suites");
  add_common(ver_cmd, ver_args);
  ver_cmd->add_option("--suite", suite, "variation|stability|identity|metric|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("area")) return cmd_area(area_args);
    if (app.got_subcommand("curvature")) return cmd_curvature(curv_args);
    if (app.got_subcommand("solve")) return cmd_solve(solve_args, probe_basin);
    if (app.got_subcommand("stability")) return cmd_stability(stab_args, require_stable);
    if (app.got_subcommand("foliate")) return cmd_foliate(fol_args);
    if (app.got_subcommand("calibrate")) return cmd_calibrate(cal_args, seeds);
    if (app.got_subcommand("metric")) return cmd_metric(met_args);
    if (app.got_subcommand("verify")) return cmd_verify(ver_args, suite);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
