#include "hardy/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "hardy/acceptance.hpp"

namespace hardy {

namespace {

const std::set<std::string> kCommands = {"validate", "weights", "fock", "kernel", "pick", "solve", "lift", "selftest"};

json header(const RunConfig& cfg) { return {{"schema", 1}, {"command", cfg.command}, {"seed", cfg.seed}}; }

RunResult rejected(json rep, const std::string& reason) {
  rep["verdict"] = "rejected";
  rep["reason"] = reason;
  return {2, rep};
}

json step_json(const StepTrace& s) {
  json c = json::array();
  for (double v : s.conditions) c.push_back(v);
  return {{"m", s.m}, {"n_m", s.n}, {"dim_Jm", s.dim_j}, {"mu", s.mu}, {"condition_residuals", c}};
}

json lift_json(const LiftResult& r, double tol) {
  static const char* names[4] = {"co-invariance", "compression", "commutation", "norm"};
  json concl = json::object();
  for (int i = 0; i < 4; ++i) concl[names[i]] = annotated(r.conclusions[i], tol);
  json trace = json::array();
  for (const auto& s : r.trace) trace.push_back(step_json(s));
  return {{"norm_in", r.norm_in}, {"norm_out", r.norm_out}, {"conclusions", concl}, {"trace", trace}};
}

// ---- commands

RunResult cmd_validate(const RunConfig& cfg, const json& in) {
  json rep = header(cfg);
  if (in.contains("kernel")) {
    std::vector<double> a;
    for (const auto& v : in.at("kernel")) {
      if (!v.is_number()) throw InputError("kernel coefficients must be numbers");
      a.push_back(v.get<double>());
    }
    const int N = cfg.N > 0 ? std::min<int>(cfg.N, static_cast<int>(a.size()) - 1) : static_cast<int>(a.size()) - 1;
    if (N < 1) throw InputError("kernel: need at least a_0 and a_1");
    BridgeResult br = admissible_from_kernel_coeffs(a, N);
    rep["x"] = br.x;
    if (!br.admissible) return rejected(rep, br.reason);
    rep["verdict"] = "admissible";
    return {0, rep};
  }
  auto b = bundle_from_json(in, cfg.N);
  rep["N"] = b->t.N();
  rep["dim_H"] = b->K.rep().dim;
  rep["X"] = sequence_json(b->x);
  rep["verdict"] = "admissible";
  return {0, rep};
}

RunResult cmd_weights(const RunConfig& cfg, const json& in) {
  auto b = bundle_from_json(in, cfg.N);
  json rep = header(cfg);
  rep["N"] = b->t.N();
  rep["X"] = sequence_json(b->x);
  rep["weights"] = weights_json(b->w);
  double rec = 0.0;
  for (int k = 1; k <= b->t.N(); ++k) {
    Mat s = Mat::Zero(b->t.size(k), b->t.size(k));
    for (int j = 1; j <= k; ++j) s += tensor(b->t, b->x.X[j], j, b->w.Rsq[k - j], k - j);
    rec = std::max(rec, (s - b->w.Rsq[k]).cwiseAbs().maxCoeff());
  }
  rep["residuals"] = {{"Z^(k)* Z^(k) - R_k^-2", annotated(weight_residual(b->w), 1e-10)},
                      {"sum_j X_j (x) R_{k-j}^2 - R_k^2", annotated(rec, 1e-10)}};
  return {0, rep};
}

RunResult cmd_fock(const RunConfig& cfg, const json& in) {
  auto b = bundle_from_json(in, cfg.N);
  json rep = header(cfg);
  Rng rng(cfg.seed);
  json dims = json::array();
  double parse = 0.0;
  for (int k = 0; k <= b->t.N(); ++k) {
    dims.push_back(b->t.size(k));
    parse = std::max(parse, handysums_check(b->f, b->K, k, rng).residual);
  }
  rep["N"] = b->t.N();
  rep["level_dims"] = dims;
  rep["dim_F"] = b->f.dim();
  rep["dim_K"] = b->K.dim();
  rep["residuals"] = {{"Parseval sums", annotated(parse, 1e-10)},
                      {"sum W W^* - (I - Q_0)", annotated(sums_to_projection_check(b->f, b->w, b->x).residual, 1e-10)}};
  if (in.value("dump", false)) {
    json gens = json::array();
    for (int e = 0; e < b->t.size(1); ++e)
      gens.push_back({{"edge", e}, {"W", operator_json(b->f, weighted_creation(b->f, b->w, basis_element(b->t, 1, e)).m)}});
    rep["generators"] = gens;
  }
  return {0, rep};
}

RunResult cmd_kernel(const RunConfig& cfg, const json& in) {
  auto b = bundle_from_json(in, cfg.N);
  const DiscModel& m = b->m;
  json rep = header(cfg);
  const json& pj = in.at("points");
  if (!pj.is_array()) throw InputError("points must be an array");
  std::vector<DiscPoint> pts;
  for (const auto& p : pj) pts.push_back(make_point(m, parse_mat(p)));
  Mat A = in.contains("A") ? parse_mat(in.at("A")) : Mat::Identity(m.dim_h(), m.dim_h());
  if (A.rows() != m.dim_h() || A.cols() != m.dim_h()) throw InputError("A must act on H");
  std::vector<Mat> cols;
  json points = json::array();
  for (const auto& z : pts) {
    cols.push_back(cauchy_column(m, z));
    NeumannReport nr = neumann_check(m, z, A);
    points.push_back({{"phi_norm", z.phi_norm},
                      {"phi_tail", z.phi_tail},
                      {"kernel_tail", z.kernel_tail},
                      {"neumann", {{"residual", annotated(nr.residual, nr.budget + 1e-12)}, {"terms", nr.terms}}}});
  }
  json pairs = json::array();
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j) {
      SeriesValue k = szego_kernel(m, pts[i], pts[j], A);
      const double gap = (k.value - kernel_from_cauchy(m, cols[i], cols[j], A)).cwiseAbs().maxCoeff();
      pairs.push_back({{"w", i}, {"z", j}, {"value", to_json(k.value)}, {"tail", k.tail},
                       {"cauchy_pairing", annotated(gap, 1e-9)}});
    }
  rep["points"] = points;
  rep["kernel"] = pairs;
  return {0, rep};
}

RunResult cmd_pick(const RunConfig& cfg, const json& in, bool solve) {
  auto b = bundle_from_json(in, cfg.N);
  PickProblem p = pick_from_json(in, b->m);
  json rep = header(cfg);
  PickReport r = pick_map_cp_test(b->m, p);
  // CP when the least eigenvalue clears the floor
  rep["choi_min_eig"] = {{"value", r.min_eig}, {"floor", -kChoiFloor * std::max(1.0, r.choi_norm)}, {"ok", r.cp}};
  rep["choi_norm"] = r.choi_norm;
  rep["kernel_tail"] = r.kernel_tail;
  if (!r.cp) return rejected(rep, "Pick map is not completely positive");
  rep["verdict"] = "interpolable";
  if (!solve) return {0, rep};

  const double eps = in.contains("eps") ? in.at("eps").get<double>() : cfg.eps;
  NpSolution sol;
  try {
    sol = np_solve(b->m, b->d, b->dw, p);
  } catch (const Error& e) {
    return rejected(rep, std::string("solver: ") + e.what());
  }
  json evals = json::array(), res = json::array();
  for (const auto& v : sol.values) evals.push_back(to_json(v));
  for (double v : sol.residuals) res.push_back(annotated(v, eps));
  rep["evaluations"] = evals;
  rep["residuals"] = res;
  rep["norm"] = annotated(sol.norm - 1.0, 1e-8);
  rep["truncation_defect"] = sol.defect;
  rep["dim_JB"] = sol.dim_jb;
  rep["dim_JF"] = sol.dim_jf;
  rep["trace"] = lift_json(sol.lift, 1e-8)["trace"];
  if (sol.max_residual > eps) return rejected(rep, "interpolation residual above eps");
  rep["verdict"] = "solved";
  return {0, rep};
}

RunResult cmd_lift(const RunConfig& cfg, const json& in) {
  auto b = bundle_from_json(in, cfg.N);
  const std::string model = in.value("model", "graph");
  if (model != "graph" && model != "dual") throw InputError("model must be \"graph\" or \"dual\"");
  const int upto = in.value("start_level", 1), cols = in.value("start_columns", 2);
  if (upto < 0 || cols < 1) throw InputError("start_level must be >= 0 and start_columns >= 1");
  Rng rng(cfg.seed);
  LiftModel m = model == "graph" ? graph_lift_model(b->f, b->K, b->w) : dual_lift_model(b->d, b->dw);
  Mat C = model == "graph" ? graph_commutant_sample(*b, rng) : dual_commutant_sample(*b, rng);
  std::vector<Mat> ops;
  for (const auto& g : m.gens) ops.push_back(g.adjoint());
  ops.push_back(C.adjoint());
  Mat V = invariant_closure(ops, low_level_start(m, upto, cols, rng));
  json rep = header(cfg);
  rep["model"] = model;
  rep["dim_K"] = m.dim_k;
  rep["dim_J"] = V.cols();
  if (V.cols() == m.dim_k) {
    rep["verdict"] = "J is all of K; nothing to lift";
    return {0, rep};
  }
  LiftOptions opt;
  opt.identity_checks = model == "graph";
  opt.seed = cfg.seed;
  LiftResult r = commutant_lift(m, V, V.adjoint() * C * V, opt);
  rep["lift"] = lift_json(r, 1e-8);
  rep["hypotheses"] = {{"co-invariance", annotated(r.hyp_coinvariance, opt.hypothesis_tol)},
                       {"commutation", annotated(r.hyp_commutation, opt.hypothesis_tol)}};
  if (opt.identity_checks) rep["step_identities"] = annotated(r.max_identity, 1e-9);
  rep["verdict"] = "lifted";
  return {0, rep};
}

RunResult cmd_selftest(const RunConfig& cfg) {
  json rep = selftest_report(cfg.seed);
  return {rep.at("pass").get<bool>() ? 0 : 2, rep};
}

}  // namespace

RunResult run(const RunConfig& cfg, const json& input) {
  if (!kCommands.count(cfg.command)) throw InputError("unknown command \"" + cfg.command + "\"");
  if (cfg.eps <= 0.0) throw InputError("eps must be positive");
  if (cfg.command == "selftest") return cmd_selftest(cfg);
  if (!input.is_object()) throw InputError("input must be a JSON object");
  if (cfg.command == "validate") return cmd_validate(cfg, input);
  if (cfg.command == "weights") return cmd_weights(cfg, input);
  if (cfg.command == "fock") return cmd_fock(cfg, input);
  if (cfg.command == "kernel") return cmd_kernel(cfg, input);
  if (cfg.command == "pick") return cmd_pick(cfg, input, false);
  if (cfg.command == "solve") return cmd_pick(cfg, input, true);
  return cmd_lift(cfg, input);
}

int run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  try {
    json input;
    if (!cfg.input_path.empty()) {
      std::ifstream f(cfg.input_path);
      if (!f) throw InputError("cannot open input " + cfg.input_path);
      try {
        input = json::parse(f);
      } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
      }
    } else if (cfg.command != "selftest") {
      throw InputError("--input is required for " + cfg.command);
    }
    res = run(cfg, input);
  } catch (const Rejection& e) {
    res = {2, {{"schema", 1}, {"command", cfg.command}, {"verdict", "rejected"}, {"reason", e.what()}}};
  } catch (const json::exception& e) {
    res = {1, {{"schema", 1}, {"command", cfg.command}, {"error", std::string("input: ") + e.what()}}};
  } catch (const std::exception& e) {
    // module validation names the violated invariant
    res = {1, {{"schema", 1}, {"command", cfg.command}, {"error", e.what()}}};
  }
  const std::string text = res.report.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output_path);
    if (!out) {
      std::cerr << "cannot write " << cfg.output_path << "\n";
      return 1;
    }
    out << text;
  }
  if (res.report.contains("error")) std::cerr << "error: " << res.report["error"].get<std::string>() << "\n";
  if (res.report.contains("reason")) std::cerr << "rejected: " << res.report["reason"].get<std::string>() << "\n";
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << cfg.command << ": " << secs << " s\n";
  return res.status;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"weighted Hardy algebra toolkit: Fock data, kernels, Pick maps, commutant lifting"};
  RunConfig cfg;
  std::string positional;
  app.add_option("command_name", positional, "same as --command")->check(CLI::IsMember(kCommands));
  app.add_option("--command", cfg.command, "validate, weights, fock, kernel, pick, solve, lift, selftest")
      ->check(CLI::IsMember(kCommands));
  app.add_option("--input", cfg.input_path, "input JSON");
  app.add_option("--output", cfg.output_path, "report path, stdout when absent");
  app.add_option("--N", cfg.N, "truncation level, overrides the input")->check(CLI::PositiveNumber);
  app.add_option("--eps", cfg.eps, "interpolation residual tolerance for solve")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (cfg.command.empty()) cfg.command = positional;
  if (cfg.command.empty()) {
    std::cerr << "a command is required\n" << app.help();
    return 1;
  }
  return run(cfg);
}

}  // namespace hardy
