#include "hardy/acceptance.hpp"

#include <cmath>

namespace hardy {

namespace {

double maxabs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

struct Ledger {
  json items = json::array();
  bool pass = true;

  void add(const std::string& name, double value, double tol) {
    json a = annotated(value, tol);
    a["name"] = name;
    pass = pass && value <= tol;
    items.push_back(a);
  }
  void flag(const std::string& name, bool ok, json info = json::object()) {
    info["name"] = name;
    info["ok"] = ok;
    pass = pass && ok;
    items.push_back(info);
  }
};

Criterion finish(int id, const std::string& title, Ledger& l) { return {id, title, l.pass, l.items}; }

Graph loops(int d) { return Graph::make(1, std::vector<std::pair<int, int>>(d, {0, 0})); }
Graph two_cycle() { return Graph::make(2, {{0, 1}, {1, 0}}); }
Graph three_vertex() { return Graph::make(3, {{0, 1}, {1, 2}, {2, 0}, {1, 0}, {0, 0}}); }

struct Config {
  std::string name;
  Graph g;
  std::vector<int> mult;
};

std::vector<Config> graph_configs() {
  return {{"loops2", loops(2), {1}}, {"two_cycle", two_cycle(), {1, 2}}, {"three_vertex", three_vertex(), {1, 2, 1}}};
}

std::function<AdmissibleSequence(const PathTower&)> scalar_seq(std::vector<double> x) {
  return [x](const PathTower& t) { return AdmissibleSequence::from_scalar(t, x); };
}

std::function<AdmissibleSequence(const PathTower&)> random_seq(Rng& rng) {
  return [&rng](const PathTower& t) { return random_graph_sequence(t, rng); };
}

// ---- 1: weight systems

void weight_identities(Ledger& l, const std::string& tag, const PathTower& t, const AdmissibleSequence& x,
                       int composition_depth) {
  Weights w = canonical_weights(t, x);
  double prod = 0.0, rec = 0.0, comp = 0.0;
  for (int k = 0; k <= t.N(); ++k) {
    prod = std::max(prod, maxabs(w.Zp[k].adjoint() * w.Zp[k] - w.Rinv[k] * w.Rinv[k]));
    if (k >= 1) {
      Mat s = Mat::Zero(t.size(k), t.size(k));
      for (int j = 1; j <= k; ++j) s += tensor(t, x.X[j], j, w.Rsq[k - j], k - j);
      rec = std::max(rec, maxabs(s - w.Rsq[k]));
    }
    if (k <= composition_depth) comp = std::max(comp, maxabs(composition_sum(t, x, k) - w.Rsq[k]));
  }
  l.add(tag + ": Z^(k)* Z^(k) - R_k^-2", prod, 1e-10);
  l.add(tag + ": sum_j X_j (x) R_{k-j}^2 - R_k^2", rec, 1e-10);
  l.add(tag + ": composition sum - R_k^2", comp, 1e-10);
}

Criterion criterion1(std::uint64_t seed) {
  Ledger l;
  const int N = 20;
  PathTower t(loops(1), N);
  weight_identities(l, "hardy", t, AdmissibleSequence::from_scalar(t, admissible_from_kernel_coeffs(szego_coeffs(N), N).x), 10);
  weight_identities(l, "dirichlet", t,
                    AdmissibleSequence::from_scalar(t, admissible_from_kernel_coeffs(dirichlet_coeffs(N), N).x), 10);
  Rng rng(seed * 1000 + 1);
  for (int i = 0; i < 5; ++i) {
    std::vector<double> x(N + 1, 0.0);
    x[1] = rng.uniform(0.2, 1.0);
    for (int k = 2; k <= N; ++k) x[k] = rng.uniform() * std::pow(0.5, k);
    weight_identities(l, "random scalar " + std::to_string(i), t, AdmissibleSequence::from_scalar(t, x), 10);
  }
  for (const auto& c : graph_configs()) {
    PathTower tg(c.g, 6);
    weight_identities(l, "graph " + c.name, tg, random_graph_sequence(tg, rng), 6);
  }
  return finish(1, "weight-system identities", l);
}

// ---- 2: scalar bridge

std::vector<double> series_of(const std::vector<double>& x, int N) {
  std::vector<double> a(N + 1, 0.0);
  a[0] = 1.0;
  for (int k = 1; k <= N; ++k)
    for (int j = 1; j <= k && j < static_cast<int>(x.size()); ++j) a[k] += x[j] * a[k - j];
  return a;
}

double round_trip(const std::vector<double>& a, const std::vector<double>& x, int N) {
  std::vector<double> back = series_of(x, N);
  double r = 0.0;
  for (int k = 0; k <= N; ++k) r = std::max(r, std::abs(back[k] - a[k]) / std::max(1.0, std::abs(a[k])));
  return r;
}

Criterion criterion2(std::uint64_t seed) {
  Ledger l;
  const int N = 20;
  BridgeResult h = admissible_from_kernel_coeffs(szego_coeffs(N), N);
  double hx = std::abs(h.x[1] - 1.0);
  for (int k = 2; k <= N; ++k) hx = std::max(hx, std::abs(h.x[k]));
  l.flag("hardy admissible", h.admissible);
  l.add("hardy: x - (1, 0, ...)", hx, 1e-10);
  l.add("hardy round trip", round_trip(szego_coeffs(N), h.x, N), 1e-10);

  BridgeResult d = admissible_from_kernel_coeffs(dirichlet_coeffs(N), N);
  l.flag("dirichlet admissible", d.admissible);
  l.add("dirichlet: |x_1 - 1/2|", std::abs(d.x[1] - 0.5), 1e-10);
  l.add("dirichlet: |x_2 - 1/12|", std::abs(d.x[2] - 1.0 / 12.0), 1e-10);
  l.add("dirichlet round trip", round_trip(dirichlet_coeffs(N), d.x, N), 1e-10);

  BridgeResult b = admissible_from_kernel_coeffs(bergman_coeffs(N), N);
  l.flag("bergman rejected", !b.admissible, {{"reason", b.reason}});
  l.add("bergman: |x_2 + 1|", std::abs(b.x[2] + 1.0), 1e-10);

  Rng rng(seed * 1000 + 2);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    std::vector<double> x(N + 1, 0.0);
    for (int k = 1; k <= N; ++k) x[k] = rng.uniform() * std::pow(0.6, k);
    std::vector<double> a = series_of(x, N);
    BridgeResult r = admissible_from_kernel_coeffs(a, N);
    if (!r.admissible) worst = INFINITY;
    worst = std::max(worst, round_trip(a, r.x, N));
  }
  l.add("random round trips a -> x -> a", worst, 1e-10);
  return finish(2, "scalar bridge", l);
}

// ---- 3: truncated Fock exactness

Criterion criterion3(std::uint64_t seed) {
  Ledger l;
  Rng rng(seed * 1000 + 3);
  std::vector<Config> cs = {{"loops1", loops(1), {2}}, {"loops2", loops(2), {1}}, {"two_cycle", two_cycle(), {1, 2}},
                            {"three_vertex", three_vertex(), {2, 1, 2}}};
  for (const auto& c : cs) {
    PathTower t(c.g, 4);
    TruncatedFock f(t);
    InducedSpace K(t, Representation::make(c.g, c.mult));
    AdmissibleSequence x = random_graph_sequence(t, rng);
    Weights w = canonical_weights(t, x);
    double mult = 0.0, bimod = 0.0, parse = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
      int a = rng.integer(1, 2), b = rng.integer(1, 2);
      CorrElement xi{a, rng.cvec(t.size(a))}, eta{b, rng.cvec(t.size(b))};
      Mat lhs = weighted_creation(f, w, xi).m * weighted_creation(f, w, eta).m;
      mult = std::max(mult, maxabs(lhs - weighted_creation(f, w, tensor(t, xi, eta)).m));
      Vec u = rng.cvec(t.n()), v = rng.cvec(t.n());
      Mat l2 = weighted_creation(f, w, right_mult(t, left_mult(t, u, xi), v)).m;
      bimod = std::max(bimod, maxabs(l2 - phi_inf(f, u) * weighted_creation(f, w, xi).m * phi_inf(f, v)));
    }
    for (int k = 0; k <= t.N(); ++k) parse = std::max(parse, handysums_check(f, K, k, rng).residual);
    l.add(c.name + ": W_xi W_eta - W_{xi (x) eta}", mult, 1e-10);
    l.add(c.name + ": W_{a xi b} - phi(a) W_xi phi(b)", bimod, 1e-10);
    l.add(c.name + ": Parseval sums", parse, 1e-10);
    l.add(c.name + ": sum W W^* - (I - Q_0)", sums_to_projection_check(f, w, x).residual, 1e-10);
  }
  return finish(3, "truncated Fock exactness", l);
}

// ---- 4: Parrott

Criterion criterion4(std::uint64_t seed) {
  Ledger l;
  Rng rng(seed * 1000 + 4);
  double over = 0.0, gap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int a = rng.integer(1, 7), b = rng.integer(1, 7);
    const int c = rng.integer(1, 8 - a), e = rng.integer(1, 8 - b);
    Mat R = rng.cmat(a, b), S = rng.cmat(c, b), T = rng.cmat(a, e);
    if (trial % 4 == 0) {
      // blocks of a norm-one matrix
      Mat M = rng.cmat(a + c, b + e);
      M /= opnorm(M);
      R = M.topLeftCorner(a, b);
      S = M.bottomLeftCorner(c, b);
      T = M.topRightCorner(a, e);
    } else if (trial % 4 == 1) {
      // top singular direction of R sits at the radius with no defect
      Eigen::JacobiSVD<Mat> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
      RVec sv = 0.5 * svd.singularValues() / svd.singularValues()(0);
      sv(0) = 1.0;
      R = svd.matrixU() * sv.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
      const Vec u = svd.matrixU().col(0), v = svd.matrixV().col(0);
      S = 0.3 * S / opnorm(S) * (Mat::Identity(b, b) - v * v.adjoint());
      T = 0.3 * (Mat::Identity(a, a) - u * u.adjoint()) * T / opnorm(T);
    }
    ParrottProblem p = make_parrott(R, S, T);
    const double n = opnorm(parrott_assemble(p, parrott_complete(p)));
    over = std::max(over, n / p.mu - 1.0);
    gap = std::max(gap, std::abs(n - p.mu) / p.mu);
  }
  l.add("max ||completion|| / mu - 1", over, 1e-8);
  l.add("max | ||completion|| - mu | / mu", gap, 1e-8);
  return finish(4, "Parrott completion", l);
}

// ---- 5: commutant lifting

Criterion criterion5(std::uint64_t seed) {
  Ledger l;
  Rng rng(seed * 1000 + 5);
  std::vector<Config> cs = {{"loops1", loops(1), {1}},
                            {"loops2", loops(2), {1}},
                            {"two_cycle", two_cycle(), {1, 2}},
                            {"three_vertex", three_vertex(), {1, 1, 2}}};
  double hyp = 0.0, concl = 0.0, ident = 0.0, cond = 0.0;
  int done = 0, attempts = 0;
  while (done < 20 && attempts < 200) {
    const Config& c = cs[attempts++ % cs.size()];
    ModelBundle s(c.g, c.mult, 3, random_seq(rng));
    LiftModel m = graph_lift_model(s.f, s.K, s.w);
    Mat C = graph_commutant_sample(s, rng);
    std::vector<Mat> ops;
    for (const auto& g : m.gens) ops.push_back(g.adjoint());
    ops.push_back(C.adjoint());
    Mat start = low_level_start(m, 1, rng.integer(1, 2), rng);
    Mat V = invariant_closure(ops, start);
    if (V.cols() == m.dim_k) continue;
    LiftOptions opt;
    opt.identity_checks = true;
    opt.seed = seed + done;
    LiftResult r = commutant_lift(m, V, V.adjoint() * C * V, opt);
    hyp = std::max({hyp, r.hyp_coinvariance, r.hyp_commutation});
    for (double x : r.conclusions) concl = std::max(concl, x);
    ident = std::max(ident, r.max_identity);
    cond = std::max(cond, r.max_condition);
    ++done;
  }
  l.flag("instances", done == 20, {{"count", done}});
  l.add("hypotheses (co-invariance, commutation)", hyp, 1e-9);
  l.add("four conclusions", concl, 1e-8);
  l.add("eight step identities", ident, 1e-9);
  l.add("step conditions", cond, 1e-8);
  return finish(5, "commutant lifting", l);
}

// ---- 6: duality

Criterion criterion6(std::uint64_t seed) {
  Ledger l;
  Rng rng(seed * 1000 + 6);
  std::vector<Config> cs = {{"loops2", loops(2), {1}},
                            {"loops1_m2", loops(1), {2}},
                            {"two_cycle", two_cycle(), {1, 2}},
                            {"three_vertex", three_vertex(), {1, 2, 1}}};
  for (const auto& c : cs) {
    ModelBundle s(c.g, c.mult, 3, random_seq(rng));
    CommutationReport r = commutation_check(s.f, s.d, s.w, s.x);
    l.add(c.name + ": U_k unitarity", std::max(r.unitarity, s.d.unitarity_residual()), 1e-10);
    l.add(c.name + ": U^*(Z_k (x) I)U - C'_k (x) I", r.dw.c_residual, 1e-9);
    l.add(c.name + ": omega transports generators", std::max(r.omega_match, r.creation_match), 1e-9);
    l.add(c.name + ": max generator commutator", r.commutation, 1e-8);
  }
  return finish(6, "duality", l);
}

// ---- 7: kernels

Criterion criterion7(std::uint64_t seed) {
  Ledger l;
  Rng rng(seed * 1000 + 7);
  const int N = 40;
  const Mat one = Mat::Identity(1, 1);
  for (const auto& [name, x] : std::vector<std::pair<std::string, std::vector<double>>>{
           {"hardy", {0.0, 1.0}}, {"dirichlet", admissible_from_kernel_coeffs(dirichlet_coeffs(2 * N), 2 * N).x}}) {
    ModelBundle s(loops(1), {1}, N, scalar_seq(x));
    double excess = -INFINITY;
    for (int i = 0; i < 5; ++i) {
      DiscPoint z = scalar_point(s.m, 0.6 * std::polar(rng.uniform(), 6.283185307179586 * rng.uniform()));
      NeumannReport r = neumann_check(s.m, z, rng.cnormal() * one);
      excess = std::max(excess, r.residual - r.budget);
    }
    l.add(name + ": Neumann residual - budget", excess, 1e-12);
  }
  for (const auto& c : graph_configs()) {
    ModelBundle s(c.g, c.mult, 6, random_seq(rng));
    DiscPoint z = random_point(s.m, 0.4, rng);
    Mat A = Mat::Zero(s.m.dim_h(), s.m.dim_h());
    for (const auto& u : s.m.commutant_units()) A += rng.cnormal() * u;
    NeumannReport r = neumann_check(s.m, z, A);
    l.add(c.name + ": Neumann residual - budget", r.residual - r.budget, 1e-12);
  }
  ModelBundle s(loops(1), {1}, N, scalar_seq({0.0, 1.0}));
  double excess = -INFINITY, pairing = 0.0;
  for (int i = 0; i < 10; ++i) {
    cplx a = 0.8 * std::polar(rng.uniform(), 6.283185307179586 * rng.uniform());
    cplx b = 0.8 * std::polar(rng.uniform(), 6.283185307179586 * rng.uniform());
    DiscPoint w = scalar_point(s.m, a), z = scalar_point(s.m, b);
    SeriesValue k = szego_kernel(s.m, w, z, one);
    excess = std::max(excess, std::abs(k.value(0, 0) - 1.0 / (1.0 - a * std::conj(b))) - k.tail);
    pairing = std::max(pairing, maxabs(k.value - kernel_from_cauchy(s.m, cauchy_column(s.m, w), cauchy_column(s.m, z), one)));
  }
  l.add("szego: |K(w,z) - 1/(1 - w conj z)| - tail", excess, 1e-12);
  l.add("szego: kernel against the Cauchy pairing", pairing, 1e-9);
  return finish(7, "kernel identities", l);
}

// ---- 8: interpolation

Mat scalar(cplx v) { return Mat::Constant(1, 1, v); }

double pseudo_hyperbolic(cplx a, cplx b) { return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b); }

PickProblem forward_instance(const ModelBundle& s, int ns, int nt, Rng& rng) {
  const int dh = s.m.dim_h();
  const int fd = s.f.dim();
  std::vector<std::vector<Mat>> y(ns, std::vector<Mat>(nt));
  Mat big = Mat::Zero(ns * fd, nt * fd);
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < nt; ++b) {
      y[a][b] = phi_inf(s.f, rng.cvec(s.t.n()));
      for (int k = 1; k <= 2; ++k) y[a][b] += weighted_creation(s.f, s.w, {k, rng.cvec(s.t.size(k))}).m;
      big.block(a * fd, b * fd, fd, fd) = y[a][b];
    }
  const double c = 0.5 / opnorm(big);
  PickProblem p;
  p.s = ns;
  p.t = nt;
  for (int i = 0; i < 2; ++i) {
    DiscPoint z = random_point(s.m, 0.15, rng);
    Mat yhat(ns * dh, nt * dh);
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < nt; ++b)
        yhat.block(a * dh, b * dh, dh, dh) = vacuum_column_eval(s.m, z, induce(s.K, s.f, c * y[a][b]));
    Mat B = rng.cmat(ns * dh, ns * dh);
    p.points.push_back(z);
    p.B.push_back(B);
    p.F.push_back(B * yhat);
  }
  return p;
}

PickReport scaled(const DiscModel& m, PickProblem p, double c) {
  for (auto& f : p.F) f *= c;
  return pick_map_cp_test(m, p);
}

Criterion criterion8(std::uint64_t seed) {
  Ledger l;
  Rng rng(seed * 1000 + 8);

  // (a) two-point sweep against the classical criterion
  {
    ModelBundle s(loops(1), {1}, 60, scalar_seq({0.0, 1.0}));
    const cplx z1 = 0.3, z2(-0.1, 0.2), l1 = 0.2, dir = std::polar(1.0, 1.0);
    const double dz = pseudo_hyperbolic(z1, z2);
    PickProblem p;
    p.points = {scalar_point(s.m, z1), scalar_point(s.m, z2)};
    p.B = {scalar(1.0), scalar(1.0)};
    int agree = 0;
    double boundary_eig = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double r = 0.1 * i * dz;
      const cplx l2 = (l1 + r * dir) / (1.0 + std::conj(l1) * r * dir);
      p.F = {scalar(l1), scalar(l2)};
      PickReport rep = pick_map_cp_test(s.m, p);
      // Pick determinant of the Szego kernel
      auto entry = [&](cplx a, cplx b, cplx la, cplx lb) { return (1.0 - la * std::conj(lb)) / (1.0 - a * std::conj(b)); };
      const double det = (entry(z1, z1, l1, l1) * entry(z2, z2, l2, l2) - std::norm(entry(z1, z2, l1, l2))).real();
      agree += rep.cp == (det >= -1e-8);
      if (i == 10) boundary_eig = rep.min_eig;
    }
    l.flag("(a) verdicts agree on 20 points", agree == 20, {{"agree", agree}});
    l.add("(a) boundary Choi min eig magnitude", std::abs(boundary_eig), kChoiFloor);

    const cplx a(0.3, 0.2);
    auto b = [&](cplx z) { return (z - a) / (1.0 - std::conj(a) * z); };
    const cplx w1 = 0.2, w2(0.1, -0.5);
    p.points = {scalar_point(s.m, w1), scalar_point(s.m, w2)};
    p.F = {scalar(b(w1)), scalar(b(w2))};
    NpSolution sol = np_solve(s.m, s.d, s.dw, p);
    l.add("(a) boundary automorphism solve residual", sol.max_residual, 1e-6);
  }

  // (b), (c) forward instances and their infeasible scalings
  std::vector<std::tuple<Config, int, int>> fw = {{{"loops1", loops(1), {1}}, 1, 1},
                                                  {{"loops2", loops(2), {1}}, 1, 1},
                                                  {{"two_cycle_s2", two_cycle(), {1, 2}}, 2, 1},
                                                  {{"two_cycle_t2", two_cycle(), {1, 1}}, 1, 2}};
  for (const auto& [c, ns, nt] : fw) {
    ModelBundle s(c.g, c.mult, 5, random_seq(rng));
    PickProblem p = forward_instance(s, ns, nt, rng);
    PickReport r = pick_map_cp_test(s.m, p);
    l.flag("(b) " + c.name + " CP", r.cp, {{"choi_min_eig", r.min_eig}});
    NpSolution sol = np_solve(s.m, s.d, s.dw, p);
    l.add("(b) " + c.name + " max ||B Y(z) - F||", sol.max_residual, 1e-7);
    l.add("(b) " + c.name + " ||G|| - 1", sol.norm - 1.0, 1e-8);

    // largest feasible scale by bisection; the Choi matrix is monotone in it
    double lo = 1.0, hi = 2.0;
    while (scaled(s.m, p, hi).cp && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (scaled(s.m, p, mid).cp ? lo : hi) = mid;
    }
    PickReport bad = scaled(s.m, p, 1.05 * hi);
    l.add("(c) " + c.name + " Choi min eig at 1.05 x critical", bad.min_eig, -1e-6);
    l.items.back()["critical_scale"] = hi;
  }

  // (d) two weight sequences for the same X
  for (const auto& c : graph_configs()) {
    ModelBundle s(c.g, c.mult, 4, random_seq(rng));
    Weights tw = weights_from_Z(s.t, s.x, twisted_Z(s.t, s.w, rng));
    DiscModel m2(s.K, s.x, tw);
    PickProblem p;
    const int dh = s.m.dim_h();
    for (int i = 0; i < 2; ++i) {
      p.points.push_back(random_point(s.m, 0.5, rng));
      p.B.push_back(rng.cmat(dh, dh));
      p.F.push_back(rng.cmat(dh, dh));
    }
    PickProblem p2 = p;
    for (auto& z : p2.points) z = make_point(m2, z.z);
    PickReport ra = pick_map_cp_test(s.m, p), rb = pick_map_cp_test(m2, p2);
    double diff = 0.0;
    for (size_t v = 0; v < ra.choi.size(); ++v) diff = std::max(diff, maxabs(ra.choi[v] - rb.choi[v]));
    l.add("(d) " + c.name + " Choi difference across weights", diff, 1e-9);
  }
  return finish(8, "interpolation equivalence and solver", l);
}

}  // namespace

Mat graph_commutant_sample(const ModelBundle& s, Rng& rng) {
  Mat c = Mat::Zero(s.d.dim(), s.d.dim());
  for (int u = 0; u < s.d.num_tuples(0); ++u) c += rng.cnormal() * s.d.to_coords(s.d.phi_total(s.d.unit_matrix(u)));
  for (int b = 0; b < s.d.num_tuples(1); ++b) {
    Vec e = Vec::Zero(s.d.num_tuples(1));
    e(b) = 1.0;
    c += 0.5 * rng.cnormal() * s.d.to_coords(dual_creation(s.d, s.dw, e, 1));
  }
  return rho(s.d, c);
}

Mat dual_commutant_sample(const ModelBundle& s, Rng& rng) {
  Mat y = phi_inf(s.f, rng.cvec(s.t.n())) + weighted_creation(s.f, s.w, {1, rng.cvec(s.t.size(1))}).m;
  return pi_sigma(s.d, induce(s.K, s.f, y));
}

Mat low_level_start(const LiftModel& m, int upto, int cols, Rng& rng) {
  Mat v = rng.cmat(m.dim_k, cols);
  for (int i = 0; i < m.dim_k; ++i)
    if (m.level[i] > upto) v.row(i).setZero();
  return v;
}

std::vector<Criterion> run_criteria(std::uint64_t seed) {
  std::vector<Criterion> out;
  for (auto fn : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8}) {
    try {
      out.push_back(fn(seed));
    } catch (const std::exception& e) {
      out.push_back({static_cast<int>(out.size()) + 1, "exception", false, json::array({{{"error", e.what()}}})});
    }
  }
  return out;
}

json selftest_report(std::uint64_t seed) {
  json crit = json::array();
  bool all = true;
  for (const auto& c : run_criteria(seed)) {
    crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"checks", c.detail}});
    all = all && c.pass;
  }
  return {{"schema", 1}, {"command", "selftest"}, {"seed", seed}, {"criteria", crit}, {"pass", all}};
}

}  // namespace hardy
