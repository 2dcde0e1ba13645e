#include "hardy/lifting.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

namespace {

using Idx = std::vector<int>;

SpMat sp_block_diag(const SpMat& a, const SpMat& b) {
  std::vector<Eigen::Triplet<cplx>> tr;
  tr.reserve(a.nonZeros() + b.nonZeros());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SpMat::InnerIterator it(a, k); it; ++it) tr.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < b.outerSize(); ++k)
    for (SpMat::InnerIterator it(b, k); it; ++it) tr.emplace_back(a.rows() + it.row(), a.cols() + it.col(), it.value());
  SpMat out(a.rows() + b.rows(), a.cols() + b.cols());
  out.setFromTriplets(tr.begin(), tr.end());
  return out;
}

Idx levels_upto(const LiftModel& m, int n) {
  Idx out;
  for (int i = 0; i < m.dim_k; ++i)
    if (m.level[i] <= n) out.push_back(i);
  return out;
}

Mat unit_columns(int dim, const Idx& idx) {
  Mat e = Mat::Zero(dim, static_cast<int>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) e(idx[j], static_cast<int>(j)) = 1.0;
  return e;
}

constexpr double kDefectFloor = 1e-10;

double maxabs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

// ||(I - V V^*) X||
double outside(const Mat& V, const Mat& X) {
  if (X.size() == 0) return 0.0;
  return opnorm(Mat(X - V * (V.adjoint() * X)));
}

Mat random_module_map(const PathTower& t, int k, Rng& rng) {
  Mat a = rng.cmat(t.size(k), t.size(k));
  for (int p = 0; p < t.size(k); ++p)
    for (int q = 0; q < t.size(k); ++q)
      if (t.source(k, p) != t.source(k, q)) a(q, p) = 0.0;
  return a;
}

CorrElement random_corr(const PathTower& t, int k, Rng& rng) { return {k, rng.cvec(t.size(k))}; }

}  // namespace

ParrottProblem make_parrott(Mat R, Mat S, Mat T) {
  ParrottProblem p{std::move(R), std::move(S), std::move(T), 0.0};
  Mat col(p.R.rows() + p.S.rows(), p.R.cols());
  col << p.R, p.S;
  Mat row(p.R.rows(), p.R.cols() + p.T.cols());
  row << p.R, p.T;
  p.mu = std::max(opnorm(col), opnorm(row));
  return p;
}

Mat parrott_complete(const ParrottProblem& p) {
  const Eigen::Index rs = p.S.rows(), ct = p.T.cols();
  if (p.mu == 0.0 || rs == 0 || ct == 0) return Mat::Zero(rs, ct);
  // U = -S (mu^2 - R^*R)^{+1/2} R^* (mu^2 - RR^*)^{+1/2} T, written through the SVD of R
  Eigen::JacobiSVD<Mat> svd(p.R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sv = svd.singularValues();
  // directions where R attains the radius carry no defect and are dropped
  const double top = sv.size() ? std::max(p.mu, sv(0)) : p.mu;
  const double mu2 = top * top;
  RVec d = RVec::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double g = mu2 - sv(i) * sv(i);
    if (sv(i) > 1e-14 * top && g > kDefectFloor * mu2) d(i) = sv(i) / g;
  }
  Mat mid = svd.matrixV() * d.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
  return -p.S * mid * p.T;
}

Mat parrott_assemble(const ParrottProblem& p, const Mat& U) {
  Mat out(p.R.rows() + p.S.rows(), p.R.cols() + p.T.cols());
  out << p.R, p.T, p.S, U;
  return out;
}

LiftModel graph_lift_model(const TruncatedFock& f, const InducedSpace& K, const Weights& w) {
  const auto& t = f.tower();
  LiftModel m;
  m.dim_k = K.dim();
  m.dim_h = K.rep().dim;
  m.level = K.level_of();
  m.L0 = K.L(CorrElement{0, Vec::Ones(t.n())});
  for (int k = 1; k <= t.N(); ++k)
    for (int p = 0; p < t.size(k); ++p) {
      CorrElement xi = basis_element(t, k, p);
      m.terms.push_back({to_sparse(K.L(xi)), to_sparse(induce(K, f, normalized_creation(f, w, xi).m))});
    }
  for (int v = 0; v < t.n(); ++v) m.gens.push_back(induce(K, f, phi_inf(f, vertex_unit(t.n(), v))));
  for (int e = 0; e < t.size(1); ++e)
    m.gens.push_back(induce(K, f, weighted_creation(f, w, basis_element(t, 1, e)).m));
  m.graph = GraphLiftData{&f, &K, &w};
  return m;
}

LiftModel dual_lift_model(const DualFock& d, const DualWeights& dw) {
  LiftModel m;
  m.dim_k = d.dim();
  m.dim_h = d.K().rep().dim;
  m.level = d.level_of();
  m.L0 = d.L_identity();
  for (int k = 1; k <= d.N(); ++k)
    for (int a : d.parseval_tuples(k)) {
      Vec e = Vec::Zero(d.num_tuples(k));
      e(a) = 1.0;
      m.terms.push_back({to_sparse(d.L(e, k)), to_sparse(d.to_coords(dual_normalized_creation(d, dw, e, k)))});
    }
  for (int u = 0; u < d.num_tuples(0); ++u) m.gens.push_back(d.to_coords(d.phi_total(d.unit_matrix(u))));
  for (int b = 0; b < d.num_tuples(1); ++b) {
    Vec e = Vec::Zero(d.num_tuples(1));
    e(b) = 1.0;
    m.gens.push_back(d.to_coords(dual_creation(d, dw, e, 1)));
  }
  return m;
}

LiftModel direct_sum(const LiftModel& a, const LiftModel& b) {
  if (a.terms.size() != b.terms.size() || a.gens.size() != b.gens.size())
    throw Error("direct_sum: models carry different algebras");
  LiftModel m;
  m.dim_k = a.dim_k + b.dim_k;
  m.dim_h = a.dim_h + b.dim_h;
  m.level = a.level;
  m.level.insert(m.level.end(), b.level.begin(), b.level.end());
  m.L0 = block_diag({a.L0, b.L0});
  for (size_t i = 0; i < a.terms.size(); ++i)
    m.terms.push_back({sp_block_diag(a.terms[i].L, b.terms[i].L), sp_block_diag(a.terms[i].W, b.terms[i].W)});
  for (size_t i = 0; i < a.gens.size(); ++i) m.gens.push_back(block_diag({a.gens[i], b.gens[i]}));
  return m;
}

LiftModel copies(const LiftModel& m, int s) {
  if (s < 1) throw Error("copies: need at least one copy");
  LiftModel out = m;
  out.graph.reset();
  for (int i = 1; i < s; ++i) out = direct_sum(out, m);
  return out;
}

double parseval_residual(const LiftModel& m) {
  Mat s = m.L0 * m.L0.adjoint();
  for (const auto& t : m.terms) s += Mat(t.L * t.L.adjoint());
  return maxabs(s - Mat::Identity(m.dim_k, m.dim_k));
}

Mat invariant_closure(const std::vector<Mat>& ops, const Mat& start, double tol) {
  Mat q = orth(start, tol);
  Mat frontier = q;
  while (frontier.cols() > 0) {
    Mat cand(q.rows(), 0);
    for (const auto& op : ops) {
      Mat img = op * frontier;
      Mat next(q.rows(), cand.cols() + img.cols());
      next << cand, img;
      cand = next;
    }
    Mat add = orth_complement_frame(q, cand, tol);
    Mat grown(q.rows(), q.cols() + add.cols());
    grown << q, add;
    q = grown;
    frontier = add;
  }
  return q;
}

double coinvariance_residual(const LiftModel& m, const Mat& V) {
  double r = 0.0;
  for (const auto& y : m.gens) r = std::max(r, outside(V, Mat(y.adjoint() * V)));
  return r;
}

double compression_commutation_residual(const LiftModel& m, const Mat& V, const Mat& G) {
  double r = 0.0;
  for (const auto& y : m.gens) {
    Mat c = V.adjoint() * y * V;
    r = std::max(r, opnorm(Mat(G * c - c * G)));
  }
  return r;
}

LiftState initial_state(const LiftModel& m, const Mat& V, const Mat& G) {
  if (V.rows() != m.dim_k) throw Error("initial_state: frame does not live in K");
  if (maxabs(V.adjoint() * V - Mat::Identity(V.cols(), V.cols())) > 1e-12)
    throw Error("initial_state: frame is not orthonormal");
  if (G.rows() != V.cols() || G.cols() != V.cols()) throw Error("initial_state: G must act on J");
  LiftState st;
  st.n.push_back(-1);
  st.V.push_back(V);
  st.G.push_back(G * V.adjoint());
  return st;
}

std::array<double, 8> step_identity_residuals(const LiftModel& m, const Mat& Vm, const Mat& Vm1, const Mat& Gm, Rng& rng) {
  if (!m.graph) throw Error("step_identity_residuals: needs graph data");
  const auto& f = *m.graph->f;
  const auto& K = *m.graph->K;
  const auto& w = *m.graph->w;
  const auto& t = f.tower();
  const int N = t.N();
  auto W = [&](const CorrElement& xi) { return Mat(induce(K, f, weighted_creation(f, w, xi).m)); };
  auto alpha = [&](const Mat& y) { return Mat(Vm.adjoint() * y * Vm); };
  auto beta = [&](const Mat& y) { return Mat(Vm1.adjoint() * y * Vm); };
  auto sig = [&](const Vec& a) { return K.rep().sigma(a); };
  const Mat g = Gm * m.L0;
  std::array<double, 8> r{};

  int k = rng.integer(1, std::max(1, N - 1));
  int j = rng.integer(0, N - k);
  CorrElement xi = random_corr(t, k, rng), eta = random_corr(t, j, rng);
  Vec a = rng.cvec(t.n());
  Mat y1 = W(eta) + induce(K, f, phi_inf(f, rng.cvec(t.n())));
  Mat y2 = W(random_corr(t, rng.integer(0, N), rng));

  // (1) alpha is multiplicative and intertwines G_m
  r[0] = std::max(maxabs(alpha(y1 * y2) - alpha(y1) * alpha(y2)), maxabs(alpha(y1) * Gm - Gm * y1));
  // (2) beta(W_xi) alpha(Y) = beta(W_xi Y)
  Mat wx = W(xi);
  r[1] = maxabs(beta(wx) * alpha(y1) - beta(wx * y1));
  // (3) beta(W_xi)^* V^* phi(a) V = beta(W_{a^* xi})^*
  Mat pa = Vm1.adjoint() * induce(K, f, phi_inf(f, a)) * Vm1;
  r[2] = maxabs(beta(wx).adjoint() * pa - beta(W(left_mult(t, a.conjugate(), xi))).adjoint());
  // (4) alpha(W_{(Z^{(j)})^{-1} eta}) g = G_m L_eta
  Mat wn = induce(K, f, normalized_creation(f, w, eta).m);
  r[3] = maxabs(alpha(wn) * g - Gm * K.L(eta));
  // (5) alpha(W_{xi a}) g = alpha(W_xi) g sigma(a)
  r[4] = maxabs(alpha(W(right_mult(t, xi, a))) * g - alpha(wx) * g * sig(a));
  // (6) g^* beta(W_{xi a})^* = sigma(a^*) g^* beta(W_xi)^*
  r[5] = maxabs(g.adjoint() * beta(W(right_mult(t, xi, a))).adjoint() -
                sig(a.conjugate()) * g.adjoint() * beta(wx).adjoint());
  // (7), (8) expansion of eta over the path frame under a module map T
  int jj = rng.integer(1, N);
  CorrElement e2 = random_corr(t, jj, rng);
  Mat T = random_module_map(t, jj, rng);
  Mat lhs7 = alpha(W(act(T, e2))) * g, rhs7 = Mat::Zero(lhs7.rows(), lhs7.cols());
  Mat lhs8 = g.adjoint() * beta(W(act(T, e2))).adjoint(), rhs8 = Mat::Zero(lhs8.rows(), lhs8.cols());
  for (int p = 0; p < t.size(jj); ++p) {
    CorrElement b = basis_element(t, jj, p);
    CorrElement piece = act(T, right_mult(t, b, inner_product(t, b, e2)));
    Mat wp = W(piece);
    rhs7 += alpha(wp) * g;
    rhs8 += g.adjoint() * beta(wp).adjoint();
  }
  r[6] = maxabs(lhs7 - rhs7);
  r[7] = maxabs(lhs8 - rhs8);
  return r;
}

LiftState lift_step(const LiftModel& m, const LiftState& st, const LiftOptions& opt) {
  const Mat& Vm = st.V.back();
  const Mat& Gm = st.G.back();
  const int d = static_cast<int>(Vm.cols());
  const int dk = m.dim_k;
  if (d >= dk) throw Error("lift_step: already full");

  int top = 0;
  for (int l : m.level) top = std::max(top, l);
  int n_new = -1;
  for (int n = 0; n <= top; ++n)
    if (outside(Vm, unit_columns(dk, levels_upto(m, n))) > 1e-10) {
      n_new = n;
      break;
    }
  if (n_new < 0) throw Error("lift_step: already full");

  const Mat Kn = unit_columns(dk, levels_upto(m, n_new));
  const Mat Q = orth_complement_frame(Vm, Kn, 1e-10);
  const int q = static_cast<int>(Q.cols());
  Mat V1(dk, d + q);
  V1 << Vm, Q;

  const Mat g = Gm * m.L0;
  const Mat gK = Vm * g;
  Mat sum = Mat::Zero(dk, dk);
  Mat gstar = m.L0 * g.adjoint();
  for (const auto& term : m.terms) {
    Mat wg = term.W * gK;
    sum += wg * term.L.adjoint();
    Mat a = Vm.adjoint() * (term.W * Vm);
    gstar += term.L * Mat(g.adjoint() * a.adjoint());
  }
  const Mat Fstar = V1.adjoint() * sum;

  Idx hi, lo;
  for (int i = 0; i < dk; ++i) (m.level[i] == 0 ? lo : hi).push_back(i);
  StepTrace tr;
  tr.m = st.m() + 1;
  tr.n = n_new;
  tr.dim_j = d + q;
  tr.relationship = std::max(maxabs(Fstar.topRows(d)(Eigen::all, hi) - Gm(Eigen::all, hi)),
                             maxabs(Fstar(Eigen::all, lo)));
  tr.gm_star = maxabs(gstar - Gm.adjoint());
  tr.f_norm = opnorm(Fstar);

  ParrottProblem p = make_parrott(Gm(Eigen::all, hi), Fstar.bottomRows(q)(Eigen::all, hi), Gm(Eigen::all, lo));
  Mat U = parrott_complete(p);
  tr.mu = p.mu;
  tr.parrott_excess = std::max(0.0, opnorm(parrott_assemble(p, U)) - p.mu);

  Mat G1(d + q, dk);
  G1.topRows(d) = Gm;
  G1.bottomRows(q)(Eigen::all, hi) = p.S;
  G1.bottomRows(q)(Eigen::all, lo) = U;

  auto& c = tr.conditions;
  c[0] = n_new > st.n.back() ? 0.0 : 1.0;
  c[1] = q > 0 ? outside(V1, Vm) : 1.0;
  c[2] = outside(V1, Kn);
  for (const auto& y : m.gens) {
    c[3] = std::max(c[3], outside(V1, Mat(y.adjoint() * V1)));
    c[4] = std::max(c[4], opnorm(Mat(V1.adjoint() * y * V1 * G1 - G1 * y)));
  }
  for (int i = 0; i < st.m(); ++i)
    c[5] = std::max(c[5], opnorm(Mat(st.V[i].adjoint() * V1 * G1 - st.G[i])));
  c[6] = std::abs(opnorm(G1) - 1.0);

  if (opt.identity_checks && m.graph) {
    Rng rng(opt.seed + 7919ULL * static_cast<std::uint64_t>(tr.m));
    tr.identities = step_identity_residuals(m, Vm, V1, Gm, rng);
    tr.identities_run = true;
  }

  for (int i = 0; i < 7; ++i) {
    if (!opt.strict_invariance && (i == 3 || i == 4 || i == 6)) continue;
    if (c[i] > opt.tol)
      throw Error("lift step " + std::to_string(tr.m) + ": condition (" + std::to_string(i + 1) + ") residual " +
                  std::to_string(c[i]));
  }

  LiftState out = st;
  out.n.push_back(n_new);
  out.V.push_back(V1);
  out.G.push_back(G1);
  out.trace.push_back(tr);
  return out;
}

LiftResult commutant_lift(const LiftModel& m, const Mat& V, const Mat& G, const LiftOptions& opt) {
  LiftResult res;
  res.hyp_coinvariance = coinvariance_residual(m, V);
  res.hyp_commutation = compression_commutation_residual(m, V, G);
  if (res.hyp_coinvariance > opt.hypothesis_tol)
    throw Error("commutant_lift: J is not co-invariant, residual " + std::to_string(res.hyp_coinvariance));
  if (res.hyp_commutation > opt.hypothesis_tol * std::max(1.0, opnorm(G)))
    throw Error("commutant_lift: G does not commute with the compressions, residual " +
                std::to_string(res.hyp_commutation));
  res.norm_in = opnorm(G);
  if (res.norm_in == 0.0) {
    res.G = Mat::Zero(m.dim_k, m.dim_k);
  } else {
    LiftState st = initial_state(m, V, G / res.norm_in);
    while (st.V.back().cols() < m.dim_k) st = lift_step(m, st, opt);
    res.G = res.norm_in * (st.V.back() * st.G.back());
    res.trace = st.trace;
  }
  for (const auto& tr : res.trace) {
    for (double c : tr.conditions) res.max_condition = std::max(res.max_condition, c);
    if (tr.identities_run)
      for (double l : tr.identities) res.max_identity = std::max(res.max_identity, l);
    res.max_gm_star = std::max(res.max_gm_star, tr.gm_star);
    res.max_parrott_excess = std::max(res.max_parrott_excess, tr.parrott_excess);
  }
  res.norm_out = opnorm(res.G);
  res.conclusions[0] = outside(V, Mat(res.G.adjoint() * V));
  res.conclusions[1] = opnorm(Mat(V.adjoint() * res.G * V - G));
  for (const auto& y : m.gens) res.conclusions[2] = std::max(res.conclusions[2], opnorm(Mat(res.G * y - y * res.G)));
  res.conclusions[3] = std::abs(res.norm_out - res.norm_in);
  return res;
}

LiftResult two_space_lift(const LiftModel& m1, const Mat& V1, const LiftModel& m2, const Mat& V2, const Mat& G,
                          const LiftOptions& opt) {
  if (G.rows() != V2.cols() || G.cols() != V1.cols()) throw Error("two_space_lift: G must map J1 to J2");
  double hyp = 0.0;
  for (size_t i = 0; i < m1.gens.size() && i < m2.gens.size(); ++i) {
    Mat c1 = V1.adjoint() * m1.gens[i] * V1, c2 = V2.adjoint() * m2.gens[i] * V2;
    hyp = std::max(hyp, opnorm(Mat(G * c1 - c2 * G)));
  }
  LiftModel sum = direct_sum(m1, m2);
  Mat V = block_diag({V1, V2});
  const Eigen::Index d1 = V1.cols(), d2 = V2.cols();
  Mat G0 = Mat::Zero(d1 + d2, d1 + d2);
  G0.block(d1, 0, d2, d1) = G;
  LiftResult r0 = commutant_lift(sum, V, G0, opt);

  LiftResult res = r0;
  res.hyp_commutation = hyp;
  res.G = r0.G.block(m1.dim_k, 0, m2.dim_k, m1.dim_k);
  res.norm_in = opnorm(G);
  res.norm_out = opnorm(res.G);
  res.conclusions = {};
  res.conclusions[0] = outside(V1, Mat(res.G.adjoint() * V2));
  res.conclusions[1] = opnorm(Mat(V2.adjoint() * res.G * V1 - G));
  for (size_t i = 0; i < m1.gens.size(); ++i)
    res.conclusions[2] = std::max(res.conclusions[2], opnorm(Mat(res.G * m1.gens[i] - m2.gens[i] * res.G)));
  res.conclusions[3] = std::abs(res.norm_out - res.norm_in);
  return res;
}

}  // namespace hardy
