#include "hardy/interpolation.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

namespace {

double maxabs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Mat identity_copies(int s, const Mat& a) { return kron(Mat::Identity(s, s), a); }

// I_j (x) B : K_{j+l} -> K_j for B : K_l -> H, through the path split
Mat left_identity_tensor(const InducedSpace& K, int j, int l, const Mat& B) {
  const auto& t = K.tower();
  const auto& rep = K.rep();
  Mat out = Mat::Zero(K.level_dim(j), K.level_dim(j + l));
  for (int p = 0; p < t.size(j + l); ++p) {
    auto [a, b] = t.split(j + l, p, j);
    int v = t.source(j, a);
    for (int i = 0; i < rep.mult[t.source(j + l, p)]; ++i)
      for (int i2 = 0; i2 < rep.mult[v]; ++i2)
        out(K.local(j, a, i2), K.local(j + l, p, i)) = B(rep.offset[v] + i2, K.local(l, b, i));
  }
  return out;
}

std::vector<Mat> point_powers(const InducedSpace& K, const Mat& z) {
  std::vector<Mat> pw{Mat::Identity(K.rep().dim, K.rep().dim)};
  for (int k = 1; k <= K.N(); ++k) pw.push_back(pw.back() * K.id_tensor(k - 1, z.adjoint()).adjoint());
  return pw;
}

// P_k = z^{(k)} (X_k (x) I) z^{(k)*}
std::vector<Mat> phi_pieces(const DiscModel& m, const std::vector<Mat>& pw) {
  std::vector<Mat> out;
  for (int k = 1; k <= m.N(); ++k) out.push_back(pw[k] * m.X(k) * pw[k].adjoint());
  return out;
}

double phi_norm_at(const std::vector<Mat>& pieces, double r) {
  Mat s = Mat::Zero(pieces[0].rows(), pieces[0].cols());
  double f = 1.0;
  for (const auto& p : pieces) {
    f *= r;
    s += f * p;
  }
  return opnorm(s);
}

// terms past N with known scalar x_k, bounded through ||z^{(k)}|| <= ||z||^k
double beyond_sum(const DiscModel& m, double znorm2, double r) {
  double s = 0.0;
  for (int k = m.N() + 1; k < static_cast<int>(m.x().scalar.size()); ++k)
    s += m.x().scalar[k] * std::pow(r * znorm2, k);
  return s;
}

}  // namespace

DiscModel::DiscModel(const InducedSpace& K, const AdmissibleSequence& x, const Weights& w) : K_(&K), x_(&x), w_(&w) {
  if (x.N < K.N() || w.N() < K.N()) throw Error("DiscModel: sequence shorter than the truncation");
  for (int k = 0; k <= K.N(); ++k) {
    X_.push_back(K.induce(x.X[k], k, k));
    Rsq_.push_back(K.induce(w.Rsq[k], k, k));
    Zinv_.push_back(K.induce(w.Zp_inv[k], k, k));
  }
  units_ = K.rep().commutant_units();
}

double DiscModel::x_beyond(int k) const {
  if (k <= N() || k >= static_cast<int>(x_->scalar.size())) return 0.0;
  return x_->scalar[k];
}

std::vector<std::pair<int, int>> DiscModel::point_support() const {
  const auto& t = K_->tower();
  const auto& rep = K_->rep();
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < t.size(1); ++e) {
    int r = t.range(1, e), s = t.source(1, e);
    for (int i = 0; i < rep.mult[s]; ++i)
      for (int i2 = 0; i2 < rep.mult[r]; ++i2) out.emplace_back(rep.offset[r] + i2, K_->local(1, e, i));
  }
  return out;
}

Mat point_from_blocks(const DiscModel& m, const std::vector<Mat>& blocks) {
  const auto& K = m.K();
  const auto& t = K.tower();
  const auto& rep = K.rep();
  if (static_cast<int>(blocks.size()) != t.size(1)) throw Error("point: need one block per edge");
  Mat z = Mat::Zero(rep.dim, K.level_dim(1));
  for (int e = 0; e < t.size(1); ++e) {
    int r = t.range(1, e), s = t.source(1, e);
    if (blocks[e].rows() != rep.mult[r] || blocks[e].cols() != rep.mult[s])
      throw Error("point: block of edge " + std::to_string(e) + " has the wrong shape");
    z.block(rep.offset[r], K.local(1, e, 0), rep.mult[r], rep.mult[s]) = blocks[e];
  }
  return z;
}

DiscPoint make_point(const DiscModel& m, const Mat& z) {
  const auto& K = m.K();
  const auto& t = K.tower();
  if (z.rows() != m.dim_h() || z.cols() != K.level_dim(1)) throw Error("point: wrong shape");
  DiscPoint p;
  p.z = z;
  for (int v = 0; v < t.n(); ++v) {
    Vec a = vertex_unit(t.n(), v);
    p.intertwining = std::max(
        p.intertwining, maxabs(z * K.induce(left_action(t, a, 1), 1, 1) - K.rep().sigma(a) * z));
  }
  if (p.intertwining > 1e-10) throw Error("point: not an intertwiner, residual " + std::to_string(p.intertwining));
  p.pw = point_powers(K, z);
  for (int k = 1; k <= m.N(); ++k)
    for (int l = 1; k + l <= m.N(); ++l)
      p.power_residual =
          std::max(p.power_residual, maxabs(p.pw[k + l] - p.pw[k] * left_identity_tensor(K, k, l, p.pw[l])));

  const double zn2 = std::pow(opnorm(z), 2);
  std::vector<Mat> pieces = phi_pieces(m, p.pw);
  p.phi_norm = phi_norm_at(pieces, 1.0);
  p.phi_tail = beyond_sum(m, zn2, 1.0);
  if (p.phi_norm + p.phi_tail > 1.0 - kDiscMargin)
    throw Error("point: outside the disc, ||Phi(I)|| = " + std::to_string(p.phi_norm + p.phi_tail));

  // rho^2 scaling: the tail past N is at most r^{-(N+1)} / (1 - ||Phi_{sqrt(r) z}(I)||)
  const double q = p.phi_norm + p.phi_tail;
  const double rmax = q > 1e-300 ? std::min(1e12, 1.0 / q) : 1e12;
  double best = 1.0 / (1.0 - q);
  for (int i = 1; i <= 200; ++i) {
    double r = std::pow(rmax, i / 200.0);
    double qr = phi_norm_at(pieces, r) + beyond_sum(m, zn2, r);
    if (qr >= 1.0) break;
    best = std::min(best, std::pow(r, -(m.N() + 1)) / (1.0 - qr));
  }
  p.kernel_tail = best;
  if (q == 0.0) p.kernel_tail = 0.0;
  return p;
}

DiscPoint random_point(const DiscModel& m, double radius, Rng& rng) {
  const auto& t = m.K().tower();
  const auto& rep = m.K().rep();
  std::vector<Mat> blocks;
  for (int e = 0; e < t.size(1); ++e) blocks.push_back(rng.cmat(rep.mult[t.range(1, e)], rep.mult[t.source(1, e)]));
  Mat z = point_from_blocks(m, blocks);
  if (radius <= 0.0) return make_point(m, Mat::Zero(z.rows(), z.cols()));
  std::vector<Mat> pw = point_powers(m.K(), z);
  std::vector<Mat> pieces = phi_pieces(m, pw);
  auto phi = [&](double s) { return phi_norm_at(pieces, s * s); };
  double lo = 0.0, hi = 1.0;
  while (phi(hi) < radius) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (phi(mid) < radius ? lo : hi) = mid;
  }
  return make_point(m, lo * z);
}

DiscPoint scalar_point(const DiscModel& m, cplx z) {
  if (m.dim_h() != 1 || m.K().level_dim(1) != 1) throw Error("scalar_point: model is not one-dimensional");
  return make_point(m, Mat::Constant(1, 1, z));
}

SeriesValue phi_map(const DiscModel& m, const DiscPoint& z, const Mat& A) {
  SeriesValue out{Mat::Zero(m.dim_h(), m.dim_h()), z.phi_tail * opnorm(A)};
  for (int k = 1; k <= m.N(); ++k)
    out.value += z.pw[k] * m.X(k) * m.K().id_tensor_commutant(k, A) * z.pw[k].adjoint();
  return out;
}

SeriesValue szego_kernel(const DiscModel& m, const DiscPoint& w, const DiscPoint& z, const Mat& A) {
  SeriesValue out{Mat::Zero(m.dim_h(), m.dim_h()), std::sqrt(w.kernel_tail * z.kernel_tail) * opnorm(A)};
  for (int k = 0; k <= m.N(); ++k)
    out.value += w.pw[k] * m.Rsq(k) * m.K().id_tensor_commutant(k, A) * z.pw[k].adjoint();
  return out;
}

NeumannReport neumann_check(const DiscModel& m, const DiscPoint& z, const Mat& A) {
  NeumannReport r;
  const double q = z.phi_norm;
  const double an = opnorm(A);
  Mat cur = A;
  r.neumann = A;
  double tail = q / (1.0 - q) * an;
  while (tail > 1e-15 * std::max(an, 1e-300) && r.terms < 5000) {
    cur = phi_map(m, z, cur).value;
    r.neumann += cur;
    ++r.terms;
    tail *= q;
  }
  r.kernel = szego_kernel(m, z, z, A).value;
  r.residual = opnorm(Mat(r.neumann - r.kernel));
  const double qt = q + z.phi_tail;
  r.budget = tail + z.kernel_tail * an + z.phi_tail / ((1.0 - qt) * (1.0 - qt)) * an;
  return r;
}

Mat cauchy_column(const DiscModel& m, const DiscPoint& z) {
  const auto& K = m.K();
  Mat c = Mat::Zero(K.dim(), m.dim_h());
  for (int k = 0; k <= m.N(); ++k)
    c.middleRows(K.level_offset(k), K.level_dim(k)) = m.Zinv(k).adjoint() * z.pw[k].adjoint();
  return c;
}

Vec cauchy_tuples(const DualFock& d, const DiscModel& m, const DiscPoint& z) {
  const auto& K = m.K();
  Mat c = cauchy_column(m, z);
  Vec out = Vec::Zero(d.tuple_dim());
  for (int k = 0; k <= d.N(); ++k)
    for (int a = 0; a < d.num_tuples(k); ++a)
      out(d.tuple_offset(k) + a) = c(K.level_offset(k) + d.target(k, a), d.column(k, a));
  return out;
}

Mat kernel_from_tuples(const DualFock& d, const DiscModel& m, const DiscPoint& w, const DiscPoint& z, const Mat& A) {
  Vec cw = cauchy_tuples(d, m, w), cz = cauchy_tuples(d, m, z);
  Mat out = Mat::Zero(m.dim_h(), m.dim_h());
  for (int k = 0; k <= d.N(); ++k) {
    Mat tw = Mat::Zero(m.K().level_dim(k), m.dim_h()), tz = tw;
    for (int a = 0; a < d.num_tuples(k); ++a) {
      tw += cw(d.tuple_offset(k) + a) * d.Lambda(k, a);
      tz += cz(d.tuple_offset(k) + a) * d.Lambda(k, a);
    }
    out += tw.adjoint() * m.K().id_tensor_commutant(k, A) * tz;
  }
  return out;
}

Mat kernel_from_cauchy(const DiscModel& m, const Mat& cw, const Mat& cz, const Mat& A) {
  return cw.adjoint() * commutant_on_K(m.K(), A) * cz;
}

double iota_w_star_check(const DualFock& d, const DualWeights& dw, const DiscModel& m, const DiscPoint& z,
                         const Vec& xi, const Mat& D) {
  const auto& K = m.K();
  Mat lam = Mat::Zero(K.level_dim(1), m.dim_h());
  for (int b = 0; b < d.num_tuples(1); ++b) lam += xi(b) * d.Lambda(1, b);
  const Mat C = lam.adjoint() * K.id_tensor_commutant(1, D) * z.z.adjoint();
  const Mat U = d.U_total();
  const Mat cz = cauchy_column(m, z);
  Mat lhs = d.to_coords(dual_creation(d, dw, xi, 1)).adjoint() * (U.adjoint() * commutant_on_K(K, D) * cz);
  Mat rhs = U.adjoint() * commutant_on_K(K, C) * cz;
  const int top = d.coord_offset(d.N());
  return maxabs(lhs.topRows(top) - rhs.topRows(top));
}

void PickProblem::validate(int dim_h) const {
  const int k = static_cast<int>(points.size());
  if (k == 0) throw Error("pick: no points");
  if (s < 1 || t < 1) throw Error("pick: s and t must be positive");
  if (static_cast<int>(B.size()) != k || static_cast<int>(F.size()) != k) throw Error("pick: need B_i and F_i per point");
  for (int i = 0; i < k; ++i) {
    if (B[i].rows() != s * dim_h || B[i].cols() != s * dim_h) throw Error("pick: B_" + std::to_string(i) + " shape");
    if (F[i].rows() != s * dim_h || F[i].cols() != t * dim_h) throw Error("pick: F_" + std::to_string(i) + " shape");
  }
}

PickReport pick_map_cp_test(const DiscModel& m, const PickProblem& p) {
  const int dh = m.dim_h();
  p.validate(dh);
  const auto& rep = m.K().rep();
  const int k = static_cast<int>(p.points.size());
  const int sd = p.s * dh;
  std::vector<Mat> cz;
  for (const auto& z : p.points) cz.push_back(cauchy_column(m, z));

  PickReport r;
  r.min_eig = 0.0;
  bool first = true;
  for (size_t i = 0; i < p.points.size(); ++i)
    for (size_t j = 0; j < p.points.size(); ++j)
      r.kernel_tail = std::max(r.kernel_tail, std::sqrt(p.points[i].kernel_tail * p.points[j].kernel_tail));
  for (int v = 0; v < static_cast<int>(rep.mult.size()); ++v) {
    const int mv = rep.mult[v];
    const int n = k * mv;
    Mat C = Mat::Zero(n * sd, n * sd);
    for (int a = 0; a < mv; ++a)
      for (int b = 0; b < mv; ++b) {
        Mat unit = rep.commutant_unit(v, a, b);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            Mat kij = kernel_from_cauchy(m, cz[i], cz[j], unit);
            Mat blk = p.B[i] * identity_copies(p.s, kij) * p.B[j].adjoint() -
                      p.F[i] * identity_copies(p.t, kij) * p.F[j].adjoint();
            C.block((i * mv + a) * sd, (j * mv + b) * sd, sd, sd) = blk;
          }
      }
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(C));
    double lo = es.eigenvalues()(0);
    r.choi_norm = std::max(r.choi_norm, es.eigenvalues().cwiseAbs().maxCoeff());
    if (first || lo < r.min_eig) r.min_eig = lo;
    first = false;
    r.min_vectors.push_back(es.eigenvectors().col(0));
    r.choi.push_back(C);
  }
  r.cp = r.min_eig >= -kChoiFloor * std::max(1.0, r.choi_norm);
  return r;
}

double quadratic_form(const DiscModel& m, const PickProblem& p, const std::vector<std::vector<Mat>>& A,
                      const std::vector<std::vector<Vec>>& h) {
  const int dk = m.K().dim();
  Vec vb = Vec::Zero(p.s * dk), vf = Vec::Zero(p.t * dk);
  for (size_t q = 0; q < A.size(); ++q)
    for (size_t i = 0; i < p.points.size(); ++i) {
      Mat c = commutant_on_K(m.K(), A[q][i]) * cauchy_column(m, p.points[i]);
      vb += identity_copies(p.s, c) * (p.B[i].adjoint() * h[q][i]);
      vf += identity_copies(p.t, c) * (p.F[i].adjoint() * h[q][i]);
    }
  return vb.squaredNorm() - vf.squaredNorm();
}

QuadraticCheck quadratic_form_check(const DiscModel& m, const PickProblem& p, const PickReport& r, Rng& rng,
                                    int families) {
  const auto& rep = m.K().rep();
  const int dh = m.dim_h();
  const int k = static_cast<int>(p.points.size());
  const int sd = p.s * dh;
  QuadraticCheck qc;

  // the Choi eigenvector read as a family: A_{a,i} = e_{0a}, h_{a,i} = block (i, a)
  int worst = 0;
  for (size_t v = 0; v < r.choi.size(); ++v) {
    double lo = min_eig_herm(r.choi[v]);
    if (v == 0 || lo < qc.eig) {
      qc.eig = lo;
      worst = static_cast<int>(v);
    }
  }
  const int mv = rep.mult[worst];
  std::vector<std::vector<Mat>> A(mv, std::vector<Mat>(k));
  std::vector<std::vector<Vec>> h(mv, std::vector<Vec>(k));
  for (int a = 0; a < mv; ++a)
    for (int i = 0; i < k; ++i) {
      A[a][i] = rep.commutant_unit(worst, 0, a);
      h[a][i] = r.min_vectors[worst].segment((i * mv + a) * sd, sd);
    }
  qc.from_eigvec = quadratic_form(m, p, A, h);

  qc.min_random = 0.0;
  for (int f = 0; f < families; ++f) {
    int n = rng.integer(1, 3);
    std::vector<std::vector<Mat>> Ar(n, std::vector<Mat>(k));
    std::vector<std::vector<Vec>> hr(n, std::vector<Vec>(k));
    double scale = 0.0;
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < k; ++i) {
        Mat a = Mat::Zero(dh, dh);
        for (const auto& u : m.commutant_units()) a += rng.cnormal() * u;
        Ar[q][i] = a;
        hr[q][i] = rng.cvec(sd);
        scale += a.squaredNorm() * hr[q][i].squaredNorm();
      }
    qc.min_random = std::min(qc.min_random, quadratic_form(m, p, Ar, hr) / scale);
  }
  const double tol = 1e-8 * std::max(1.0, r.choi_norm);
  qc.consistent = r.cp ? (qc.min_random >= -tol && qc.from_eigvec >= -tol) : (qc.from_eigvec < 0.0);
  return qc;
}

NpSolution np_solve(const DiscModel& m, const DualFock& d, const DualWeights& dw, const PickProblem& p,
                    const LiftOptions& opt) {
  const int dh = m.dim_h();
  p.validate(dh);
  const auto& K = m.K();
  const Mat U = d.U_total();
  const int k = static_cast<int>(p.points.size());
  const int ncol = k * static_cast<int>(m.commutant_units().size()) * p.s * dh;

  // columns (i, A, h) of A . c_{z_i} (x) B_i^* h and A . c_{z_i} (x) F_i^* h
  Mat genB(p.s * d.dim(), ncol), genF(p.t * d.dim(), ncol);
  std::vector<Mat> cz;
  int col = 0;
  for (int i = 0; i < k; ++i) {
    cz.push_back(U.adjoint() * cauchy_column(m, p.points[i]));
    for (const auto& a : m.commutant_units()) {
      Mat c = U.adjoint() * commutant_on_K(K, a) * U * cz[i];
      genB.middleCols(col, p.s * dh) = identity_copies(p.s, c) * p.B[i].adjoint();
      genF.middleCols(col, p.s * dh) = identity_copies(p.t, c) * p.F[i].adjoint();
      col += p.s * dh;
    }
  }
  const double scale = std::max({1.0, opnorm(genB), opnorm(genF)});
  Mat QB = orth(genB, 1e-10 * scale), QF = orth(genF, 1e-10 * scale);
  Mat cb = QB.adjoint() * genB, cf = QF.adjoint() * genF;
  Mat R = cf * pinv(cb, 1e-10 * scale);

  NpSolution sol;
  sol.dim_jb = static_cast<int>(QB.cols());
  sol.dim_jf = static_cast<int>(QF.cols());
  sol.R_norm = opnorm(R);
  if (maxabs(R * cb - cf) > 1e-8 * scale) throw Error("np_solve: data is not interpolable, R is not well defined");
  if (sol.R_norm > 1.0 + 1e-8)
    throw Error("np_solve: data is not interpolable, ||R|| = " + std::to_string(sol.R_norm));

  LiftModel base = dual_lift_model(d, dw);
  LiftModel ms = copies(base, p.s), mt = copies(base, p.t);
  sol.defect = std::max(coinvariance_residual(ms, QB), coinvariance_residual(mt, QF));
  LiftOptions o = opt;
  o.hypothesis_tol = std::max(o.hypothesis_tol, 10.0 * sol.defect);
  o.tol = std::max(o.tol, 100.0 * sol.defect);
  o.strict_invariance = false;
  sol.lift = two_space_lift(mt, QF, ms, QB, R.adjoint(), o);
  sol.G = sol.lift.G;
  sol.norm = sol.lift.norm_out;

  const Mat Lt = identity_copies(p.t, d.L_identity());
  for (int i = 0; i < k; ++i) {
    Mat y = identity_copies(p.s, cz[i]).adjoint() * sol.G * Lt;
    sol.values.push_back(y);
    sol.residuals.push_back(opnorm(Mat(p.B[i] * y - p.F[i])));
    sol.max_residual = std::max(sol.max_residual, sol.residuals.back());
  }
  return sol;
}

Mat eval_letter(const DiscModel& m, const DiscPoint& z, const Letter& l) {
  if (l.is_phi) return m.K().rep().sigma(l.a);
  if (l.xi.level > m.N()) throw Error("eval: letter beyond truncation");
  return z.pw[l.xi.level] * m.K().creation_vector(l.xi);
}

Mat eval_word(const DiscModel& m, const DiscPoint& z, const Word& w) {
  Mat out = Mat::Identity(m.dim_h(), m.dim_h());
  for (const auto& l : w) out = out * eval_letter(m, z, l);
  return out;
}

Mat word_operator(const TruncatedFock& f, const Weights& w, const Word& word) {
  Mat out = Mat::Identity(f.dim(), f.dim());
  for (const auto& l : word) out = out * (l.is_phi ? phi_inf(f, l.a) : weighted_creation(f, w, l.xi).m);
  return out;
}

Mat vacuum_column_eval(const DiscModel& m, const DiscPoint& z, const Mat& yK) {
  return cauchy_column(m, z).adjoint() * yK * m.K().level_inclusion(0);
}

}  // namespace hardy
