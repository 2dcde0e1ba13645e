#include "hardy/duality.hpp"

namespace hardy {

Vec DualCorrespondence::coeffs(const Mat& T) const {
  Vec c(size());
  for (int b = 0; b < size(); ++b) c(b) = (basis[b].adjoint() * T).trace();
  return c;
}

DualCorrespondence intertwiner_basis(const InducedSpace& K, double tol) {
  const auto& t = K.tower();
  const auto& rep = K.rep();
  const int d1 = K.level_dim(1);
  const int dh = rep.dim;
  const int nv = t.n();
  // T sigma(a) - (phi(a) (x) I) T = 0 for each vertex indicator, vec is column major
  Mat sys = Mat::Zero(static_cast<Eigen::Index>(nv) * d1 * dh, static_cast<Eigen::Index>(d1) * dh);
  for (int v = 0; v < nv; ++v) {
    Vec a = vertex_unit(nv, v);
    Mat s = rep.sigma(a);
    Mat phi1 = K.induce(left_action(t, a, 1), 1, 1);
    Mat blk = kron(s.transpose(), Mat::Identity(d1, d1)) - kron(Mat::Identity(dh, dh), phi1);
    sys.middleRows(static_cast<Eigen::Index>(v) * d1 * dh, static_cast<Eigen::Index>(d1) * dh) = blk;
  }
  Mat ns = null_space(sys, tol);
  DualCorrespondence es;
  es.nullity = static_cast<int>(ns.cols());

  // matrix units inside the null space, ordered by edge, then row, then column
  Mat proj = ns * ns.adjoint();
  for (int e = 0; e < t.size(1); ++e) {
    int s = t.source(1, e), r = t.range(1, e);
    for (int i = 0; i < rep.mult[s]; ++i)
      for (int j = 0; j < rep.mult[r]; ++j) {
        Mat T = Mat::Zero(d1, dh);
        T(K.local(1, e, i), rep.offset[r] + j) = 1.0;
        Vec v = Eigen::Map<const Vec>(T.data(), T.size());
        double res = (proj * v - v).norm();
        es.canonical_residual = std::max(es.canonical_residual, res);
        if (res > 1e-8) throw Error("intertwiner_basis: matrix unit outside the intertwiner space");
        es.basis.push_back(T);
        es.edge.push_back(e);
        es.row.push_back(i);
        es.col.push_back(rep.offset[r] + j);
      }
  }
  if (es.size() != es.nullity) throw Error("intertwiner_basis: dimension mismatch with null space");
  return es;
}

DualFock::DualFock(const InducedSpace& K, const DualCorrespondence& es) : K_(&K), es_(&es) {
  const auto& rep = K.rep();
  const int N = K.N();
  const int dh = rep.dim;
  fac_.resize(N + 1);
  col_.resize(N + 1);
  tgt_.resize(N + 1);
  look_.resize(N + 1);
  lam_.resize(N + 1);

  for (int j = 0; j < N; ++j) {
    idt_.emplace_back();
    for (int b = 0; b < es.size(); ++b) idt_[j].push_back(K.id_tensor(j, es.basis[b]));
  }

  auto locate = [&](const Mat& lam, int& row, int& col) {
    row = col = -1;
    for (int c = 0; c < lam.cols(); ++c)
      for (int r = 0; r < lam.rows(); ++r)
        if (std::abs(lam(r, c)) > 1e-12) {
          if (col >= 0 || std::abs(lam(r, c) - 1.0) > 1e-12) throw Error("DualFock: tuple is not a matrix unit");
          row = r;
          col = c;
        }
  };

  // level 0: matrix units of sigma(M)'
  for (size_t v = 0; v < rep.mult.size(); ++v)
    for (int a = 0; a < rep.mult[v]; ++a)
      for (int b = 0; b < rep.mult[v]; ++b) {
        Mat lam = Mat::Zero(K.level_dim(0), dh);
        lam(rep.offset[v] + a, rep.offset[v] + b) = 1.0;
        unit_.push_back(static_cast<int>(fac_[0].size()));
        fac_[0].push_back({});
        col_[0].push_back(rep.offset[v] + b);
        tgt_[0].push_back(rep.offset[v] + a);
        lam_[0].push_back(lam);
      }

  // next_[j][b][r]: row of K_{j+1} hit by I_j (x) b from row r of K_j
  next_.resize(N);
  for (int j = 0; j < N; ++j)
    for (int b = 0; b < es.size(); ++b) {
      std::vector<int> nx(K.level_dim(j), -1);
      const Mat& m = idt_[j][b];
      for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r)
          if (std::abs(m(r, c)) > 1e-12) nx[c] = r;
      next_[j].push_back(std::move(nx));
    }

  for (int k = 1; k <= N; ++k) {
    auto add = [&](std::vector<int> f, const Mat& lam) {
      int r, c;
      locate(lam, r, c);
      if (!look_[k].emplace(std::make_pair(r, c), static_cast<int>(fac_[k].size())).second) return;
      fac_[k].push_back(std::move(f));
      col_[k].push_back(c);
      tgt_[k].push_back(r);
      lam_[k].push_back(lam);
    };
    for (int b = 0; b < es.size(); ++b) {
      if (k == 1) {
        add({b}, es.basis[b]);
        continue;
      }
      for (int a = 0; a < static_cast<int>(fac_[k - 1].size()); ++a) {
        Mat lam = idt_[k - 1][b] * lam_[k - 1][a];
        if (lam.cwiseAbs().maxCoeff() < 1e-12) continue;
        std::vector<int> f{b};
        f.insert(f.end(), fac_[k - 1][a].begin(), fac_[k - 1][a].end());
        add(std::move(f), lam);
      }
    }
  }

  for (int k = 0; k <= N; ++k) {
    toff_.push_back(tdim_);
    tdim_ += num_tuples(k);
    Mat g = abstract_gram(k);
    it_.push_back(interior_tensor(g));
    gram_res_ = std::max(gram_res_, it_.back().gram_residual);
    if (it_[k].rank != K.level_dim(k)) throw Error("DualFock: quotient rank differs from level dimension");
    coff_.push_back(cdim_);
    cdim_ += it_[k].rank;
    for (int i = 0; i < it_[k].rank; ++i) level_of_.push_back(k);
    Mat vecs = Mat::Zero(K.level_dim(k), num_tuples(k));
    for (int a = 0; a < num_tuples(k); ++a) vecs.col(a) = lam_[k][a].col(col_[k][a]);
    U_.push_back(vecs * it_[k].emb_pinv);
    const int d = K.level_dim(k);
    unit_res_ = std::max(unit_res_, (U_[k].adjoint() * U_[k] - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
    unit_res_ = std::max(unit_res_, (U_[k] * U_[k].adjoint() - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
  }
}

int DualFock::lookup(const std::vector<int>& f) const {
  const int k = static_cast<int>(f.size());
  if (k == 0 || k > N()) return -1;
  int r = tgt_[1][f.back()], c = col_[1][f.back()];
  for (int i = k - 2, j = 1; i >= 0; --i, ++j) {
    r = next_[j][f[i]][r];
    if (r < 0) return -1;
  }
  auto it = look_[k].find({r, c});
  return it == look_[k].end() ? -1 : it->second;
}

int DualFock::unit_index(int v, int a, int b) const {
  const auto& rep = K_->rep();
  int idx = 0;
  for (int w = 0; w < v; ++w) idx += rep.mult[w] * rep.mult[w];
  return idx + a * rep.mult[v] + b;
}

Mat DualFock::unit_matrix(int a) const {
  const int dh = K_->rep().dim;
  Mat u = Mat::Zero(dh, dh);
  u(tgt_[0][a], col_[0][a]) = 1.0;
  return u;
}

Mat DualFock::U_total() const {
  Mat u = Mat::Zero(K_->dim(), cdim_);
  for (int k = 0; k <= N(); ++k) u.block(K_->level_offset(k), coff_[k], K_->level_dim(k), it_[k].rank) = U_[k];
  return u;
}

Mat DualFock::abstract_gram(int k) const {
  const int n = num_tuples(k);
  Mat g = Mat::Zero(n, n);
  if (k == 0) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g(a, b) = (unit_matrix(a).adjoint() * unit_matrix(b))(col_[0][a], col_[0][b]);
    return g;
  }
  const auto& B = es_->basis;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const auto& fa = fac_[k][a];
      const auto& fb = fac_[k][b];
      Mat A = B[fa[0]].adjoint() * B[fb[0]];
      for (int i = 1; i < k; ++i) {
        if (A.cwiseAbs().maxCoeff() == 0.0) break;
        A = B[fa[i]].adjoint() * K_->id_tensor_commutant(1, A) * B[fb[i]];
      }
      g(a, b) = A(col_[k][a], col_[k][b]);
      g(b, a) = std::conj(g(a, b));
    }
  return g;
}

Mat DualFock::to_coords(const Mat& op, int kout, int kin) const {
  Mat p = op;
  for (int a = 0; a < op.cols(); ++a)
    for (int b = 0; b < op.rows(); ++b)
      if (col_[kout][b] != col_[kin][a]) {
        if (std::abs(op(b, a)) > 1e-10) throw Error("to_coords: operator does not respect the right action");
        p(b, a) = 0.0;
      }
  return it_[kout].emb * p * it_[kin].emb_pinv;
}

Mat DualFock::to_coords(const Mat& op) const {
  Mat out = Mat::Zero(cdim_, cdim_);
  for (int a = 0; a <= N(); ++a)
    for (int b = 0; b <= N(); ++b) {
      Mat blk = op.block(toff_[a], toff_[b], num_tuples(a), num_tuples(b));
      if (blk.cwiseAbs().maxCoeff() == 0.0) continue;
      out.block(coff_[a], coff_[b], coord_dim(a), coord_dim(b)) = to_coords(blk, a, b);
    }
  return out;
}

Mat DualFock::from_coords(const Mat& B, int kout, int kin, double* residual) const {
  Mat o = Mat::Zero(num_tuples(kout), num_tuples(kin));
  const auto& eo = it_[kout].emb;
  const auto& ei = it_[kin].emb;
  for (int a = 0; a < num_tuples(kin); ++a)
    for (int b = 0; b < num_tuples(kout); ++b) {
      if (col_[kout][b] != col_[kin][a]) continue;
      Vec cb = eo.col(b), ca = ei.col(a);
      o(b, a) = (cb.adjoint() * B * ca)(0, 0) / cb.squaredNorm();
    }
  if (residual) *residual = (to_coords(o, kout, kin) - B).cwiseAbs().maxCoeff();
  return o;
}

Mat DualFock::phi(const Mat& A, int k) const {
  const int n = num_tuples(k);
  Mat out = Mat::Zero(n, n);
  if (k == 0) {
    for (int a = 0; a < n; ++a) {
      Mat p = A * unit_matrix(a);
      for (int b = 0; b < n; ++b) out(b, a) = p(tgt_[0][b], col_[0][b]);
    }
    return out;
  }
  Mat left = K_->id_tensor_commutant(1, A);
  for (int a = 0; a < n; ++a) {
    const auto& f = fac_[k][a];
    Vec c = es_->coeffs(left * es_->basis[f[0]]);
    for (int b = 0; b < es_->size(); ++b) {
      if (std::abs(c(b)) < 1e-15) continue;
      std::vector<int> g = f;
      g[0] = b;
      int idx = lookup(g);
      if (idx >= 0) out(idx, a) += c(b);
    }
  }
  return out;
}

Mat DualFock::phi_total(const Mat& A) const {
  Mat out = Mat::Zero(tdim_, tdim_);
  for (int k = 0; k <= N(); ++k) out.block(toff_[k], toff_[k], num_tuples(k), num_tuples(k)) = phi(A, k);
  return out;
}

Mat DualFock::right_mult(const Mat& A, int k) const {
  const int n = num_tuples(k);
  Mat out = Mat::Zero(n, n);
  if (k == 0) {
    for (int a = 0; a < n; ++a) {
      Mat p = unit_matrix(a) * A;
      for (int b = 0; b < n; ++b) out(b, a) = p(tgt_[0][b], col_[0][b]);
    }
    return out;
  }
  for (int a = 0; a < n; ++a) {
    const auto& f = fac_[k][a];
    Vec c = es_->coeffs(es_->basis[f.back()] * A);
    for (int b = 0; b < es_->size(); ++b) {
      if (std::abs(c(b)) < 1e-15) continue;
      std::vector<int> g = f;
      g.back() = b;
      int idx = lookup(g);
      if (idx >= 0) out(idx, a) += c(b);
    }
  }
  return out;
}

namespace {

// element of sigma(M)' represented by a module map of the level-0 tuples
Mat element_of(const DualFock& d, const Mat& B) {
  const int dh = d.K().rep().dim;
  Mat el = Mat::Zero(dh, dh);
  Mat one = Mat::Zero(d.num_tuples(0), 1);
  for (int a = 0; a < d.num_tuples(0); ++a)
    if (d.column(0, a) == d.target(0, a)) one(a, 0) = 1.0;
  Mat img = B * one;
  for (int a = 0; a < d.num_tuples(0); ++a) el += img(a, 0) * d.unit_matrix(a);
  return el;
}

Mat element_from_coeffs(const DualFock& d, const Vec& c) {
  const int dh = d.K().rep().dim;
  Mat el = Mat::Zero(dh, dh);
  for (int a = 0; a < d.num_tuples(0); ++a) el += c(a) * d.unit_matrix(a);
  return el;
}

}  // namespace

Mat DualFock::prepend(const Vec& eta, int l, int j) const {
  if (l == 0) return phi(element_from_coeffs(*this, eta), j);
  Mat out = Mat::Zero(num_tuples(l + j), num_tuples(j));
  if (j == 0) {
    for (int u = 0; u < num_tuples(0); ++u) out.col(u) = right_mult(unit_matrix(u), l) * eta;
    return out;
  }
  for (int a = 0; a < num_tuples(l); ++a) {
    if (std::abs(eta(a)) < 1e-15) continue;
    for (int z = 0; z < num_tuples(j); ++z) {
      std::vector<int> f = fac_[l][a];
      f.insert(f.end(), fac_[j][z].begin(), fac_[j][z].end());
      int idx = lookup(f);
      if (idx >= 0) out(idx, z) += eta(a);
    }
  }
  return out;
}

Mat DualFock::tensor(const Mat& A, int la, const Mat& B, int lb) const {
  if (la == 0) return phi(element_of(*this, A), lb) * B;
  if (lb == 0) return right_mult(element_of(*this, B), la) * A;
  const int k = la + lb;
  Mat out = Mat::Zero(num_tuples(k), num_tuples(k));
  for (int d = 0; d < num_tuples(k); ++d) {
    const auto& f = fac_[k][d];
    int dp = lookup(std::vector<int>(f.begin(), f.begin() + la));
    int ds = lookup(std::vector<int>(f.begin() + la, f.end()));
    if (dp < 0 || ds < 0) throw Error("DualFock::tensor: tuple does not split");
    for (int gp = 0; gp < num_tuples(la); ++gp) {
      cplx av = A(gp, dp);
      if (av == cplx(0.0)) continue;
      for (int gs = 0; gs < num_tuples(lb); ++gs) {
        cplx bv = B(gs, ds);
        if (bv == cplx(0.0)) continue;
        std::vector<int> g = fac_[la][gp];
        g.insert(g.end(), fac_[lb][gs].begin(), fac_[lb][gs].end());
        int idx = lookup(g);
        if (idx >= 0) out(idx, d) += av * bv;
      }
    }
  }
  return out;
}

Mat DualFock::id_tensor(int j, const Mat& B, int lb) const {
  if (j == 0) return B;
  return tensor(Mat::Identity(num_tuples(j), num_tuples(j)), j, B, lb);
}

Mat DualFock::tensor_id(const Mat& B, int lb, int j) const {
  if (j == 0) return B;
  return tensor(B, lb, Mat::Identity(num_tuples(j), num_tuples(j)), j);
}

Mat DualFock::coord_id_tensor(int j, const Mat& T) const {
  const int dout = coord_dim(j + 1), din = coord_dim(j);
  Mat tcoef = it_[1].emb_pinv * T;  // level-1 tuples x dim H
  Mat acc = Mat::Zero(num_tuples(j + 1), din);
  for (int x = 0; x < din; ++x) {
    Vec r = it_[j].emb_pinv.col(x);
    for (int a = 0; a < num_tuples(j); ++a) {
      if (std::abs(r(a)) < 1e-15) continue;
      Vec tb = tcoef.col(col_[j][a]);
      for (int b = 0; b < num_tuples(1); ++b) {
        if (std::abs(tb(b)) < 1e-15) continue;
        if (j == 0) {
          Vec e = Vec::Zero(num_tuples(1));
          e(b) = 1.0;
          acc.col(x) += r(a) * tb(b) * (phi(unit_matrix(a), 1) * e);
          continue;
        }
        std::vector<int> f = fac_[j][a];
        f.push_back(fac_[1][b][0]);
        int idx = lookup(f);
        if (idx >= 0) acc(idx, x) += r(a) * tb(b);
      }
    }
  }
  Mat out = it_[j + 1].emb * acc;
  if (out.rows() != dout) throw Error("coord_id_tensor: shape mismatch");
  return out;
}

Mat DualFock::creation_vector(const Vec& alpha, int k) const {
  const int dh = K_->rep().dim;
  Mat out = Mat::Zero(coord_dim(k), dh);
  for (int a = 0; a < num_tuples(k); ++a)
    if (std::abs(alpha(a)) > 0) out.col(col_[k][a]) += alpha(a) * it_[k].emb.col(a);
  return out;
}

Mat DualFock::L(const Vec& alpha, int k) const {
  Mat out = Mat::Zero(cdim_, K_->rep().dim);
  out.middleRows(coff_[k], coord_dim(k)) = creation_vector(alpha, k);
  return out;
}

Mat DualFock::L_identity() const {
  Vec one = Vec::Zero(num_tuples(0));
  for (int a = 0; a < num_tuples(0); ++a)
    if (col_[0][a] == tgt_[0][a]) one(a) = 1.0;
  return L(one, 0);
}

std::vector<int> DualFock::parseval_tuples(int k) const {
  const auto& rep = K_->rep();
  std::vector<bool> first(rep.dim, false);
  for (int v : rep.offset) first[v] = true;
  std::vector<int> out;
  for (int a = 0; a < num_tuples(k); ++a)
    if (first[col_[k][a]]) out.push_back(a);
  return out;
}

Mat DualFock::coord_act_H(const Mat& A) const {
  Mat d = Mat::Zero(tdim_, tdim_);
  for (int k = 0; k <= N(); ++k)
    for (int a = 0; a < num_tuples(k); ++a) d(toff_[k] + a, toff_[k] + a) = A(col_[k][a], col_[k][a]);
  return to_coords(d);
}

Mat c_operator(const PathTower& t, const Weights& w, int k) {
  if (k == 0) return Mat::Identity(t.size(0), t.size(0));
  return w.Zp[k] * tensor_id(t, w.Zp[k - 1], k - 1, 1).inverse();
}

DualWeights dual_weights(const DualFock& d, const Weights& w, const AdmissibleSequence& x) {
  const auto& K = d.K();
  const auto& t = K.tower();
  DualWeights dw;
  for (int k = 0; k <= d.N(); ++k) {
    const Mat& U = d.U(k);
    double r1 = 0.0, r2 = 0.0;
    dw.Z.push_back(d.from_coords(U.adjoint() * K.induce(c_operator(t, w, k), k, k) * U, k, k, &r1));
    dw.X.push_back(d.from_coords(U.adjoint() * K.induce(x.X[k], k, k) * U, k, k, &r2));
    dw.extraction_residual = std::max({dw.extraction_residual, r1, r2});
  }
  const int n0 = d.num_tuples(0);
  dw.Zp.push_back(Mat::Identity(n0, n0));
  dw.Zp_inv.push_back(Mat::Identity(n0, n0));
  dw.Rsq.push_back(Mat::Identity(n0, n0));
  dw.C.push_back(Mat::Identity(n0, n0));
  for (int k = 1; k <= d.N(); ++k) {
    dw.Zp.push_back(dw.Z[k] * d.id_tensor(1, dw.Zp[k - 1], k - 1));
    dw.Zp_inv.push_back(dw.Zp[k].inverse());
    Mat target = d.U(k).adjoint() * K.induce(w.Zp[k], k, k) * d.U(k);
    dw.product_residual = std::max(dw.product_residual, (d.to_coords(dw.Zp[k], k, k) - target).cwiseAbs().maxCoeff());

    Mat r = Mat::Zero(d.num_tuples(k), d.num_tuples(k));
    for (int j = 1; j <= k; ++j) r += d.tensor(dw.X[j], j, dw.Rsq[k - j], k - j);
    dw.Rsq.push_back(r);
    Mat lhs = dw.Zp[k].adjoint() * dw.Zp[k];
    dw.weight_residual = std::max(dw.weight_residual, (lhs - r.inverse()).cwiseAbs().maxCoeff());

    dw.C.push_back(dw.Zp[k] * d.tensor_id(dw.Zp[k - 1], k - 1, 1).inverse());
    Mat zk = d.U(k).adjoint() * K.induce(w.Z[k], k, k) * d.U(k);
    dw.c_residual = std::max(dw.c_residual, (zk - d.to_coords(dw.C[k], k, k)).cwiseAbs().maxCoeff());
  }
  return dw;
}

Mat dual_zkj(const DualFock& d, const DualWeights& dw, int k, int j) {
  return dw.Zp[k] * d.id_tensor(k - j, dw.Zp_inv[j], j);
}

Mat dual_creation(const DualFock& d, const DualWeights& dw, const Vec& eta, int l) {
  Mat out = Mat::Zero(d.tuple_dim(), d.tuple_dim());
  for (int i = 0; i + l <= d.N(); ++i)
    out.block(d.tuple_offset(i + l), d.tuple_offset(i), d.num_tuples(i + l), d.num_tuples(i)) =
        dual_zkj(d, dw, i + l, i) * d.prepend(eta, l, i);
  return out;
}

Mat dual_normalized_creation(const DualFock& d, const DualWeights& dw, const Vec& xi, int l) {
  return dual_creation(d, dw, dw.Zp_inv[l] * xi, l);
}

Mat pi_sigma(const DualFock& d, const Mat& yK) {
  Mat u = d.U_total();
  return u.adjoint() * yK * u;
}

Mat rho(const DualFock& d, const Mat& coord_op) {
  Mat u = d.U_total();
  return u * coord_op * u.adjoint();
}

CommutationReport commutation_check(const TruncatedFock& f, const DualFock& d, const Weights& w,
                                          const AdmissibleSequence& x) {
  const auto& K = d.K();
  const auto& t = K.tower();
  CommutationReport rep;
  rep.dw = dual_weights(d, w, x);
  rep.unitarity = d.unitarity_residual();

  std::vector<Mat> ys;
  for (int v = 0; v < t.n(); ++v) ys.push_back(pi_sigma(d, induce(K, f, phi_inf(f, vertex_unit(t.n(), v)))));
  for (int e = 0; e < t.size(1); ++e)
    ys.push_back(pi_sigma(d, induce(K, f, weighted_creation(f, w, basis_element(t, 1, e)).m)));

  std::vector<Mat> ss;
  for (int u = 0; u < d.num_tuples(0); ++u) ss.push_back(d.to_coords(d.phi_total(d.unit_matrix(u))));
  for (int b = 0; b < d.num_tuples(1); ++b) {
    Vec eta = Vec::Zero(d.num_tuples(1));
    eta(b) = 1.0;
    ss.push_back(d.to_coords(dual_creation(d, rep.dw, eta, 1)));
  }
  for (const auto& y : ys)
    for (const auto& s : ss) rep.commutation = std::max(rep.commutation, (y * s - s * y).cwiseAbs().maxCoeff());

  for (int v = 0; v < t.n(); ++v) {
    Vec a = vertex_unit(t.n(), v);
    Mat lhs = pi_sigma(d, induce(K, f, phi_inf(f, a)));
    rep.phi_match = std::max(rep.phi_match, (lhs - d.coord_act_H(K.rep().sigma(a))).cwiseAbs().maxCoeff());
  }

  std::vector<Mat> omega;
  for (int e = 0; e < t.size(1); ++e) omega.push_back(d.U(1).adjoint() * K.creation_vector(basis_element(t, 1, e)));
  for (int k = 1; k <= t.N(); ++k)
    for (int p = 0; p < t.size(k); ++p) {
      const auto& path = t.path(k, p);
      Mat v = omega[path.back()];
      for (int i = k - 2, lev = 1; i >= 0; --i, ++lev) v = d.coord_id_tensor(lev, omega[path[i]]) * v;
      Mat diff = d.U(k) * v - K.creation_vector(basis_element(t, k, p));
      rep.omega_match = std::max(rep.omega_match, diff.cwiseAbs().maxCoeff());
    }

  for (int m = 0; m + 1 <= t.N(); ++m)
    for (int e = 0; e < t.size(1); ++e) {
      Mat lhs = d.U(m + 1) * d.to_coords(rep.dw.C[m + 1], m + 1, m + 1) * d.coord_id_tensor(m, omega[e]) *
                d.U(m).adjoint();
      Mat rhs = K.induce(w.Z[m + 1] * insertion_matrix(t, basis_element(t, 1, e), m), m, m + 1);
      rep.creation_match = std::max(rep.creation_match, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return rep;
}

}  // namespace hardy
