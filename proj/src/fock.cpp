#include "hardy/fock.hpp"

namespace hardy {

TruncatedFock::TruncatedFock(const PathTower& t) : t_(&t) {
  for (int k = 0; k <= t.N(); ++k) {
    off_.push_back(dim_);
    dim_ += t.size(k);
  }
}

Mat TruncatedFock::Q(int k) const {
  Mat q = Mat::Zero(dim_, dim_);
  q.block(off_[k], off_[k], level_dim(k), level_dim(k)).setIdentity();
  return q;
}

Mat TruncatedFock::embed(int k) const {
  Mat e = Mat::Zero(dim_, level_dim(k));
  e.middleRows(off_[k], level_dim(k)).setIdentity();
  return e;
}

Vec TruncatedFock::hat(const CorrElement& xi) const {
  Vec v = Vec::Zero(dim_);
  v.segment(off_[xi.level], level_dim(xi.level)) = xi.c;
  return v;
}

Mat TruncatedFock::block(const Mat& op, int kout, int kin) const {
  return op.block(off_[kout], off_[kin], level_dim(kout), level_dim(kin));
}

int operator_degree(const TruncatedFock& f, const Mat& op, double tol) {
  int deg = 0;
  bool found = false;
  for (int a = 0; a <= f.N(); ++a)
    for (int b = 0; b <= f.N(); ++b) {
      if (f.block(op, a, b).cwiseAbs().maxCoeff() <= tol) continue;
      if (found && a - b != deg) return kMixedDegree;
      deg = a - b;
      found = true;
    }
  return deg;
}

Mat phi_inf(const TruncatedFock& f, const Vec& a) {
  Mat m = Mat::Zero(f.dim(), f.dim());
  for (int k = 0; k <= f.N(); ++k)
    m.block(f.level_offset(k), f.level_offset(k), f.level_dim(k), f.level_dim(k)) = left_action(f.tower(), a, k);
  return m;
}

FockOperator creation(const TruncatedFock& f, const CorrElement& xi) {
  const int k = xi.level;
  FockOperator op{Mat::Zero(f.dim(), f.dim()), k};
  if (k == 0) {
    op.m = phi_inf(f, xi.c);
    return op;
  }
  for (int j = 0; j + k <= f.N(); ++j)
    op.m.block(f.level_offset(j + k), f.level_offset(j), f.level_dim(j + k), f.level_dim(j)) =
        insertion_matrix(f.tower(), xi, j);
  return op;
}

Mat weight_diagonal(const TruncatedFock& f, const Weights& w, int k) {
  Mat d = Mat::Zero(f.dim(), f.dim());
  for (int i = k; i <= f.N(); ++i)
    d.block(f.level_offset(i), f.level_offset(i), f.level_dim(i), f.level_dim(i)) = zkj(f.tower(), w, i, i - k);
  return d;
}

FockOperator weighted_creation(const TruncatedFock& f, const Weights& w, const CorrElement& xi) {
  FockOperator t = creation(f, xi);
  return {weight_diagonal(f, w, xi.level) * t.m, xi.level};
}

FockOperator normalized_creation(const TruncatedFock& f, const Weights& w, const CorrElement& xi) {
  return weighted_creation(f, w, act(w.Zp_inv[xi.level], xi));
}

Mat induce(const InducedSpace& K, const TruncatedFock& f, const Mat& op) {
  Mat out = Mat::Zero(K.dim(), K.dim());
  for (int a = 0; a <= f.N(); ++a)
    for (int b = 0; b <= f.N(); ++b) {
      Mat blk = f.block(op, a, b);
      if (blk.cwiseAbs().maxCoeff() == 0.0) continue;
      out.block(K.level_offset(a), K.level_offset(b), K.level_dim(a), K.level_dim(b)) = K.induce(blk, b, a);
    }
  return out;
}

Mat commutant_on_K(const InducedSpace& K, const Mat& a) {
  Mat out = Mat::Zero(K.dim(), K.dim());
  for (int k = 0; k <= K.N(); ++k)
    out.block(K.level_offset(k), K.level_offset(k), K.level_dim(k), K.level_dim(k)) = K.id_tensor_commutant(k, a);
  return out;
}

CheckReport handysums_check(const TruncatedFock& f, const InducedSpace& K, int k, Rng& rng) {
  const auto& t = f.tower();
  CheckReport rep;
  const int n = t.size(k);

  // random module map S, block structure by source
  Mat S = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (t.source(k, p) == t.source(k, q)) S(q, p) = rng.cnormal();
  Mat sum = Mat::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    CorrElement sx = act(S, basis_element(t, k, p));
    sum += theta(t, sx, sx);
  }
  rep.add("theta_sum", (sum - S * S.adjoint()).cwiseAbs().maxCoeff());

  Mat lsum = Mat::Zero(K.dim(), K.dim());
  for (int p = 0; p < n; ++p) {
    Mat l = K.L(basis_element(t, k, p));
    lsum += l * l.adjoint();
  }
  Mat qk = Mat::Zero(K.dim(), K.dim());
  qk.block(K.level_offset(k), K.level_offset(k), K.level_dim(k), K.level_dim(k)).setIdentity();
  rep.add("creation_vectors", (lsum - qk).cwiseAbs().maxCoeff());

  Mat tsum = Mat::Zero(f.dim(), f.dim());
  for (int p = 0; p < n; ++p) {
    Mat tm = creation(f, basis_element(t, k, p)).m;
    tsum += tm * tm.adjoint();
  }
  Mat qs = Mat::Zero(f.dim(), f.dim());
  for (int i = k; i <= f.N(); ++i) qs += f.Q(i);
  rep.add("creation_ops", (tsum - qs).cwiseAbs().maxCoeff());
  return rep;
}

CheckReport sums_to_projection_check(const TruncatedFock& f, const Weights& w, const AdmissibleSequence& x) {
  const auto& t = f.tower();
  CheckReport rep;
  Mat sum = Mat::Zero(f.dim(), f.dim());
  for (int j = 1; j <= f.N(); ++j) {
    Mat root = psd_sqrt(x.X[j]);
    for (int p = 0; p < t.size(j); ++p) {
      Mat wm = weighted_creation(f, w, act(root, basis_element(t, j, p))).m;
      sum += wm * wm.adjoint();
    }
  }
  Mat target = Mat::Identity(f.dim(), f.dim()) - f.Q(0);
  rep.add("sum_to_projection", (sum - target).cwiseAbs().maxCoeff());
  return rep;
}

}  // namespace hardy
