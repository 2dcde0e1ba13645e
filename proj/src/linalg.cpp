#include "hardy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hardy/interior.hpp"

namespace hardy {

double opnorm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  const double s = a.cwiseAbs().maxCoeff();
  if (s == 0.0 || !std::isfinite(s)) return s;
  // top eigenvalue of the smaller Gram matrix, scaled to avoid under/overflow
  const Mat b = a / s;
  const Mat g = b.rows() < b.cols() ? Mat(b * b.adjoint()) : Mat(b.adjoint() * b);
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  return s * std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double opnorm(const SpMat& a) { return opnorm(Mat(a)); }

Mat adj(const Mat& a) { return a.adjoint(); }

Mat hermitian_part(const Mat& a) { return (a + a.adjoint()) * 0.5; }

Mat psd_sqrt(const Mat& a, double clip) {
  if (a.size() == 0) return a;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a));
  RVec ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -clip) throw Error("psd_sqrt: eigenvalue " + std::to_string(ev(i)) + " below floor");
    ev(i) = ev(i) < 0 ? 0.0 : std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat psd_pinv_sqrt(const Mat& a, double thresh) {
  if (a.size() == 0) return a;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a));
  RVec ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) ev(i) = ev(i) > thresh ? 1.0 / std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat pinv(const Mat& a, double thresh) {
  if (a.size() == 0) return Mat::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RVec s = svd.singularValues();
  RVec inv(s.size());
  for (int i = 0; i < s.size(); ++i) inv(i) = s(i) > thresh ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

Mat null_space(const Mat& a, double thresh) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  RVec s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Mat orth(const Mat& a, double thresh) {
  if (a.cols() == 0 || a.rows() == 0) return Mat::Zero(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  RVec s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat orth_complement_frame(const Mat& q, const Mat& b, double thresh) {
  Mat r = b;
  if (q.cols() > 0) {
    r -= q * (q.adjoint() * r);
    r -= q * (q.adjoint() * r);
  }
  Mat out = orth(r, thresh);
  if (q.cols() > 0 && out.cols() > 0) {
    out -= q * (q.adjoint() * out);
    Eigen::HouseholderQR<Mat> qr(out);
    out = qr.householderQ() * Mat::Identity(out.rows(), out.cols());
  }
  return out;
}

double min_eig_herm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Mat block_diag(const std::vector<Mat>& blocks) {
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat out = Mat::Zero(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

SpMat to_sparse(const Mat& a, double drop) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j)) > drop) trip.emplace_back(i, j, a(i, j));
  SpMat s(a.rows(), a.cols());
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

double Rng::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(eng);
}

double Rng::normal() {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(eng);
}

cplx Rng::cnormal() {
  double re = normal();
  double im = normal();
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

int Rng::integer(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(eng);
}

Mat Rng::cmat(int r, int c) {
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = cnormal();
  return m;
}

Vec Rng::cvec(int n) { return cmat(n, 1).col(0); }

Mat Rng::psd(int n) {
  Mat g = cmat(n, n);
  return g * g.adjoint() / static_cast<double>(std::max(n, 1));
}

Mat Rng::unitary(int n) {
  Mat g = cmat(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}


namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

InteriorTensor interior_tensor(const Mat& gram, double tol) {
  const int np = static_cast<int>(gram.rows());
  if (gram.cols() != np) throw Error("interior_tensor: Gram matrix not square");
  Mat g = hermitian_part(gram);
  if ((gram - g).norm() > 1e-9 * std::max(1.0, gram.norm())) throw Error("interior_tensor: Gram matrix not Hermitian");

  // split into independent blocks so coordinates stay local
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < j; ++i)
      if (std::abs(g(i, j)) > 1e-14) parent[find_root(parent, i)] = find_root(parent, j);
  std::vector<std::vector<int>> comps;
  std::vector<int> comp_id(np, -1);
  for (int i = 0; i < np; ++i) {
    int r = find_root(parent, i);
    if (comp_id[r] < 0) {
      comp_id[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[comp_id[r]].push_back(i);
  }

  double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  std::vector<Vec> rows;
  for (const auto& c : comps) {
    const int m = static_cast<int>(c.size());
    Mat sub(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) sub(a, b) = g(c[a], c[b]);
    Eigen::SelfAdjointEigenSolver<Mat> es(sub);
    for (int a = m - 1; a >= 0; --a) {
      double lam = es.eigenvalues()(a);
      if (lam < -tol * scale) throw Error("interior_tensor: Gram matrix is not positive");
      if (lam <= tol * scale) continue;
      Vec row = Vec::Zero(np);
      for (int b = 0; b < m; ++b) row(c[b]) = es.eigenvectors()(b, a);
      rows.push_back(row * std::sqrt(lam));
    }
  }

  InteriorTensor it;
  it.rank = static_cast<int>(rows.size());
  it.emb = Mat::Zero(it.rank, np);
  it.emb_pinv = Mat::Zero(np, it.rank);
  for (int r = 0; r < it.rank; ++r) {
    double lam = rows[r].squaredNorm();
    it.emb.row(r) = rows[r].adjoint();
    it.emb_pinv.col(r) = rows[r] / lam;
  }
  it.gram_residual = np ? (it.emb.adjoint() * it.emb - g).cwiseAbs().maxCoeff() : 0.0;
  return it;
}

Mat quotient_map(const InteriorTensor& out, const Mat& op, const InteriorTensor& in) {
  return out.emb * op * in.emb_pinv;
}

}  // namespace hardy
