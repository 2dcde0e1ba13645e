#include "hardy/weights.hpp"

#include <cmath>
#include <map>

namespace hardy {

std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = 1; p <= left; ++p) {
      cur.push_back(p);
      self(self, left - p);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

std::vector<std::vector<int>> compositions(int n, int parts) {
  std::vector<std::vector<int>> out;
  for (auto& c : compositions(n))
    if (static_cast<int>(c.size()) == parts) out.push_back(c);
  return out;
}

AdmissibleSequence AdmissibleSequence::from_scalar(const PathTower& t, const std::vector<double>& x) {
  AdmissibleSequence s;
  s.N = t.N();
  s.scalar = x;
  if (s.scalar.empty()) s.scalar.push_back(0.0);
  s.X.push_back(Mat::Zero(t.size(0), t.size(0)));
  for (int k = 1; k <= t.N(); ++k) {
    double v = k < static_cast<int>(x.size()) ? x[k] : 0.0;
    s.X.push_back(Mat::Identity(t.size(k), t.size(k)) * v);
  }
  return s;
}

AdmissibleSequence AdmissibleSequence::from_matrices(const PathTower& t, const std::vector<Mat>& x) {
  AdmissibleSequence s;
  s.N = t.N();
  for (int k = 0; k <= t.N(); ++k) {
    if (k < static_cast<int>(x.size())) {
      s.X.push_back(x[k]);
    } else {
      s.X.push_back(Mat::Zero(t.size(k), t.size(k)));
    }
  }
  return s;
}

void AdmissibleSequence::validate(const PathTower& t) const {
  if (static_cast<int>(X.size()) != t.N() + 1) throw Error("X: wrong number of levels");
  for (int k = 0; k <= t.N(); ++k) {
    const Mat& x = X[k];
    std::string tag = "X_" + std::to_string(k);
    if (x.rows() != t.size(k) || x.cols() != t.size(k)) throw Error(tag + ": wrong shape");
    if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, x.cwiseAbs().maxCoeff()))
      throw Error(tag + ": not Hermitian");
    if (k == 0) {
      if (x.size() && x.cwiseAbs().maxCoeff() > 1e-14) throw Error("X_0 must be 0");
      continue;
    }
    if (x.size() && min_eig_herm(x) < -1e-12) throw Error(tag + ": not positive");
    if (!commutes_left(t, k, x)) throw Error(tag + ": does not commute with the left action");
    if (!is_module_map(t, k, x)) throw Error(tag + ": not a right module map");
  }
  if (t.N() >= 1) {
    Eigen::JacobiSVD<Mat> svd(X[1]);
    if (X[1].size() == 0 || svd.singularValues().minCoeff() < 1e-10) throw Error("X_1: not invertible");
  }
}

std::vector<std::vector<int>> range_source_groups(const PathTower& t, int k) {
  std::map<std::pair<int, int>, std::vector<int>> m;
  for (int p = 0; p < t.size(k); ++p) m[{t.range(k, p), t.source(k, p)}].push_back(p);
  std::vector<std::vector<int>> out;
  for (auto& [key, v] : m) out.push_back(v);
  return out;
}

AdmissibleSequence random_graph_sequence(const PathTower& t, Rng& rng, double decay) {
  std::vector<Mat> xs{Mat::Zero(t.size(0), t.size(0))};
  for (int k = 1; k <= t.N(); ++k) {
    Mat x = Mat::Zero(t.size(k), t.size(k));
    for (const auto& g : range_source_groups(t, k)) {
      const int m = static_cast<int>(g.size());
      Mat b;
      if (k == 1) {
        b = rng.psd(m) * 0.5 + Mat::Identity(m, m) * 0.5;
      } else if (rng.uniform() < 0.3) {
        continue;
      } else {
        b = rng.psd(m) * std::pow(decay, k - 1);
      }
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) x(g[a], g[c]) = b(a, c);
    }
    xs.push_back(hermitian_part(x));
  }
  return AdmissibleSequence::from_matrices(t, xs);
}

Mat composition_sum(const PathTower& t, const AdmissibleSequence& x, int k) {
  const int n = t.size(k);
  if (k == 0) return Mat::Identity(n, n);
  Mat total = Mat::Zero(n, n);
  for (const auto& c : compositions(k)) {
    Mat acc = x.X[c[0]];
    int lev = c[0];
    for (size_t i = 1; i < c.size(); ++i) {
      acc = tensor(t, acc, lev, x.X[c[i]], c[i]);
      lev += c[i];
    }
    total += acc;
  }
  return total;
}

std::vector<Mat> compute_Rsq(const PathTower& t, const AdmissibleSequence& x) {
  std::vector<Mat> rsq{Mat::Identity(t.size(0), t.size(0))};
  for (int k = 1; k <= t.N(); ++k) {
    Mat acc = Mat::Zero(t.size(k), t.size(k));
    for (int j = 1; j <= k; ++j) acc += tensor(t, x.X[j], j, rsq[k - j], k - j);
    rsq.push_back(hermitian_part(acc));
  }
  return rsq;
}

Weights compute_R(const PathTower& t, const AdmissibleSequence& x) {
  Weights w;
  w.Rsq = compute_Rsq(t, x);
  for (int k = 0; k <= t.N(); ++k) {
    w.R.push_back(psd_sqrt(w.Rsq[k]));
    Eigen::JacobiSVD<Mat> svd(w.R[k]);
    if (w.R[k].size() && svd.singularValues().minCoeff() < 1e-12)
      throw Error("R_" + std::to_string(k) + ": not invertible");
    w.Rinv.push_back(w.R[k].inverse());
  }
  return w;
}

namespace {

void fill_products(const PathTower& t, Weights& w) {
  w.Zp.assign(1, Mat::Identity(t.size(0), t.size(0)));
  w.Zp_inv.assign(1, Mat::Identity(t.size(0), t.size(0)));
  for (int k = 1; k <= t.N(); ++k) {
    w.Zp.push_back(w.Z[k] * id_tensor(t, 1, w.Zp[k - 1], k - 1));
    w.Zp_inv.push_back(w.Zp[k].inverse());
  }
}

}  // namespace

Weights canonical_weights(const PathTower& t, const AdmissibleSequence& x) {
  x.validate(t);
  Weights w = compute_R(t, x);
  w.Z.push_back(Mat::Identity(t.size(0), t.size(0)));
  for (int k = 1; k <= t.N(); ++k) w.Z.push_back(w.Rinv[k] * id_tensor(t, 1, w.R[k - 1], k - 1));
  fill_products(t, w);
  return w;
}

Weights weights_from_Z(const PathTower& t, const AdmissibleSequence& x, const std::vector<Mat>& Z) {
  x.validate(t);
  Weights w = compute_R(t, x);
  if (static_cast<int>(Z.size()) < t.N() + 1) throw Error("Z: need levels 0..N");
  w.Z.push_back(Mat::Identity(t.size(0), t.size(0)));
  for (int k = 1; k <= t.N(); ++k) {
    const Mat& z = Z[k];
    std::string tag = "Z_" + std::to_string(k);
    if (z.rows() != t.size(k) || z.cols() != t.size(k)) throw Error(tag + ": wrong shape");
    Eigen::JacobiSVD<Mat> svd(z);
    if (svd.singularValues().minCoeff() < 1e-10) throw Error(tag + ": not invertible");
    if (!commutes_left(t, k, z, 1e-10)) throw Error(tag + ": does not commute with the left action");
    if (!is_module_map(t, k, z, 1e-10)) throw Error(tag + ": not a right module map");
    w.Z.push_back(z);
  }
  fill_products(t, w);
  for (int k = 1; k <= t.N(); ++k) {
    Mat target = w.Rinv[k] * w.Rinv[k];
    double r = (w.Zp[k].adjoint() * w.Zp[k] - target).cwiseAbs().maxCoeff();
    if (r > 1e-9 * std::max(1.0, target.cwiseAbs().maxCoeff()))
      throw Error("Z: product at level " + std::to_string(k) + " does not square to R^-2");
  }
  return w;
}

Mat zkj(const PathTower& t, const Weights& w, int k, int j) {
  return w.Zp[k] * id_tensor(t, k - j, w.Zp_inv[j], j);
}

double weight_residual(const Weights& w) {
  double r = 0.0;
  for (int k = 0; k <= w.N(); ++k) {
    Mat target = w.Rinv[k] * w.Rinv[k];
    r = std::max(r, (w.Zp[k].adjoint() * w.Zp[k] - target).cwiseAbs().maxCoeff());
  }
  return r;
}

std::vector<Mat> twisted_Z(const PathTower& t, const Weights& canon, Rng& rng) {
  std::vector<Mat> W{Mat::Identity(t.size(0), t.size(0))};
  for (int k = 1; k <= t.N(); ++k) {
    Mat u = Mat::Zero(t.size(k), t.size(k));
    for (const auto& g : range_source_groups(t, k)) {
      const int m = static_cast<int>(g.size());
      Mat b = rng.unitary(m);
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) u(g[a], g[c]) = b(a, c);
    }
    W.push_back(u);
  }
  std::vector<Mat> Z{Mat::Identity(t.size(0), t.size(0))};
  for (int k = 1; k <= t.N(); ++k) Z.push_back(W[k] * canon.Z[k] * id_tensor(t, 1, W[k - 1].adjoint(), k - 1));
  return Z;
}

BridgeResult admissible_from_kernel_coeffs(const std::vector<double>& a, int N) {
  if (a.empty() || std::abs(a[0] - 1.0) > 1e-14) throw Error("kernel coefficients: a_0 must be 1");
  BridgeResult r;
  const int top = std::min<int>(N, static_cast<int>(a.size()) - 1);
  std::vector<double> b(top + 1, 0.0);
  b[0] = 1.0;
  for (int k = 1; k <= top; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -s;
  }
  r.x.assign(top + 1, 0.0);
  for (int k = 1; k <= top; ++k) r.x[k] = -b[k];
  r.admissible = true;
  if (top >= 1 && r.x[1] <= 0) {
    r.admissible = false;
    r.reason = "x_1 <= 0";
    return r;
  }
  for (int k = 1; k <= top; ++k)
    if (r.x[k] < -1e-12) {
      r.admissible = false;
      r.reason = "x_" + std::to_string(k) + " < 0";
      break;
    }
  return r;
}

std::vector<double> dirichlet_coeffs(int N) {
  std::vector<double> a(N + 1);
  for (int k = 0; k <= N; ++k) a[k] = 1.0 / (k + 1);
  return a;
}

std::vector<double> szego_coeffs(int N) { return std::vector<double>(N + 1, 1.0); }

std::vector<double> bergman_coeffs(int N) {
  std::vector<double> a(N + 1);
  for (int k = 0; k <= N; ++k) a[k] = k + 1.0;
  return a;
}

}  // namespace hardy
