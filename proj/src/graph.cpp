#include "hardy/graph.hpp"

#include "hardy/interior.hpp"

namespace hardy {

Graph Graph::make(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) throw Error("graph: need at least one vertex");
  Graph g;
  g.n = n;
  for (const auto& [s, r] : edges) {
    if (s < 0 || s >= n || r < 0 || r >= n) throw Error("graph: edge endpoint out of range");
    g.src.push_back(s);
    g.rng.push_back(r);
  }
  for (int v = 0; v < n; ++v) {
    if (!g.receives_edge(v)) throw Error("graph: vertex " + std::to_string(v) + " receives no edge (left action not faithful)");
    if (!g.emits_edge(v)) throw Error("graph: vertex " + std::to_string(v) + " emits no edge (correspondence not full)");
  }
  return g;
}

bool Graph::receives_edge(int v) const {
  for (int r : rng)
    if (r == v) return true;
  return false;
}

bool Graph::emits_edge(int v) const {
  for (int s : src)
    if (s == v) return true;
  return false;
}

PathBasis path_basis(const Graph& g, int k) {
  if (k < 0) throw Error("path_basis: negative level");
  PathBasis b;
  b.level = k;
  if (k == 0) {
    for (int v = 0; v < g.n; ++v) {
      b.paths.emplace_back();
      b.source.push_back(v);
      b.range.push_back(v);
    }
    return b;
  }
  // depth first over edges in id order gives lexicographic order
  std::vector<int> cur;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      b.paths.push_back(cur);
      b.source.push_back(g.src[cur.back()]);
      b.range.push_back(g.rng[cur.front()]);
      return;
    }
    for (int e = 0; e < g.num_edges(); ++e) {
      if (depth > 0 && g.src[cur.back()] != g.rng[e]) continue;
      cur.push_back(e);
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return b;
}

PathTower::PathTower(const Graph& g, int N) : g_(g), N_(N) {
  if (N < 0) throw Error("PathTower: negative truncation");
  for (int k = 0; k <= N + 1; ++k) levels_.push_back(path_basis(g, k));
  lookup_.resize(N + 2);
  for (int k = 1; k <= N + 1; ++k)
    for (int i = 0; i < levels_[k].size(); ++i) lookup_[k][levels_[k].paths[i]] = i;
  const int ne = g.num_edges();
  app_.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    app_[k].assign(static_cast<size_t>(levels_[k].size()) * ne, -1);
    for (int i = 0; i < levels_[k].size(); ++i)
      for (int e = 0; e < ne; ++e) {
        if (levels_[k].source[i] != g.rng[e]) continue;
        std::vector<int> p = levels_[k].paths[i];
        p.push_back(e);
        app_[k][static_cast<size_t>(i) * ne + e] = lookup_[k + 1].at(p);
      }
  }
  // keep the extra level only for append lookups
  levels_.pop_back();
  lookup_.pop_back();
}

int PathTower::index(const std::vector<int>& edges) const {
  const int k = static_cast<int>(edges.size());
  if (k == 0 || k > N_) return -1;
  auto it = lookup_[k].find(edges);
  return it == lookup_[k].end() ? -1 : it->second;
}

int PathTower::concat(int a, int ia, int b, int ib) const {
  if (a + b > N_) throw Error("concat: level beyond truncation");
  if (a == 0) return range(b, ib) == ia ? ib : -1;
  if (b == 0) return source(a, ia) == ib ? ia : -1;
  if (source(a, ia) != range(b, ib)) return -1;
  int cur = ia;
  int lev = a;
  for (int e : path(b, ib)) cur = append(lev++, cur, e);
  return cur;
}

std::pair<int, int> PathTower::split(int k, int i, int j) const {
  if (j == 0) return {range(k, i), i};
  if (j == k) return {i, source(k, i)};
  const auto& p = path(k, i);
  std::vector<int> pre(p.begin(), p.begin() + j), suf(p.begin() + j, p.end());
  return {lookup_[j].at(pre), lookup_[k - j].at(suf)};
}

CorrElement basis_element(const PathTower& t, int k, int i) {
  CorrElement x{k, Vec::Zero(t.size(k))};
  x.c(i) = 1.0;
  return x;
}

Vec inner_product(const PathTower& t, const CorrElement& xi, const CorrElement& eta) {
  if (xi.level != eta.level) throw Error("inner_product: level mismatch");
  Vec out = Vec::Zero(t.n());
  for (int p = 0; p < t.size(xi.level); ++p) out(t.source(xi.level, p)) += std::conj(xi.c(p)) * eta.c(p);
  return out;
}

Mat left_action(const PathTower& t, const Vec& a, int k) {
  Mat d = Mat::Zero(t.size(k), t.size(k));
  for (int p = 0; p < t.size(k); ++p) d(p, p) = a(t.range(k, p));
  return d;
}

CorrElement left_mult(const PathTower& t, const Vec& a, const CorrElement& xi) {
  CorrElement out = xi;
  for (int p = 0; p < t.size(xi.level); ++p) out.c(p) *= a(t.range(xi.level, p));
  return out;
}

CorrElement right_mult(const PathTower& t, const CorrElement& xi, const Vec& a) {
  CorrElement out = xi;
  for (int p = 0; p < t.size(xi.level); ++p) out.c(p) *= a(t.source(xi.level, p));
  return out;
}

CorrElement act(const Mat& op, const CorrElement& xi) { return {xi.level, op * xi.c}; }

Mat insertion_matrix(const PathTower& t, const CorrElement& xi, int j) {
  const int k = xi.level;
  Mat m = Mat::Zero(t.size(j + k), t.size(j));
  for (int q = 0; q < t.size(j); ++q)
    for (int p = 0; p < t.size(k); ++p) {
      if (xi.c(p) == cplx(0.0)) continue;
      int r = t.concat(k, p, j, q);
      if (r >= 0) m(r, q) += xi.c(p);
    }
  return m;
}

CorrElement tensor(const PathTower& t, const CorrElement& xi, const CorrElement& eta) {
  return {xi.level + eta.level, insertion_matrix(t, xi, eta.level) * eta.c};
}

Mat tensor(const PathTower& t, const Mat& a, int la, const Mat& b, int lb) {
  const int k = la + lb;
  const int n = t.size(k);
  std::vector<std::pair<int, int>> parts(n);
  for (int x = 0; x < n; ++x) parts[x] = t.split(k, x, la);
  Mat out(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) out(x, y) = a(parts[x].first, parts[y].first) * b(parts[x].second, parts[y].second);
  return out;
}

Mat id_tensor(const PathTower& t, int j, const Mat& b, int lb) {
  return tensor(t, Mat::Identity(t.size(j), t.size(j)), j, b, lb);
}

Mat tensor_id(const PathTower& t, const Mat& a, int la, int j) {
  return tensor(t, a, la, Mat::Identity(t.size(j), t.size(j)), j);
}

Mat theta(const PathTower& t, const CorrElement& xi, const CorrElement& eta) {
  const int k = xi.level;
  Mat m = Mat::Zero(t.size(k), t.size(k));
  for (int q = 0; q < t.size(k); ++q)
    for (int p = 0; p < t.size(k); ++p)
      if (t.source(k, q) == t.source(k, p)) m(q, p) = xi.c(q) * std::conj(eta.c(p));
  return m;
}

bool is_module_map(const PathTower& t, int k, const Mat& a, double tol) {
  for (int p = 0; p < t.size(k); ++p)
    for (int q = 0; q < t.size(k); ++q)
      if (t.source(k, q) != t.source(k, p) && std::abs(a(q, p)) > tol) return false;
  return true;
}

bool commutes_left(const PathTower& t, int k, const Mat& a, double tol) {
  for (int p = 0; p < t.size(k); ++p)
    for (int q = 0; q < t.size(k); ++q)
      if (t.range(k, q) != t.range(k, p) && std::abs(a(q, p)) > tol) return false;
  return true;
}

Vec vertex_unit(int n, int v) {
  Vec a = Vec::Zero(n);
  a(v) = 1.0;
  return a;
}

Representation Representation::make(const Graph& g, const std::vector<int>& mult) {
  if (static_cast<int>(mult.size()) != g.n) throw Error("representation: need one multiplicity per vertex");
  Representation r;
  r.mult = mult;
  for (int m : mult) {
    if (m < 1) throw Error("representation: multiplicities must be positive (faithful)");
    r.offset.push_back(r.dim);
    r.dim += m;
  }
  return r;
}

Mat Representation::sigma(const Vec& a) const {
  Mat s = Mat::Zero(dim, dim);
  for (size_t v = 0; v < mult.size(); ++v)
    for (int i = 0; i < mult[v]; ++i) s(offset[v] + i, offset[v] + i) = a(v);
  return s;
}

Mat Representation::commutant_unit(int v, int a, int b) const {
  Mat u = Mat::Zero(dim, dim);
  u(offset[v] + a, offset[v] + b) = 1.0;
  return u;
}

int Representation::num_commutant_units() const {
  int c = 0;
  for (int m : mult) c += m * m;
  return c;
}

std::vector<Mat> Representation::commutant_units() const {
  std::vector<Mat> out;
  for (size_t v = 0; v < mult.size(); ++v)
    for (int a = 0; a < mult[v]; ++a)
      for (int b = 0; b < mult[v]; ++b) out.push_back(commutant_unit(static_cast<int>(v), a, b));
  return out;
}

Representation Representation::direct_sum(const Representation& a, const Representation& b) {
  std::vector<int> m(a.mult.size());
  for (size_t v = 0; v < m.size(); ++v) m[v] = a.mult[v] + b.mult[v];
  Representation r;
  r.mult = m;
  for (int x : m) {
    r.offset.push_back(r.dim);
    r.dim += x;
  }
  return r;
}

InducedSpace::InducedSpace(const PathTower& t, const Representation& rep) : t_(&t), rep_(rep) {
  if (static_cast<int>(rep.mult.size()) != t.n()) throw Error("InducedSpace: representation does not match graph");
  for (int k = 0; k <= t.N(); ++k) {
    loff_.push_back(dim_);
    std::vector<int> po;
    int d = 0;
    for (int p = 0; p < t.size(k); ++p) {
      po.push_back(d);
      d += rep.mult[t.source(k, p)];
    }
    poff_.push_back(po);
    ldim_.push_back(d);
    dim_ += d;
    for (int i = 0; i < d; ++i) level_of_.push_back(k);
  }
}

Mat InducedSpace::induce(const Mat& a, int kin, int kout) const {
  const auto& t = *t_;
  Mat out = Mat::Zero(ldim_[kout], ldim_[kin]);
  for (int p = 0; p < t.size(kin); ++p)
    for (int q = 0; q < t.size(kout); ++q) {
      cplx v = a(q, p);
      if (v == cplx(0.0)) continue;
      int sp = t.source(kin, p), sq = t.source(kout, q);
      if (sp != sq) {
        if (std::abs(v) > 1e-12) throw Error("induce: operator is not a right module map");
        continue;
      }
      for (int i = 0; i < rep_.mult[sp]; ++i) out(local(kout, q, i), local(kin, p, i)) = v;
    }
  return out;
}

Mat InducedSpace::creation_vector(const CorrElement& xi) const {
  const auto& t = *t_;
  const int k = xi.level;
  Mat out = Mat::Zero(ldim_[k], rep_.dim);
  for (int p = 0; p < t.size(k); ++p) {
    int v = t.source(k, p);
    for (int i = 0; i < rep_.mult[v]; ++i) out(local(k, p, i), rep_.offset[v] + i) = xi.c(p);
  }
  return out;
}

Mat InducedSpace::L(const CorrElement& xi) const {
  Mat out = Mat::Zero(dim_, rep_.dim);
  out.middleRows(loff_[xi.level], ldim_[xi.level]) = creation_vector(xi);
  return out;
}

Mat InducedSpace::level_inclusion(int k) const {
  Mat out = Mat::Zero(dim_, ldim_[k]);
  out.middleRows(loff_[k], ldim_[k]).setIdentity();
  return out;
}

Mat InducedSpace::id_tensor(int j, const Mat& T) const {
  const auto& t = *t_;
  if (j + 1 > t.N()) throw Error("id_tensor: level beyond truncation");
  Mat out = Mat::Zero(ldim_[j + 1], ldim_[j]);
  for (int p = 0; p < t.size(j); ++p) {
    int v = t.source(j, p);
    for (int i = 0; i < rep_.mult[v]; ++i) {
      int h = rep_.offset[v] + i;
      for (int e = 0; e < t.graph().num_edges(); ++e) {
        if (t.graph().rng[e] != v) continue;
        int pe = t.append(j, p, e);
        int w = t.graph().src[e];
        for (int i2 = 0; i2 < rep_.mult[w]; ++i2) out(local(j + 1, pe, i2), local(j, p, i)) = T(local(1, e, i2), h);
      }
    }
  }
  return out;
}

Mat InducedSpace::id_tensor_commutant(int k, const Mat& a) const {
  const auto& t = *t_;
  Mat out = Mat::Zero(ldim_[k], ldim_[k]);
  for (int p = 0; p < t.size(k); ++p) {
    int v = t.source(k, p);
    int m = rep_.mult[v];
    out.block(local(k, p, 0), local(k, p, 0), m, m) = a.block(rep_.offset[v], rep_.offset[v], m, m);
  }
  return out;
}

GammaDecomposition gamma_decomposition(const InducedSpace& K, int k) {
  const auto& t = K.tower();
  const auto& rep = K.rep();
  const int np = t.size(k) * rep.dim;
  // algebraic pairs (p, h), Gram entry <h, sigma(<p, q>) h'>
  Mat gram = Mat::Zero(np, np);
  for (int p = 0; p < t.size(k); ++p) {
    int v = t.source(k, p);
    for (int i = 0; i < rep.mult[v]; ++i) {
      int h = rep.offset[v] + i;
      gram(p * rep.dim + h, p * rep.dim + h) = 1.0;
    }
  }
  InteriorTensor it = interior_tensor(gram);
  // gamma(p (x) h) has component sigma(<xi, p>) h in H_xi
  Mat galg = Mat::Zero(K.level_dim(k), np);
  for (int p = 0; p < t.size(k); ++p) {
    int v = t.source(k, p);
    for (int i = 0; i < rep.mult[v]; ++i) galg(K.local(k, p, i), p * rep.dim + rep.offset[v] + i) = 1.0;
  }
  GammaDecomposition gd;
  gd.emb = it.emb;
  gd.emb_pinv = it.emb_pinv;
  gd.gamma = galg * it.emb_pinv;
  const int d = K.level_dim(k);
  if (gd.gamma.cols() != d) throw Error("gamma_decomposition: dimension mismatch");
  gd.unitarity_residual = std::max((gd.gamma.adjoint() * gd.gamma - Mat::Identity(d, d)).cwiseAbs().maxCoeff(),
                                   (gd.gamma * gd.gamma.adjoint() - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
  return gd;
}

Mat quotient_operator(const GammaDecomposition& gd, const Representation& rep, const Mat& y) {
  Mat yalg = kron(y, Mat::Identity(rep.dim, rep.dim));
  Mat coords = gd.emb * yalg * gd.emb_pinv;
  return gd.gamma * coords * gd.gamma.adjoint();
}

}  // namespace hardy
