#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hardy/linalg.hpp"

namespace hardy {

// directed graph, edge e runs from src[e] to rng[e]
struct Graph {
  int n = 0;
  std::vector<int> src, rng;

  static Graph make(int n, const std::vector<std::pair<int, int>>& edges);
  int num_edges() const { return static_cast<int>(src.size()); }
  bool receives_edge(int v) const;
  bool emits_edge(int v) const;
};

// paths of length k, leftmost edge first, composable when s(e_i) = r(e_{i+1})
struct PathBasis {
  int level = 0;
  std::vector<std::vector<int>> paths;  // empty lists at level 0
  std::vector<int> source, range;
  int size() const { return static_cast<int>(source.size()); }
};

PathBasis path_basis(const Graph& g, int k);

class PathTower {
 public:
  PathTower(const Graph& g, int N);

  const Graph& graph() const { return g_; }
  int N() const { return N_; }
  int n() const { return g_.n; }
  int size(int k) const { return levels_[k].size(); }
  int source(int k, int i) const { return levels_[k].source[i]; }
  int range(int k, int i) const { return levels_[k].range[i]; }
  const std::vector<int>& path(int k, int i) const { return levels_[k].paths[i]; }
  const PathBasis& level(int k) const { return levels_[k]; }

  int index(const std::vector<int>& edges) const;  // -1 if absent
  int append(int k, int i, int e) const { return app_[k][i * g_.num_edges() + e]; }
  int concat(int a, int ia, int b, int ib) const;
  // prefix at level j and suffix at level k - j
  std::pair<int, int> split(int k, int i, int j) const;

 private:
  Graph g_;
  int N_;
  std::vector<PathBasis> levels_;
  std::vector<std::vector<int>> app_;
  std::vector<std::map<std::vector<int>, int>> lookup_;
};

// element of E^{(k)} in path coordinates
struct CorrElement {
  int level = 0;
  Vec c;
};

CorrElement basis_element(const PathTower& t, int k, int i);

// M-valued, conjugate linear in the first slot
Vec inner_product(const PathTower& t, const CorrElement& xi, const CorrElement& eta);

Mat left_action(const PathTower& t, const Vec& a, int k);
CorrElement left_mult(const PathTower& t, const Vec& a, const CorrElement& xi);
CorrElement right_mult(const PathTower& t, const CorrElement& xi, const Vec& a);
CorrElement act(const Mat& op, const CorrElement& xi);

// zeta -> xi (x) zeta from level j to level j + k
Mat insertion_matrix(const PathTower& t, const CorrElement& xi, int j);

CorrElement tensor(const PathTower& t, const CorrElement& xi, const CorrElement& eta);
Mat tensor(const PathTower& t, const Mat& a, int la, const Mat& b, int lb);
Mat id_tensor(const PathTower& t, int j, const Mat& b, int lb);
Mat tensor_id(const PathTower& t, const Mat& a, int la, int j);

// zeta -> xi <eta, zeta>
Mat theta(const PathTower& t, const CorrElement& xi, const CorrElement& eta);

// right module maps only couple paths with equal source
bool is_module_map(const PathTower& t, int k, const Mat& a, double tol = 1e-12);
// commutes with the left action iff only paths with equal range are coupled
bool commutes_left(const PathTower& t, int k, const Mat& a, double tol = 1e-12);

Vec vertex_unit(int n, int v);

// sigma(a) = diag a(v) I_{m_v}
struct Representation {
  std::vector<int> mult, offset;
  int dim = 0;

  static Representation make(const Graph& g, const std::vector<int>& mult);
  Mat sigma(const Vec& a) const;
  Mat commutant_unit(int v, int a, int b) const;  // e_{ab} inside block v
  int num_commutant_units() const;
  std::vector<Mat> commutant_units() const;
  static Representation direct_sum(const Representation& a, const Representation& b);
};

// E^{(k)} (x)_sigma H for k <= N in coordinates (path, i), i < m_{s(path)}
class InducedSpace {
 public:
  InducedSpace(const PathTower& t, const Representation& rep);

  const PathTower& tower() const { return *t_; }
  const Representation& rep() const { return rep_; }
  int N() const { return t_->N(); }
  int dim() const { return dim_; }
  int level_dim(int k) const { return ldim_[k]; }
  int level_offset(int k) const { return loff_[k]; }
  int local(int k, int p, int i) const { return poff_[k][p] + i; }
  int index(int k, int p, int i) const { return loff_[k] + poff_[k][p] + i; }
  const std::vector<int>& level_of() const { return level_of_; }
  int block_offset(int v) const { return rep_.offset[v]; }

  // A (x) I_H from level kin to level kout, A given in path coordinates
  Mat induce(const Mat& a, int kin, int kout) const;
  // h -> xi (x) h inside the level block of xi
  Mat creation_vector(const CorrElement& xi) const;
  // same, embedded in all of K
  Mat L(const CorrElement& xi) const;
  Mat level_inclusion(int k) const;  // K_k -> K
  // I_j (x) T : K_j -> K_{j+1}, T : H -> level 1 block
  Mat id_tensor(int j, const Mat& T) const;
  // I_k (x) A on level k, A in sigma(M)'
  Mat id_tensor_commutant(int k, const Mat& a) const;

 private:
  const PathTower* t_;
  Representation rep_;
  int dim_ = 0;
  std::vector<int> ldim_, loff_, level_of_;
  std::vector<std::vector<int>> poff_;
};

struct GammaDecomposition {
  Mat gamma;  // quotient coordinates -> sum over paths of H_{s(path)}
  Mat emb, emb_pinv;
  double unitarity_residual = 0.0;
};

GammaDecomposition gamma_decomposition(const InducedSpace& K, int k);
// Y (x) I on the algebraic tensor, pushed through the quotient
Mat quotient_operator(const GammaDecomposition& gd, const Representation& rep, const Mat& y);

}  // namespace hardy
