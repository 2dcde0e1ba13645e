#pragma once

#include <climits>

#include "hardy/weights.hpp"

namespace hardy {

// F(E) truncated at level N, coordinates ordered by level then path
class TruncatedFock {
 public:
  explicit TruncatedFock(const PathTower& t);

  const PathTower& tower() const { return *t_; }
  int N() const { return t_->N(); }
  int dim() const { return dim_; }
  int level_offset(int k) const { return off_[k]; }
  int level_dim(int k) const { return t_->size(k); }

  Mat Q(int k) const;                 // projection onto level k
  Mat embed(int k) const;             // level k -> F
  Vec hat(const CorrElement& xi) const;
  Mat block(const Mat& op, int kout, int kin) const;

 private:
  const PathTower* t_;
  int dim_ = 0;
  std::vector<int> off_;
};

constexpr int kMixedDegree = INT_MIN;

struct FockOperator {
  Mat m;
  int degree = 0;
};

// degree of a block operator, kMixedDegree if several diagonals are nonzero
int operator_degree(const TruncatedFock& f, const Mat& op, double tol = 1e-14);

Mat phi_inf(const TruncatedFock& f, const Vec& a);
FockOperator creation(const TruncatedFock& f, const CorrElement& xi);
// level i block is Z^{(i, i-k)} for i >= k
Mat weight_diagonal(const TruncatedFock& f, const Weights& w, int k);
FockOperator weighted_creation(const TruncatedFock& f, const Weights& w, const CorrElement& xi);
// W_{(Z^{(k)})^{-1} xi}
FockOperator normalized_creation(const TruncatedFock& f, const Weights& w, const CorrElement& xi);

// A (x) I_H on the induced space, A a module operator on F
Mat induce(const InducedSpace& K, const TruncatedFock& f, const Mat& op);
// sigma(M)' acting on the H leg of every level
Mat commutant_on_K(const InducedSpace& K, const Mat& a);

struct CheckReport {
  double residual = 0.0;
  std::vector<std::pair<std::string, double>> parts;
  void add(const std::string& name, double r) {
    parts.emplace_back(name, r);
    residual = std::max(residual, r);
  }
};

// Parseval sums at level k: theta_{S xi, S xi}, creation vectors, T T^*
CheckReport handysums_check(const TruncatedFock& f, const InducedSpace& K, int k, Rng& rng);
// sum_j sum_xi W W^* for X_j^{1/2} xi equals I - Q_0
CheckReport sums_to_projection_check(const TruncatedFock& f, const Weights& w, const AdmissibleSequence& x);

}  // namespace hardy
