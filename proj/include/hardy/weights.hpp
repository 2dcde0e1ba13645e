#pragma once

#include <string>
#include <vector>

#include "hardy/graph.hpp"

namespace hardy {

// ordered compositions of n (parts >= 1), optionally with a fixed number of parts
std::vector<std::vector<int>> compositions(int n);
std::vector<std::vector<int>> compositions(int n, int parts);

struct AdmissibleSequence {
  int N = 0;
  std::vector<Mat> X;           // X[0] = 0, X[k] acts on level k
  std::vector<double> scalar;   // scalar[k] when built from scalars, may run past N
  std::string radius_certificate;

  static AdmissibleSequence from_scalar(const PathTower& t, const std::vector<double>& x);
  static AdmissibleSequence from_matrices(const PathTower& t, const std::vector<Mat>& x);
  // throws naming the first violated condition
  void validate(const PathTower& t) const;
  bool is_scalar() const { return !scalar.empty(); }
};

// paths at level k grouped by (range, source); the blocks of phi_k(M)' inside L(E^k)
std::vector<std::vector<int>> range_source_groups(const PathTower& t, int k);

AdmissibleSequence random_graph_sequence(const PathTower& t, Rng& rng, double decay = 0.35);

// sum over compositions of X_{a1} (x) ... (x) X_{am}; exponential, for checks only
Mat composition_sum(const PathTower& t, const AdmissibleSequence& x, int k);

struct Weights {
  std::vector<Mat> Rsq, R, Rinv;
  std::vector<Mat> Z;        // Z_k
  std::vector<Mat> Zp;       // Z^{(k)} = Z_k (I_1 (x) Z^{(k-1)})
  std::vector<Mat> Zp_inv;
  int N() const { return static_cast<int>(R.size()) - 1; }
};

// R_k^2 through R_k^2 = sum_j X_j (x) R_{k-j}^2
std::vector<Mat> compute_Rsq(const PathTower& t, const AdmissibleSequence& x);
Weights compute_R(const PathTower& t, const AdmissibleSequence& x);

Weights canonical_weights(const PathTower& t, const AdmissibleSequence& x);
// validates a user sequence Z_1..Z_N (Z[0] ignored)
Weights weights_from_Z(const PathTower& t, const AdmissibleSequence& x, const std::vector<Mat>& Z);
// Z^{(k,j)} = Z^{(k)} (I_{k-j} (x) Z^{(j)})^{-1}
Mat zkj(const PathTower& t, const Weights& w, int k, int j);
double weight_residual(const Weights& w);
// another valid weight sequence for the same X, twisted by block unitaries
std::vector<Mat> twisted_Z(const PathTower& t, const Weights& canon, Rng& rng);

struct BridgeResult {
  std::vector<double> x;  // x[0] = 0
  bool admissible = false;
  std::string reason;
};

// x = coefficients of 1 - 1 / (sum_k a_k t^k)
BridgeResult admissible_from_kernel_coeffs(const std::vector<double>& a, int N);
std::vector<double> dirichlet_coeffs(int N);
std::vector<double> szego_coeffs(int N);
std::vector<double> bergman_coeffs(int N);

}  // namespace hardy
