#pragma once

#include <map>

#include "hardy/fock.hpp"
#include "hardy/interior.hpp"

namespace hardy {

// intertwiners T : H -> E (x)_sigma H, T sigma(a) = (phi(a) (x) I) T
struct DualCorrespondence {
  std::vector<Mat> basis;            // level-1 coordinates x dim H
  std::vector<int> edge, row, col;   // matrix unit (edge, i) <- col
  int nullity = 0;                   // dimension found by the null space solve
  double canonical_residual = 0.0;
  int size() const { return static_cast<int>(basis.size()); }
  // expansion in the basis (orthonormal for the trace pairing)
  Vec coeffs(const Mat& T) const;
};

DualCorrespondence intertwiner_basis(const InducedSpace& K, double tol = 1e-10);

// (E^sigma)^{(k)} (x)_iota H in coordinates, k <= N.
// Level k of the module is spanned by tuples of basis intertwiners with nonzero
// product; level 0 by the matrix units of sigma(M)'.
class DualFock {
 public:
  DualFock(const InducedSpace& K, const DualCorrespondence& es);

  const InducedSpace& K() const { return *K_; }
  const DualCorrespondence& es() const { return *es_; }
  int N() const { return K_->N(); }

  int num_tuples(int k) const { return static_cast<int>(col_[k].size()); }
  int tuple_offset(int k) const { return toff_[k]; }
  int tuple_dim() const { return tdim_; }
  int coord_dim(int k) const { return it_[k].rank; }
  int coord_offset(int k) const { return coff_[k]; }
  int dim() const { return cdim_; }
  const std::vector<int>& level_of() const { return level_of_; }

  const std::vector<int>& factors(int k, int a) const { return fac_[k][a]; }
  int unit_of(int a) const { return unit_[a]; }  // level 0 only
  int column(int k, int a) const { return col_[k][a]; }
  int target(int k, int a) const { return tgt_[k][a]; }  // local index in K_k
  int lookup(const std::vector<int>& f) const;        // level >= 1, -1 if zero; any factorization
  int unit_index(int v, int a, int b) const;

  const InteriorTensor& quotient(int k) const { return it_[k]; }
  const Mat& Lambda(int k, int a) const { return lam_[k][a]; }
  const Mat& U(int k) const { return U_[k]; }
  Mat U_total() const;
  double unitarity_residual() const { return unit_res_; }
  double gram_residual() const { return gram_res_; }

  // abstract Gram of tuples, computed without the Lambda maps
  Mat abstract_gram(int k) const;

  // module operators are matrices over tuples; these push them to coordinates
  Mat to_coords(const Mat& op, int kout, int kin) const;
  Mat to_coords(const Mat& op) const;  // whole space, tuple blocks
  Mat from_coords(const Mat& B, int kout, int kin, double* residual) const;

  // level-1 expansion helpers
  Vec expand_level1(const Mat& T) const { return es_->coeffs(T); }
  Mat unit_matrix(int a) const;

  // module maps between tuple levels
  Mat phi(const Mat& A, int k) const;           // left action of sigma(M)'
  Mat phi_total(const Mat& A) const;
  Mat right_mult(const Mat& A, int k) const;     // right action, xi -> xi A
  Mat prepend(const Vec& eta, int l, int j) const;  // zeta -> eta (x) zeta, eta at level l
  Mat id_tensor(int j, const Mat& B, int lb) const;  // I'_j (x) B
  Mat tensor_id(const Mat& B, int lb, int j) const;  // B (x) I'_j
  Mat tensor(const Mat& A, int la, const Mat& B, int lb) const;

  // coordinates: I'_j (x) T for T : H -> level-1 coordinates
  Mat coord_id_tensor(int j, const Mat& T) const;
  // h -> alpha (x) h for a tuple combination at level k
  Mat creation_vector(const Vec& alpha, int k) const;
  Mat L(const Vec& alpha, int k) const;          // same, embedded in all levels
  Mat L_identity() const;                        // h -> 1 (x) h
  // tuples with column at local index 0 of its block; Parseval basis
  std::vector<int> parseval_tuples(int k) const;
  // I' (x) A on coordinates, A acting on H
  Mat coord_act_H(const Mat& A) const;

 private:
  const InducedSpace* K_;
  const DualCorrespondence* es_;
  std::vector<std::vector<std::vector<int>>> fac_;
  std::vector<std::vector<int>> col_, tgt_;
  std::vector<int> unit_;
  std::vector<std::map<std::pair<int, int>, int>> look_;  // (target, column)
  std::vector<std::vector<std::vector<int>>> next_;
  std::vector<std::vector<Mat>> lam_;
  std::vector<InteriorTensor> it_;
  std::vector<Mat> U_;
  std::vector<int> toff_, coff_, level_of_;
  int tdim_ = 0, cdim_ = 0;
  double unit_res_ = 0.0, gram_res_ = 0.0;
  std::vector<std::vector<Mat>> idt_;  // cached I_j (x) b on K
};

// C_k = Z^{(k)} (Z^{(k-1)} (x) I_1)^{-1}
Mat c_operator(const PathTower& t, const Weights& w, int k);

struct DualWeights {
  std::vector<Mat> X, Z, Zp, Zp_inv, Rsq, C;  // tuple-space matrices per level
  double extraction_residual = 0.0;
  double product_residual = 0.0;      // Z'^{(k)} against U^*(Z^{(k)} (x) I) U
  double weight_residual = 0.0;       // Z'^{(k)*} Z'^{(k)} against R'^{-2}
  double c_residual = 0.0;            // U^*(Z_k (x) I) U against C'_k
};

DualWeights dual_weights(const DualFock& d, const Weights& w, const AdmissibleSequence& x);
// Z'^{(k,j)}
Mat dual_zkj(const DualFock& d, const DualWeights& dw, int k, int j);
// W'_eta on the tuple space, eta a tuple combination at level l
Mat dual_creation(const DualFock& d, const DualWeights& dw, const Vec& eta, int l);
Mat dual_normalized_creation(const DualFock& d, const DualWeights& dw, const Vec& xi, int l);

// pi^sigma(Y) = U^*(Y (x) I)U for an operator already on K
Mat pi_sigma(const DualFock& d, const Mat& yK);
// iota-induced dual operator moved to K, commutes with every Y (x) I
Mat rho(const DualFock& d, const Mat& coord_op);

struct CommutationReport {
  double unitarity = 0.0;
  double commutation = 0.0;
  double phi_match = 0.0;       // pi^sigma(phi(a)) against I' (x) sigma(a)
  double omega_match = 0.0;     // U Lambda(omega xi) against L_xi
  double creation_match = 0.0;  // transported creation operators
  DualWeights dw;
};

CommutationReport commutation_check(const TruncatedFock& f, const DualFock& d, const Weights& w,
                                          const AdmissibleSequence& x);

}  // namespace hardy
