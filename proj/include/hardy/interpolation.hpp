#pragma once

#include <vector>

#include "hardy/lifting.hpp"

namespace hardy {

// kernel data for points acting on H, cached per level of K
class DiscModel {
 public:
  DiscModel(const InducedSpace& K, const AdmissibleSequence& x, const Weights& w);

  const InducedSpace& K() const { return *K_; }
  const AdmissibleSequence& x() const { return *x_; }
  const Weights& w() const { return *w_; }
  int N() const { return K_->N(); }
  int dim_h() const { return K_->rep().dim; }

  const Mat& X(int k) const { return X_[k]; }         // X_k (x) I on K_k
  const Mat& Rsq(int k) const { return Rsq_[k]; }     // R_k^2 (x) I on K_k
  const Mat& Zinv(int k) const { return Zinv_[k]; }   // (Z^{(k)})^{-1} (x) I on K_k
  // known scalar x_k past the truncation, zero otherwise
  double x_beyond(int k) const;
  // free entries of a point: edge e couples block s(e) of K_1 to block r(e) of H
  std::vector<std::pair<int, int>> point_support() const;
  // sigma(M)' as block matrices, all matrix units
  const std::vector<Mat>& commutant_units() const { return units_; }

 private:
  const InducedSpace* K_;
  const AdmissibleSequence* x_;
  const Weights* w_;
  std::vector<Mat> X_, Rsq_, Zinv_, units_;
};

struct DiscPoint {
  Mat z;                 // K_1 -> H
  std::vector<Mat> pw;   // z^{(k)} : K_k -> H, pw[0] = I
  double phi_norm = 0.0; // ||sum_{k <= N} z^{(k)} (X_k (x) I) z^{(k)*}||
  double phi_tail = 0.0; // bound on the terms past N
  double kernel_tail = 0.0;  // bound on ||sum_{k > N} z^{(k)} (R_k^2 (x) I) z^{(k)*}||
  double intertwining = 0.0;
  double power_residual = 0.0;  // z^{(k+l)} against z^{(k)} (I_k (x) z^{(l)})
};

constexpr double kDiscMargin = 1e-6;

// throws when z is not an intertwiner or lies too close to the boundary
DiscPoint make_point(const DiscModel& m, const Mat& z);
// z from one block per edge, blocks m_{r(e)} x m_{s(e)}
Mat point_from_blocks(const DiscModel& m, const std::vector<Mat>& blocks);
// random point with phi_norm equal to radius
DiscPoint random_point(const DiscModel& m, double radius, Rng& rng);
DiscPoint scalar_point(const DiscModel& m, cplx z);

struct SeriesValue {
  Mat value;
  double tail = 0.0;
};

SeriesValue phi_map(const DiscModel& m, const DiscPoint& z, const Mat& A);

struct NeumannReport {
  Mat neumann, kernel;
  int terms = 0;
  double residual = 0.0;
  double budget = 0.0;  // Neumann tail plus kernel tail
  bool ok() const { return residual <= budget + 1e-12; }
};

NeumannReport neumann_check(const DiscModel& m, const DiscPoint& z, const Mat& A);

// sum_k w^{(k)} (R_k^2 (x) A) z^{(k)*}
SeriesValue szego_kernel(const DiscModel& m, const DiscPoint& w, const DiscPoint& z, const Mat& A);

// c_z as the stacked map H -> K, level k block ((Z^{(k)})^{-1*} (x) I) z^{(k)*}
Mat cauchy_column(const DiscModel& m, const DiscPoint& z);
// tuple coefficients of c_z(k), k <= N, concatenated by level
Vec cauchy_tuples(const DualFock& d, const DiscModel& m, const DiscPoint& z);
// <c_w, A . c_z> from tuple coefficients and the Lambda maps
Mat kernel_from_tuples(const DualFock& d, const DiscModel& m, const DiscPoint& w, const DiscPoint& z, const Mat& A);
// <c_w, A . c_z> from the stacked Cauchy maps
Mat kernel_from_cauchy(const DiscModel& m, const Mat& cw, const Mat& cz, const Mat& A);

// (W'_xi)^* (D . c_z) against <D^* xi, z^*> . c_z, levels below N; xi a level-1 tuple combination
double iota_w_star_check(const DualFock& d, const DualWeights& dw, const DiscModel& m, const DiscPoint& z,
                         const Vec& xi, const Mat& D);

struct PickProblem {
  std::vector<DiscPoint> points;
  std::vector<Mat> B, F;  // B_i : s dH x s dH, F_i : s dH x t dH
  int s = 1, t = 1;
  void validate(int dim_h) const;
};

struct PickReport {
  bool cp = false;
  double min_eig = 0.0;
  double choi_norm = 0.0;
  double kernel_tail = 0.0;
  std::vector<Mat> choi;  // one block per vertex, rows (point, unit row, H^{(s)})
  std::vector<Vec> min_vectors;
};

constexpr double kChoiFloor = 1e-9;

PickReport pick_map_cp_test(const DiscModel& m, const PickProblem& p);

// ||sum A_{pi} c_{z_i} (x) B_i^* h_{pi}||^2 - ||sum A_{pi} c_{z_i} (x) F_i^* h_{pi}||^2
double quadratic_form(const DiscModel& m, const PickProblem& p, const std::vector<std::vector<Mat>>& A,
                      const std::vector<std::vector<Vec>>& h);

struct QuadraticCheck {
  double from_eigvec = 0.0;   // form at the Choi eigenvector family, normalized
  double eig = 0.0;           // matching Choi eigenvalue
  double min_random = 0.0;    // least normalized form over random families
  bool consistent = false;    // verdict agrees with the sign of the forms
};

QuadraticCheck quadratic_form_check(const DiscModel& m, const PickProblem& p, const PickReport& r, Rng& rng,
                                    int families = 200);

struct NpSolution {
  Mat G;                         // coords^{(t)} -> coords^{(s)}
  std::vector<Mat> values;       // Yhat(z_i), s dH x t dH
  std::vector<double> residuals; // ||B_i Yhat(z_i) - F_i||
  double max_residual = 0.0;
  double norm = 0.0;
  double R_norm = 0.0;
  double defect = 0.0;           // co-invariance of the truncated J_B, J_F
  int dim_jb = 0, dim_jf = 0;
  LiftResult lift;
};

NpSolution np_solve(const DiscModel& m, const DualFock& d, const DualWeights& dw, const PickProblem& p,
                    const LiftOptions& opt = {});

// generator words of the truncated algebra
struct Letter {
  bool is_phi = false;
  Vec a;           // phi_inf(a)
  CorrElement xi;  // W_xi
};
using Word = std::vector<Letter>;

// (sigma x z) of a single letter or a product
Mat eval_letter(const DiscModel& m, const DiscPoint& z, const Letter& l);
Mat eval_word(const DiscModel& m, const DiscPoint& z, const Word& w);
// the word as an operator on the truncated Fock space
Mat word_operator(const TruncatedFock& f, const Weights& w, const Word& word);
// L_z^* (Y (x) I) L_1 for Y already induced on K
Mat vacuum_column_eval(const DiscModel& m, const DiscPoint& z, const Mat& yK);

}  // namespace hardy
