#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "hardy/duality.hpp"
#include "hardy/fock.hpp"

namespace hardy {

struct ParrottProblem {
  Mat R, S, T;
  double mu = 0.0;  // max(||[R; S]||, ||[R, T]||)
};

ParrottProblem make_parrott(Mat R, Mat S, Mat T);
// missing corner of [[R, T], [S, U]] with norm mu
Mat parrott_complete(const ParrottProblem& p);
Mat parrott_assemble(const ParrottProblem& p, const Mat& U);

// pieces of a truncated Fock model needed by the lift loop
struct LiftTerm {
  SpMat L;  // h -> xi (x) h
  SpMat W;  // W_{(Z^{(k)})^{-1} xi} (x) I
};

struct GraphLiftData {
  const TruncatedFock* f = nullptr;
  const InducedSpace* K = nullptr;
  const Weights* w = nullptr;
};

struct LiftModel {
  int dim_k = 0, dim_h = 0;
  std::vector<int> level;
  Mat L0;                       // h -> 1 (x) h
  std::vector<LiftTerm> terms;  // levels >= 1, xi over a Parseval frame
  std::vector<Mat> gens;        // algebra generators acting on K
  std::optional<GraphLiftData> graph;
};

LiftModel graph_lift_model(const TruncatedFock& f, const InducedSpace& K, const Weights& w);
LiftModel dual_lift_model(const DualFock& d, const DualWeights& dw);
// same algebra on two spaces; generators and terms are paired by position
LiftModel direct_sum(const LiftModel& a, const LiftModel& b);
LiftModel copies(const LiftModel& m, int s);

// sum of L L^* over the vacuum and all terms, should be the identity
double parseval_residual(const LiftModel& m);

// smallest subspace containing start and invariant under every op
Mat invariant_closure(const std::vector<Mat>& ops, const Mat& start, double tol = 1e-10);
double coinvariance_residual(const LiftModel& m, const Mat& V);
// G on J against compressions of the generators
double compression_commutation_residual(const LiftModel& m, const Mat& V, const Mat& G);

struct StepTrace {
  int m = 0;
  int n = 0;
  int dim_j = 0;
  double mu = 0.0;
  std::array<double, 7> conditions{};
  double f_norm = 0.0;
  double relationship = 0.0;  // top block of F^* against G_m off the vacuum
  double gm_star = 0.0;       // G_m^* expansion over the frame
  double parrott_excess = 0.0;
  bool identities_run = false;
  std::array<double, 8> identities{};
};

struct LiftState {
  std::vector<int> n;
  std::vector<Mat> V;  // frames of J_i
  std::vector<Mat> G;  // G_i : K -> J_i in frame coordinates
  std::vector<StepTrace> trace;
  int m() const { return static_cast<int>(V.size()); }
};

struct LiftOptions {
  double tol = 1e-8;             // condition residual ceiling
  double hypothesis_tol = 1e-9;  // co-invariance and commutation of the input
  bool identity_checks = false;     // needs graph data
  // when J is co-invariant only up to a truncation defect, conditions (4), (5), (7) are recorded, not enforced
  bool strict_invariance = true;
  std::uint64_t seed = 1;
};

LiftState initial_state(const LiftModel& m, const Mat& V, const Mat& G);
LiftState lift_step(const LiftModel& m, const LiftState& st, const LiftOptions& opt);

struct LiftResult {
  Mat G;  // lifted operator on K
  double norm_in = 0.0, norm_out = 0.0;
  double hyp_coinvariance = 0.0, hyp_commutation = 0.0;
  std::array<double, 4> conclusions{};  // co-invariance, compression, commutation, norm
  double max_condition = 0.0, max_identity = 0.0, max_gm_star = 0.0, max_parrott_excess = 0.0;
  std::vector<StepTrace> trace;
};

LiftResult commutant_lift(const LiftModel& m, const Mat& V, const Mat& G, const LiftOptions& opt);
// G : J1 -> J2, lifted to K1 -> K2
LiftResult two_space_lift(const LiftModel& m1, const Mat& V1, const LiftModel& m2, const Mat& V2, const Mat& G,
                          const LiftOptions& opt);

// the eight alpha/beta identities on random inputs
std::array<double, 8> step_identity_residuals(const LiftModel& m, const Mat& Vm, const Mat& Vm1, const Mat& Gm, Rng& rng);

}  // namespace hardy
