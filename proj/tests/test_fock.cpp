#include "common.hpp"

using namespace hardy;
using namespace fixtures;

TEST_CASE("Szego creation operator is the unilateral shift") {
  PathTower t(loops(1), 5);
  TruncatedFock f(t);
  Weights w = canonical_weights(t, AdmissibleSequence::from_scalar(t, {0.0, 1.0}));
  Mat s = weighted_creation(f, w, basis_element(t, 1, 0)).m;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(std::abs(s(i, j) - (i == j + 1 ? 1.0 : 0.0)) < 1e-14);
}

TEST_CASE("Dirichlet creation operator has weights sqrt((k+2)/(k+1))") {
  BridgeResult br = admissible_from_kernel_coeffs(dirichlet_coeffs(6), 6);
  PathTower t(loops(1), 6);
  TruncatedFock f(t);
  Weights w = canonical_weights(t, AdmissibleSequence::from_scalar(t, br.x));
  Mat s = weighted_creation(f, w, basis_element(t, 1, 0)).m;
  for (int k = 0; k < 6; ++k) CHECK(std::abs(s(k + 1, k).real() - std::sqrt((k + 2.0) / (k + 1.0))) < 1e-12);
  CHECK(operator_degree(f, s) == 1);
}

TEST_CASE("weighted creation is multiplicative") {
  Rng rng(31);
  for (const Graph& g : {loops(2), three_vertex()}) {
    PathTower t(g, 4);
    TruncatedFock f(t);
    Weights w = canonical_weights(t, random_graph_sequence(t, rng));
    for (int trial = 0; trial < 6; ++trial) {
      int a = rng.integer(1, 2), b = rng.integer(1, 2);
      CorrElement x = random_element(t, a, rng), y = random_element(t, b, rng);
      Mat lhs = weighted_creation(f, w, x).m * weighted_creation(f, w, y).m;
      Mat rhs = weighted_creation(f, w, tensor(t, x, y)).m;
      CHECK(maxabs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("W_{a xi b} = phi(a) W_xi phi(b)") {
  Rng rng(7);
  PathTower t(three_vertex(), 4);
  TruncatedFock f(t);
  Weights w = canonical_weights(t, random_graph_sequence(t, rng));
  for (int trial = 0; trial < 6; ++trial) {
    int k = rng.integer(1, 3);
    CorrElement x = random_element(t, k, rng);
    Vec a = rng.cvec(3), b = rng.cvec(3);
    Mat lhs = weighted_creation(f, w, right_mult(t, left_mult(t, a, x), b)).m;
    Mat rhs = phi_inf(f, a) * weighted_creation(f, w, x).m * phi_inf(f, b);
    CHECK(maxabs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("normalized creation sends the vacuum to xi") {
  Rng rng(12);
  PathTower t(two_cycle(), 4);
  TruncatedFock f(t);
  Weights w = canonical_weights(t, random_graph_sequence(t, rng));
  for (int k = 1; k <= 4; ++k) {
    CorrElement x = random_element(t, k, rng);
    Vec vac = f.hat({0, Vec::Ones(2)});
    CHECK(maxabs(normalized_creation(f, w, x).m * vac - f.hat(x)) < 1e-10);
  }
}

TEST_CASE("Parseval sums") {
  Rng rng(3);
  PathTower t(three_vertex(), 3);
  TruncatedFock f(t);
  InducedSpace K(t, Representation::make(t.graph(), {2, 1, 2}));
  for (int k = 0; k <= 3; ++k) CHECK(handysums_check(f, K, k, rng).residual < 1e-12);
}

TEST_CASE("weighted creations sum to the complement of the vacuum") {
  Rng rng(14);
  for (const Graph& g : {loops(1), loops(2), two_cycle(), three_vertex()}) {
    PathTower t(g, 4);
    TruncatedFock f(t);
    AdmissibleSequence x = random_graph_sequence(t, rng);
    Weights w = canonical_weights(t, x);
    CHECK(sums_to_projection_check(f, w, x).residual < 1e-10);
    Weights tw = weights_from_Z(t, x, twisted_Z(t, w, rng));
    CHECK(sums_to_projection_check(f, tw, x).residual < 1e-10);
  }
}

TEST_CASE("induced operators respect products and adjoints") {
  Rng rng(19);
  PathTower t(three_vertex(), 3);
  TruncatedFock f(t);
  InducedSpace K(t, Representation::make(t.graph(), {1, 2, 1}));
  Weights w = canonical_weights(t, random_graph_sequence(t, rng));
  Mat a = weighted_creation(f, w, random_element(t, 1, rng)).m;
  Mat b = weighted_creation(f, w, random_element(t, 2, rng)).m;
  CHECK(maxabs(induce(K, f, a * b) - induce(K, f, a) * induce(K, f, b)) < 1e-10);
  CHECK(maxabs(induce(K, f, a.adjoint()) - induce(K, f, a).adjoint()) < 1e-12);
}
