#include "common.hpp"

using namespace hardy;
using namespace fixtures;

TEST_CASE("intertwiner space dimension is sum over edges of m_s m_r") {
  PathTower t(three_vertex(), 2);
  Representation rep = Representation::make(t.graph(), {1, 2, 3});
  InducedSpace K(t, rep);
  DualCorrespondence es = intertwiner_basis(K);
  int expect = 0;
  for (int e = 0; e < t.graph().num_edges(); ++e) expect += rep.mult[t.graph().src[e]] * rep.mult[t.graph().rng[e]];
  CHECK(es.size() == expect);
  CHECK(es.nullity == expect);
  for (int b = 0; b < es.size(); ++b) {
    const Mat& T = es.basis[b];
    for (int v = 0; v < 3; ++v) {
      Vec a = vertex_unit(3, v);
      CHECK(maxabs(T * rep.sigma(a) - K.induce(left_action(t, a, 1), 1, 1) * T) < 1e-14);
    }
  }
}

TEST_CASE("scalar case: the dual is one-dimensional per level") {
  PathTower t(loops(1), 5);
  InducedSpace K(t, Representation::make(t.graph(), {1}));
  DualCorrespondence es = intertwiner_basis(K);
  DualFock d(K, es);
  for (int k = 0; k <= 5; ++k) CHECK(d.num_tuples(k) == 1);
  CHECK(d.unitarity_residual() < 1e-14);
}

TEST_CASE("abstract Gram matches the Lambda maps") {
  PathTower t(three_vertex(), 3);
  InducedSpace K(t, Representation::make(t.graph(), {2, 1, 2}));
  DualCorrespondence es = intertwiner_basis(K);
  DualFock d(K, es);
  for (int k = 0; k <= 3; ++k) {
    Mat g = d.abstract_gram(k);
    for (int a = 0; a < d.num_tuples(k); ++a)
      for (int b = 0; b < d.num_tuples(k); ++b) {
        cplx direct = (d.Lambda(k, a).adjoint() * d.Lambda(k, b))(d.column(k, a), d.column(k, b));
        CHECK(std::abs(g(a, b) - direct) < 1e-14);
      }
  }
  CHECK(d.unitarity_residual() < 1e-10);
  CHECK(d.gram_residual() < 1e-12);
}

TEST_CASE("dual weights and the commutation picture") {
  Rng rng(23);
  for (const auto& [g, mult] : std::vector<std::pair<Graph, std::vector<int>>>{
           {loops(2), {1}}, {loops(1), {2}}, {two_cycle(), {1, 2}}, {three_vertex(), {1, 2, 1}}}) {
    PathTower t(g, 3);
    TruncatedFock f(t);
    InducedSpace K(t, Representation::make(g, mult));
    AdmissibleSequence x = random_graph_sequence(t, rng);
    Weights w = canonical_weights(t, x);
    DualCorrespondence es = intertwiner_basis(K);
    DualFock d(K, es);
    CommutationReport r = commutation_check(f, d, w, x);
    CHECK(r.unitarity < 1e-10);
    CHECK(r.commutation < 1e-9);
    CHECK(r.phi_match < 1e-10);
    CHECK(r.omega_match < 1e-10);
    CHECK(r.creation_match < 1e-9);
    CHECK(r.dw.extraction_residual < 1e-9);
    CHECK(r.dw.product_residual < 1e-9);
    CHECK(r.dw.weight_residual < 1e-9);
    CHECK(r.dw.c_residual < 1e-9);
  }
}

TEST_CASE("scalar dual weights coincide with the original ones") {
  BridgeResult br = admissible_from_kernel_coeffs(dirichlet_coeffs(5), 5);
  PathTower t(loops(1), 5);
  InducedSpace K(t, Representation::make(t.graph(), {1}));
  AdmissibleSequence x = AdmissibleSequence::from_scalar(t, br.x);
  Weights w = canonical_weights(t, x);
  DualCorrespondence es = intertwiner_basis(K);
  DualFock d(K, es);
  DualWeights dw = dual_weights(d, w, x);
  for (int k = 0; k <= 5; ++k) {
    CHECK(std::abs(dw.Zp[k](0, 0) - w.Zp[k](0, 0)) < 1e-12);
    CHECK(std::abs(dw.X[k](0, 0) - x.X[k](0, 0)) < 1e-14);
  }
}

TEST_CASE("pi_sigma is multiplicative on the creation operators") {
  Rng rng(1);
  PathTower t(two_cycle(), 3);
  TruncatedFock f(t);
  InducedSpace K(t, Representation::make(t.graph(), {2, 1}));
  Weights w = canonical_weights(t, random_graph_sequence(t, rng));
  DualCorrespondence es = intertwiner_basis(K);
  DualFock d(K, es);
  Mat a = induce(K, f, weighted_creation(f, w, random_element(t, 1, rng)).m);
  Mat b = induce(K, f, weighted_creation(f, w, random_element(t, 1, rng)).m);
  CHECK(maxabs(pi_sigma(d, a * b) - pi_sigma(d, a) * pi_sigma(d, b)) < 1e-10);
  CHECK(maxabs(pi_sigma(d, a.adjoint()) - pi_sigma(d, a).adjoint()) < 1e-12);
}
