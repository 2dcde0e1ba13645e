#include "common.hpp"
#include "hardy/lifting.hpp"

using namespace hardy;
using namespace fixtures;

namespace {

struct Setup {
  PathTower t;
  TruncatedFock f;
  InducedSpace K;
  AdmissibleSequence x;
  Weights w;
  DualCorrespondence es;
  DualFock d;
  DualWeights dw;
  Setup(const Graph& g, const std::vector<int>& mult, int N, Rng& rng)
      : t(g, N), f(t), K(t, Representation::make(g, mult)), x(random_graph_sequence(t, rng)),
        w(canonical_weights(t, x)), es(intertwiner_basis(K)), d(K, es), dw(dual_weights(d, w, x)) {}
};

// random element of the commutant of the graph generators
Mat commutant_element(const Setup& s, Rng& rng) {
  Mat c = Mat::Zero(s.d.dim(), s.d.dim());
  for (int u = 0; u < s.d.num_tuples(0); ++u) c += rng.cnormal() * s.d.to_coords(s.d.phi_total(s.d.unit_matrix(u)));
  for (int b = 0; b < s.d.num_tuples(1); ++b) {
    Vec e = Vec::Zero(s.d.num_tuples(1));
    e(b) = 1.0;
    c += 0.5 * rng.cnormal() * s.d.to_coords(dual_creation(s.d, s.dw, e, 1));
  }
  return rho(s.d, c);
}

Mat low_start(const LiftModel& m, int upto, int cols, Rng& rng) {
  Mat v = rng.cmat(m.dim_k, cols);
  for (int i = 0; i < m.dim_k; ++i)
    if (m.level[i] > upto) v.row(i).setZero();
  return v;
}

Mat vacuum_frame(const LiftModel& m) {
  int n0 = 0;
  for (int l : m.level) n0 += l == 0;
  Mat v = Mat::Zero(m.dim_k, n0);
  for (int i = 0, j = 0; i < m.dim_k; ++i)
    if (m.level[i] == 0) v(i, j++) = 1.0;
  return v;
}

std::vector<Mat> adjoints(const std::vector<Mat>& ops) {
  std::vector<Mat> out;
  for (const auto& o : ops) out.push_back(o.adjoint());
  return out;
}

}  // namespace

TEST_CASE("Parrott completion keeps the norm") {
  // [[1, x], [y, u]] with x = y = 0 needs u = 0 only if the norm is 1
  ParrottProblem p = make_parrott(Mat::Constant(1, 1, 0.6), Mat::Constant(1, 1, 0.8), Mat::Constant(1, 1, 0.8));
  CHECK(std::abs(p.mu - 1.0) < 1e-14);
  Mat u = parrott_complete(p);
  // hand solution: u = -y r x / (1 - r^2) = -0.6
  CHECK(std::abs(u(0, 0) - cplx(-0.6)) < 1e-10);
  CHECK(opnorm(parrott_assemble(p, u)) <= 1.0 + 1e-10);

  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int a = rng.integer(1, 4), b = rng.integer(1, 4), c = rng.integer(0, 3), e = rng.integer(0, 3);
    ParrottProblem q = make_parrott(rng.cmat(a, b), rng.cmat(c, b), rng.cmat(a, e));
    Mat v = parrott_complete(q);
    CHECK(v.rows() == c);
    CHECK(v.cols() == e);
    CHECK(opnorm(parrott_assemble(q, v)) <= q.mu * (1.0 + 1e-9));
  }
  // R contractive at the edge: singular value equal to mu
  Mat R = Mat::Identity(2, 2);
  ParrottProblem edge = make_parrott(R, Mat::Zero(1, 2), Mat::Zero(2, 1));
  CHECK(opnorm(parrott_assemble(edge, parrott_complete(edge))) <= 1.0 + 1e-9);
}

TEST_CASE("lift models satisfy the Parseval sum") {
  Rng rng(2);
  for (const auto& [g, mult] : std::vector<std::pair<Graph, std::vector<int>>>{
           {loops(2), {1}}, {two_cycle(), {1, 2}}, {three_vertex(), {1, 2, 1}}}) {
    Setup s(g, mult, 3, rng);
    CHECK(parseval_residual(graph_lift_model(s.f, s.K, s.w)) < 1e-10);
    CHECK(parseval_residual(dual_lift_model(s.d, s.dw)) < 1e-10);
  }
}

TEST_CASE("zero and identity lift trivially") {
  Rng rng(8);
  Setup s(two_cycle(), {2, 1}, 3, rng);
  LiftModel m = graph_lift_model(s.f, s.K, s.w);
  Mat V = vacuum_frame(m);
  LiftOptions opt;
  LiftResult z = commutant_lift(m, V, Mat::Zero(V.cols(), V.cols()), opt);
  CHECK(maxabs(z.G) == 0.0);
  LiftResult id = commutant_lift(m, V, Mat::Identity(V.cols(), V.cols()), opt);
  CHECK(maxabs(id.G - Mat::Identity(m.dim_k, m.dim_k)) < 1e-9);
  CHECK(id.max_condition < 1e-9);
}

TEST_CASE("graph lift of a compressed commutant element") {
  Rng rng(41);
  for (const auto& [g, mult] : std::vector<std::pair<Graph, std::vector<int>>>{
           {loops(1), {1}}, {loops(2), {1}}, {two_cycle(), {1, 2}}, {three_vertex(), {1, 1, 2}}}) {
    Setup s(g, mult, 3, rng);
    LiftModel m = graph_lift_model(s.f, s.K, s.w);
    Mat C = commutant_element(s, rng);
    std::vector<Mat> ops = adjoints(m.gens);
    ops.push_back(C.adjoint());
    Mat V = invariant_closure(ops, low_start(m, 1, 2, rng));
    if (V.cols() == m.dim_k) continue;
    CHECK(coinvariance_residual(m, V) < 1e-10);
    Mat G = V.adjoint() * C * V;
    LiftOptions opt;
    opt.identity_checks = true;
    LiftResult r = commutant_lift(m, V, G, opt);
    CHECK(r.hyp_commutation < 1e-9);
    for (double c : r.conclusions) CHECK(c < 1e-8);
    CHECK(r.max_condition < 1e-8);
    CHECK(r.max_identity < 1e-9);
    CHECK(r.max_gm_star < 1e-9);
    CHECK(r.max_parrott_excess < 1e-9);
    for (const auto& tr : r.trace) CHECK(tr.relationship < 1e-9);
    CHECK(r.norm_out <= opnorm(C) + 1e-9);
  }
}

TEST_CASE("dual lift of a compressed commutant element") {
  Rng rng(43);
  for (const auto& [g, mult] : std::vector<std::pair<Graph, std::vector<int>>>{
           {loops(2), {1}}, {two_cycle(), {2, 1}}, {three_vertex(), {1, 2, 1}}}) {
    Setup s(g, mult, 3, rng);
    LiftModel m = dual_lift_model(s.d, s.dw);
    // commutant of the dual side: the original generators moved to coordinates
    Mat C = pi_sigma(s.d, induce(s.K, s.f, weighted_creation(s.f, s.w, random_element(s.t, 1, rng)).m)) +
            pi_sigma(s.d, induce(s.K, s.f, phi_inf(s.f, rng.cvec(s.t.n()))));
    std::vector<Mat> ops = adjoints(m.gens);
    ops.push_back(C.adjoint());
    Mat V = invariant_closure(ops, low_start(m, 1, 2, rng));
    if (V.cols() == m.dim_k) continue;
    Mat G = V.adjoint() * C * V;
    LiftResult r = commutant_lift(m, V, G, LiftOptions{});
    for (double c : r.conclusions) CHECK(c < 1e-8);
    CHECK(r.max_condition < 1e-8);
    CHECK(r.max_gm_star < 1e-9);
  }
}

TEST_CASE("non co-invariant input is rejected") {
  Rng rng(3);
  Setup s(loops(1), {1}, 3, rng);
  LiftModel m = graph_lift_model(s.f, s.K, s.w);
  Mat V = Mat::Zero(m.dim_k, 1);
  V(1, 0) = 1.0;  // level one alone
  CHECK_THROWS_AS(commutant_lift(m, V, Mat::Identity(1, 1), LiftOptions{}), Error);
}

TEST_CASE("two-space lift agrees with the one-space lift on equal data") {
  Rng rng(17);
  Setup s(two_cycle(), {1, 1}, 3, rng);
  LiftModel m = graph_lift_model(s.f, s.K, s.w);
  Mat C = commutant_element(s, rng);
  std::vector<Mat> ops = adjoints(m.gens);
  ops.push_back(C.adjoint());
  Mat V = invariant_closure(ops, low_start(m, 0, 1, rng));
  REQUIRE(V.cols() < m.dim_k);
  Mat G = V.adjoint() * C * V;
  LiftResult one = commutant_lift(m, V, G, LiftOptions{});
  LiftResult two = two_space_lift(m, V, m, V, G, LiftOptions{});
  for (double c : two.conclusions) CHECK(c < 1e-8);
  CHECK(std::abs(two.norm_out - one.norm_out) < 1e-8);
}

TEST_CASE("copies match the repeated direct sum") {
  Rng rng(4);
  Setup s(loops(1), {1}, 2, rng);
  LiftModel m = graph_lift_model(s.f, s.K, s.w);
  LiftModel c = copies(m, 3);
  CHECK(c.dim_k == 3 * m.dim_k);
  CHECK(c.dim_h == 3);
  CHECK(parseval_residual(c) < 1e-12);
  CHECK(maxabs(c.gens[1] - kron(Mat::Identity(3, 3), m.gens[1])) < 1e-15);
}
