#include <complex>

#include "common.hpp"
#include "hardy/interpolation.hpp"

using namespace hardy;
using namespace fixtures;

namespace {

struct World {
  PathTower t;
  TruncatedFock f;
  InducedSpace K;
  AdmissibleSequence x;
  Weights w;
  DualCorrespondence es;
  DualFock d;
  DualWeights dw;
  DiscModel m;
  World(const Graph& g, const std::vector<int>& mult, int N, AdmissibleSequence seq)
      : t(g, N), f(t), K(t, Representation::make(g, mult)), x(std::move(seq)), w(canonical_weights(t, x)),
        es(intertwiner_basis(K)), d(K, es), dw(dual_weights(d, w, x)), m(K, x, w) {}
};

World szego(int N) {
  PathTower t(loops(1), N);
  return World(loops(1), {1}, N, AdmissibleSequence::from_scalar(t, {0.0, 1.0}));
}

World graph_world(const Graph& g, const std::vector<int>& mult, int N, Rng& rng) {
  PathTower t(g, N);
  return World(g, mult, N, random_graph_sequence(t, rng));
}

Mat scalar(cplx v) { return Mat::Constant(1, 1, v); }

double pseudo_hyperbolic(cplx a, cplx b) { return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b); }

// random polynomial of degree <= 2 in the weighted creations
Mat random_polynomial(const World& W, Rng& rng) {
  Mat y = phi_inf(W.f, rng.cvec(W.t.n()));
  for (int k = 1; k <= 2; ++k) y += weighted_creation(W.f, W.w, random_element(W.t, k, rng)).m;
  return y;
}

}  // namespace

TEST_CASE("powers compose and the Szego disc is the unit disc") {
  World W = szego(30);
  DiscPoint z = scalar_point(W.m, cplx(0.3, 0.4));
  CHECK(z.power_residual < 1e-14);
  CHECK(std::abs(z.phi_norm - 0.25) < 1e-14);
  CHECK_THROWS_AS(scalar_point(W.m, cplx(0.6, 0.8)), Error);
  CHECK_THROWS_AS(scalar_point(W.m, cplx(0.9999999, 0.0)), Error);

  Rng rng(3);
  World G = graph_world(three_vertex(), {1, 2, 1}, 4, rng);
  DiscPoint p = random_point(G.m, 0.5, rng);
  CHECK(std::abs(p.phi_norm - 0.5) < 1e-10);
  CHECK(p.power_residual < 1e-10);
  Mat bad = p.z;
  bad(0, 0) += 1.0;  // entry that breaks the intertwining when m_{r} != m_{s}
  bool off_support = true;
  for (auto [r, c] : G.m.point_support())
    if (r == 0 && c == 0) off_support = false;
  if (off_support) CHECK_THROWS_AS(make_point(G.m, bad), Error);
}

TEST_CASE("Phi and the Neumann sum for the Szego point 0.5") {
  World W = szego(40);
  DiscPoint z = scalar_point(W.m, 0.5);
  CHECK(std::abs(phi_map(W.m, z, scalar(1.0)).value(0, 0) - 0.25) < 1e-14);
  NeumannReport r = neumann_check(W.m, z, scalar(1.0));
  CHECK(std::abs(r.neumann(0, 0) - 4.0 / 3.0) < 1e-13);
  CHECK(r.ok());
  CHECK(r.residual < 1e-9);

  DiscPoint zero = scalar_point(W.m, 0.0);
  CHECK(maxabs(phi_map(W.m, zero, scalar(2.0)).value) == 0.0);
  CHECK(std::abs(neumann_check(W.m, zero, scalar(2.0)).neumann(0, 0) - 2.0) < 1e-15);
}

TEST_CASE("Szego kernel is 1 / (1 - w conj z)") {
  World W = szego(60);
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    cplx a = 0.8 * std::polar(rng.uniform(), 6.283185307179586 * rng.uniform());
    cplx b = 0.8 * std::polar(rng.uniform(), 6.283185307179586 * rng.uniform());
    DiscPoint w = scalar_point(W.m, a), z = scalar_point(W.m, b);
    SeriesValue k = szego_kernel(W.m, w, z, scalar(1.0));
    CHECK(std::abs(k.value(0, 0) - 1.0 / (1.0 - a * std::conj(b))) <= k.tail + 1e-13);
    CHECK(k.tail < 1e-9);
  }
}

TEST_CASE("Dirichlet kernel at 0.5 sums to -ln(3/4) / (1/4)") {
  const int N = 60;
  BridgeResult br = admissible_from_kernel_coeffs(dirichlet_coeffs(2 * N), 2 * N);
  REQUIRE(br.admissible);
  PathTower t(loops(1), N);
  World W(loops(1), {1}, N, AdmissibleSequence::from_scalar(t, br.x));
  DiscPoint z = scalar_point(W.m, 0.5);
  SeriesValue k = szego_kernel(W.m, z, z, scalar(1.0));
  const double exact = -std::log(0.75) / 0.25;
  CHECK(std::abs(k.value(0, 0) - exact) < 1e-8);
  CHECK(std::abs(k.value(0, 0) - exact) <= k.tail + 1e-14);
  NeumannReport r = neumann_check(W.m, z, scalar(1.0));
  CHECK(r.ok());
}

TEST_CASE("Neumann identity on graphs") {
  Rng rng(21);
  for (const auto& [g, mult] : std::vector<std::pair<Graph, std::vector<int>>>{
           {loops(2), {1}}, {two_cycle(), {1, 2}}, {three_vertex(), {2, 1, 1}}}) {
    World W = graph_world(g, mult, 6, rng);
    DiscPoint z = random_point(W.m, 0.4, rng);
    Mat A = Mat::Zero(W.m.dim_h(), W.m.dim_h());
    for (const auto& u : W.m.commutant_units()) A += rng.cnormal() * u;
    NeumannReport r = neumann_check(W.m, z, A);
    CHECK(r.ok());
    CHECK(r.budget < 0.2);
  }
}

TEST_CASE("kernel hermiticity and the Cauchy pairing") {
  Rng rng(5);
  World W = graph_world(two_cycle(), {2, 1}, 4, rng);
  DiscPoint w = random_point(W.m, 0.5, rng), z = random_point(W.m, 0.3, rng);
  Mat A = Mat::Zero(W.m.dim_h(), W.m.dim_h());
  for (const auto& u : W.m.commutant_units()) A += rng.cnormal() * u;
  Mat kwz = szego_kernel(W.m, w, z, A).value;
  CHECK(maxabs(kwz.adjoint() - szego_kernel(W.m, z, w, A.adjoint()).value) < 1e-10);
  CHECK(maxabs(kwz - kernel_from_tuples(W.d, W.m, w, z, A)) < 1e-9);
  CHECK(maxabs(kwz - kernel_from_cauchy(W.m, cauchy_column(W.m, w), cauchy_column(W.m, z), A)) < 1e-9);
}

TEST_CASE("adjoint dual creations act on Cauchy vectors by scalars") {
  Rng rng(9);
  for (const auto& [g, mult] : std::vector<std::pair<Graph, std::vector<int>>>{
           {loops(1), {1}}, {loops(2), {1}}, {two_cycle(), {1, 2}}, {three_vertex(), {1, 2, 1}}}) {
    World W = graph_world(g, mult, 4, rng);
    DiscPoint z = random_point(W.m, 0.5, rng);
    Vec xi = rng.cvec(W.d.num_tuples(1));
    Mat D = Mat::Zero(W.m.dim_h(), W.m.dim_h());
    for (const auto& u : W.m.commutant_units()) D += rng.cnormal() * u;
    CHECK(iota_w_star_check(W.d, W.dw, W.m, z, xi, D) < 1e-9);
  }
  // Szego: backward shift fixes the kernel up to conj(z)
  World S = szego(8);
  DiscPoint z = scalar_point(S.m, cplx(0.2, -0.5));
  CHECK(iota_w_star_check(S.d, S.dw, S.m, z, Vec::Ones(1), scalar(1.0)) < 1e-12);
}

TEST_CASE("representation evaluation") {
  Rng rng(31);
  World W = graph_world(three_vertex(), {1, 2, 1}, 4, rng);
  DiscPoint z = random_point(W.m, 0.6, rng);
  Vec a = rng.cvec(3);
  Letter pa{true, a, {}};
  CHECK(maxabs(eval_letter(W.m, z, pa) - W.K.rep().sigma(a)) < 1e-15);

  CorrElement x1 = random_element(W.t, 1, rng), x2 = random_element(W.t, 2, rng);
  Letter l1{false, {}, x1}, l2{false, {}, x2}, l12{false, {}, tensor(W.t, x1, x2)};
  CHECK(maxabs(eval_word(W.m, z, {l1, l2}) - eval_letter(W.m, z, l12)) < 1e-10);
  Letter al{false, {}, left_mult(W.t, a, x1)};
  CHECK(maxabs(eval_word(W.m, z, {pa, l1}) - eval_letter(W.m, z, al)) < 1e-12);

  // vacuum column of the induced operator against the direct route
  Word word{pa, l1, l2};
  Mat yK = induce(W.K, W.f, word_operator(W.f, W.w, word));
  CHECK(maxabs(vacuum_column_eval(W.m, z, yK) - eval_word(W.m, z, word)) < 1e-9);

  World S = szego(6);
  DiscPoint s = scalar_point(S.m, 0.7);
  Letter sh{false, {}, basis_element(S.t, 3, 0)};
  CHECK(std::abs(eval_letter(S.m, s, sh)(0, 0) - 0.343) < 1e-14);
}

TEST_CASE("Choi verdict for F = 0 and the two-point disc criterion") {
  World W = szego(60);
  PickProblem p;
  p.points = {scalar_point(W.m, 0.3), scalar_point(W.m, cplx(-0.2, 0.5))};
  p.B = {scalar(1.0), scalar(1.0)};
  p.F = {scalar(0.0), scalar(0.0)};
  CHECK(pick_map_cp_test(W.m, p).cp);

  const cplx z1 = 0.3, z2 = cplx(-0.2, 0.5);
  const double dz = pseudo_hyperbolic(z1, z2);
  const cplx l1 = 0.2;
  Rng rng(2);
  for (double ratio : {0.2, 0.7, 0.99, 1.01, 1.3, 2.0}) {
    // lambda_2 on the ray through l1 with pseudo-hyperbolic distance ratio * dz
    double target = std::min(ratio * dz, 0.999);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (pseudo_hyperbolic(l1, l1 + mid * (0.99 - l1)) < target ? lo : hi) = mid;
    }
    cplx l2 = l1 + lo * (0.99 - l1);
    p.F = {scalar(l1), scalar(l2)};
    PickReport r = pick_map_cp_test(W.m, p);
    CHECK(r.cp == (pseudo_hyperbolic(l1, l2) <= dz));
    QuadraticCheck q = quadratic_form_check(W.m, p, r, rng, 50);
    CHECK(q.consistent);
    CHECK(std::abs(q.from_eigvec - q.eig) < 1e-9);
  }
}

TEST_CASE("Choi matrix does not depend on the weights") {
  Rng rng(13);
  World W = graph_world(two_cycle(), {1, 2}, 4, rng);
  Weights tw = weights_from_Z(W.t, W.x, twisted_Z(W.t, W.w, rng));
  DiscModel m2(W.K, W.x, tw);
  PickProblem p;
  for (int i = 0; i < 2; ++i) {
    p.points.push_back(random_point(W.m, 0.5, rng));
    p.B.push_back(rng.cmat(3, 3));
    p.F.push_back(rng.cmat(3, 3));
  }
  PickProblem p2 = p;
  for (auto& z : p2.points) z = make_point(m2, z.z);
  PickReport a = pick_map_cp_test(W.m, p), b = pick_map_cp_test(m2, p2);
  for (size_t v = 0; v < a.choi.size(); ++v) CHECK(maxabs(a.choi[v] - b.choi[v]) < 1e-9);
}

TEST_CASE("one-point problem returns the constant") {
  World W = szego(30);
  const cplx lam(0.3, -0.6);
  PickProblem p;
  p.points = {scalar_point(W.m, cplx(0.1, 0.4))};
  p.B = {scalar(1.0)};
  p.F = {scalar(lam)};
  REQUIRE(pick_map_cp_test(W.m, p).cp);
  NpSolution sol = np_solve(W.m, W.d, W.dw, p);
  CHECK(std::abs(sol.values[0](0, 0) - lam) < 1e-8);
  CHECK(sol.norm <= 1.0 + 1e-8);
  for (double c : sol.lift.conclusions) CHECK(c < 1e-8);
}

TEST_CASE("two-point boundary case is solved by a disc automorphism") {
  World W = szego(60);
  const cplx z1 = 0.2, z2 = cplx(0.1, -0.5);
  // b(z) = (z - a) / (1 - conj(a) z) maps the nodes to values at the boundary of solvability
  const cplx a(0.3, 0.2);
  auto b = [&](cplx z) { return (z - a) / (1.0 - std::conj(a) * z); };
  PickProblem p;
  p.points = {scalar_point(W.m, z1), scalar_point(W.m, z2)};
  p.B = {scalar(1.0), scalar(1.0)};
  p.F = {scalar(b(z1)), scalar(b(z2))};
  PickReport r = pick_map_cp_test(W.m, p);
  CHECK(r.cp);
  CHECK(std::abs(r.min_eig) < 1e-9);
  NpSolution sol = np_solve(W.m, W.d, W.dw, p);
  CHECK(sol.max_residual < 1e-6);
  // truncation defect doubles per step; at the boundary it reaches the norm
  CHECK(sol.norm <= 1.0 + 1e-6);
  // the solution is unique, so G matches the Toeplitz operator of b in its coefficients
  Vec col = sol.G.col(0);
  CHECK(std::abs(col(0) - b(0.0)) < 1e-6);
}

TEST_CASE("two-point interior case keeps the norm") {
  World W = szego(60);
  const cplx z1 = 0.2, z2 = cplx(0.1, -0.5), a(0.3, 0.2);
  auto b = [&](cplx z) { return 0.9 * (z - a) / (1.0 - std::conj(a) * z); };
  PickProblem p;
  p.points = {scalar_point(W.m, z1), scalar_point(W.m, z2)};
  p.B = {scalar(1.0), scalar(1.0)};
  p.F = {scalar(b(z1)), scalar(b(z2))};
  NpSolution sol = np_solve(W.m, W.d, W.dw, p);
  CHECK(sol.max_residual < 1e-8);
  CHECK(sol.norm <= 1.0 + 1e-8);
  for (double c : sol.lift.conclusions) CHECK(c < 1e-8);
}

TEST_CASE("forward-generated instances are interpolable and solved") {
  Rng rng(47);
  for (const auto& [g, mult, s, t] : std::vector<std::tuple<Graph, std::vector<int>, int, int>>{
           {loops(1), {1}, 1, 1}, {loops(2), {1}, 1, 1}, {two_cycle(), {1, 2}, 2, 1}, {two_cycle(), {1, 1}, 1, 2}}) {
    World W = graph_world(g, mult, 5, rng);
    const int dh = W.m.dim_h();
    // Y is s x t over the truncated algebra
    std::vector<std::vector<Mat>> y(s, std::vector<Mat>(t));
    Mat big = Mat::Zero(s * W.f.dim(), t * W.f.dim());
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < t; ++b) {
        y[a][b] = random_polynomial(W, rng);
        big.block(a * W.f.dim(), b * W.f.dim(), W.f.dim(), W.f.dim()) = y[a][b];
      }
    const double c = 0.5 / opnorm(big);
    PickProblem p;
    p.s = s;
    p.t = t;
    for (int i = 0; i < 2; ++i) {
      DiscPoint z = random_point(W.m, 0.15, rng);
      Mat yhat(s * dh, t * dh);
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < t; ++b)
          yhat.block(a * dh, b * dh, dh, dh) = vacuum_column_eval(W.m, z, induce(W.K, W.f, c * y[a][b]));
      Mat B = rng.cmat(s * dh, s * dh);
      p.points.push_back(z);
      p.B.push_back(B);
      p.F.push_back(B * yhat);
    }
    PickReport r = pick_map_cp_test(W.m, p);
    CHECK(r.cp);
    NpSolution sol = np_solve(W.m, W.d, W.dw, p);
    CHECK(sol.max_residual < 1e-7);
    CHECK(sol.norm <= 1.0 + 1e-8);
    CHECK(sol.lift.conclusions[0] < 1e-8);
    CHECK(sol.lift.conclusions[1] < 1e-8);
  }
}
