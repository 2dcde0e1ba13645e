#include "common.hpp"

using namespace hardy;
using namespace fixtures;

TEST_CASE("path basis of a bouquet is all words in lexicographic order") {
  Graph g = loops(2);
  PathBasis b = path_basis(g, 3);
  REQUIRE(b.size() == 8);
  CHECK(b.paths.front() == std::vector<int>{0, 0, 0});
  CHECK(b.paths[1] == std::vector<int>{0, 0, 1});
  CHECK(b.paths.back() == std::vector<int>{1, 1, 1});
}

TEST_CASE("two-cycle has two paths of length two") {
  Graph g = two_cycle();
  PathBasis b = path_basis(g, 2);
  REQUIRE(b.size() == 2);
  CHECK(b.paths[0] == std::vector<int>{0, 1});
  CHECK(b.paths[1] == std::vector<int>{1, 0});
  // edge 0 runs 0 -> 1, so (e0, e1) starts at s(e1) = 1 and ends at r(e0) = 1
  CHECK(b.source[0] == 1);
  CHECK(b.range[0] == 1);
}

TEST_CASE("level zero is the vertex units") {
  PathBasis b = path_basis(three_vertex(), 0);
  REQUIRE(b.size() == 3);
  for (int v = 0; v < 3; ++v) {
    CHECK(b.source[v] == v);
    CHECK(b.range[v] == v);
  }
}

TEST_CASE("graphs with a sink or a source are rejected") {
  CHECK_THROWS_AS(Graph::make(2, {{0, 1}}), Error);
  CHECK_THROWS_AS(Graph::make(2, {{0, 0}, {0, 1}}), Error);
}

TEST_CASE("path counts agree with adjacency powers") {
  for (const Graph& g : {loops(1), loops(3), two_cycle(), three_vertex()}) {
    PathTower t(g, 5);
    for (int k = 0; k <= 5; ++k) CHECK(t.size(k) == walk_count(g, k));
  }
}

TEST_CASE("paths are composable and concat inverts split") {
  PathTower t(three_vertex(), 4);
  for (int k = 1; k <= 4; ++k)
    for (int p = 0; p < t.size(k); ++p) {
      const auto& e = t.path(k, p);
      for (size_t i = 0; i + 1 < e.size(); ++i) CHECK(t.graph().src[e[i]] == t.graph().rng[e[i + 1]]);
      for (int j = 0; j <= k; ++j) {
        auto [a, b] = t.split(k, p, j);
        CHECK(t.concat(j, a, k - j, b) == p);
      }
    }
}

TEST_CASE("inner product: adjoint symmetry, right linearity, positivity") {
  PathTower t(three_vertex(), 3);
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int k = rng.integer(0, 3);
    CorrElement x = random_element(t, k, rng), y = random_element(t, k, rng);
    Vec a = rng.cvec(t.n());
    Vec xy = inner_product(t, x, y), yx = inner_product(t, y, x);
    CHECK(maxabs(xy - yx.conjugate()) < 1e-12);
    Vec lhs = inner_product(t, x, right_mult(t, y, a));
    CHECK(maxabs(lhs - xy.cwiseProduct(a)) < 1e-12);
    // <a x, y> = <x, a^* y>
    Vec l2 = inner_product(t, left_mult(t, a, x), y);
    Vec r2 = inner_product(t, x, left_mult(t, a.conjugate(), y));
    CHECK(maxabs(l2 - r2) < 1e-12);
    Vec xx = inner_product(t, x, x);
    for (int v = 0; v < t.n(); ++v) {
      CHECK(xx(v).real() >= 0.0);
      CHECK(std::abs(xx(v).imag()) < 1e-12);
    }
  }
}

TEST_CASE("left action is a unital *-homomorphism") {
  PathTower t(three_vertex(), 3);
  Rng rng(5);
  for (int k = 0; k <= 3; ++k) {
    Vec a = rng.cvec(3), b = rng.cvec(3);
    CHECK(maxabs(left_action(t, a, k) * left_action(t, b, k) - left_action(t, a.cwiseProduct(b), k)) < 1e-12);
    CHECK(maxabs(left_action(t, a, k).adjoint() - left_action(t, a.conjugate(), k)) < 1e-12);
    CHECK(maxabs(left_action(t, Vec::Ones(3), k) - Mat::Identity(t.size(k), t.size(k))) < 1e-12);
  }
}

TEST_CASE("insertion is bounded by the inner product norm") {
  PathTower t(three_vertex(), 4);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    int k = rng.integer(1, 2), j = rng.integer(0, 2);
    CorrElement x = random_element(t, k, rng);
    double bound = std::sqrt(inner_product(t, x, x).cwiseAbs().maxCoeff());
    CHECK(opnorm(insertion_matrix(t, x, j)) <= bound * (1 + 1e-12));
  }
}

TEST_CASE("tensor of operators acts factorwise on simple tensors") {
  PathTower t(three_vertex(), 4);
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    int a = rng.integer(1, 2), b = rng.integer(0, 2);
    Mat A = random_module_map(t, a, rng);
    // B has to commute with the left action for the balanced tensor
    Mat B = random_module_map(t, b, rng);
    for (int p = 0; p < t.size(b); ++p)
      for (int q = 0; q < t.size(b); ++q)
        if (t.range(b, p) != t.range(b, q)) B(q, p) = 0.0;
    CorrElement x = random_element(t, a, rng), y = random_element(t, b, rng);
    CorrElement lhs = act(tensor(t, A, a, B, b), tensor(t, x, y));
    CorrElement rhs = tensor(t, act(A, x), act(B, y));
    CHECK(maxabs(lhs.c - rhs.c) < 1e-12);
  }
}

TEST_CASE("basis paths are a Parseval frame") {
  PathTower t(three_vertex(), 3);
  for (int k = 0; k <= 3; ++k) {
    Mat s = Mat::Zero(t.size(k), t.size(k));
    for (int p = 0; p < t.size(k); ++p) s += theta(t, basis_element(t, k, p), basis_element(t, k, p));
    CHECK(maxabs(s - Mat::Identity(t.size(k), t.size(k))) < 1e-14);
  }
}

TEST_CASE("gamma decomposition is unitary and diagonalizes module operators") {
  PathTower t(three_vertex(), 3);
  Representation rep = Representation::make(t.graph(), {1, 2, 2});
  InducedSpace K(t, rep);
  Rng rng(21);
  for (int k = 0; k <= 3; ++k) {
    GammaDecomposition gd = gamma_decomposition(K, k);
    CHECK(gd.unitarity_residual < 1e-10);
    Mat y = random_module_map(t, k, rng);
    CHECK(maxabs(quotient_operator(gd, rep, y) - K.induce(y, k, k)) < 1e-10);
    Mat id = Mat::Identity(t.size(k), t.size(k));
    CHECK(maxabs(quotient_operator(gd, rep, id) - Mat::Identity(K.level_dim(k), K.level_dim(k))) < 1e-10);
  }
}

TEST_CASE("induced space dimension counts source multiplicities") {
  PathTower t(two_cycle(), 3);
  Representation rep = Representation::make(t.graph(), {2, 1});
  InducedSpace K(t, rep);
  // level k has one path ending at each vertex; sources alternate
  CHECK(K.level_dim(0) == 3);
  CHECK(K.level_dim(1) == 3);
  CHECK(K.dim() == 12);
}
