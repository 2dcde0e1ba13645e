#pragma once

#include <cmath>

#include "doctest.h"
#include "hardy/duality.hpp"

namespace fixtures {

using namespace hardy;

inline Graph loops(int d) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < d; ++i) e.emplace_back(0, 0);
  return Graph::make(1, e);
}

inline Graph two_cycle() { return Graph::make(2, {{0, 1}, {1, 0}}); }

inline Graph three_vertex() { return Graph::make(3, {{0, 1}, {1, 2}, {2, 0}, {1, 0}, {0, 0}}); }

// number of length-k paths from the adjacency matrix, independent of path enumeration
inline long long walk_count(const Graph& g, int k) {
  const int n = g.n;
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0)), p(n, std::vector<long long>(n, 0));
  for (int e = 0; e < g.num_edges(); ++e) a[g.rng[e]][g.src[e]] += 1;
  for (int i = 0; i < n; ++i) p[i][i] = 1;
  for (int s = 0; s < k; ++s) {
    std::vector<std::vector<long long>> q(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) q[i][j] += p[i][l] * a[l][j];
    p = q;
  }
  long long tot = 0;
  for (auto& r : p)
    for (long long v : r) tot += v;
  return tot;
}

inline double maxabs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline CorrElement random_element(const PathTower& t, int k, Rng& rng) { return {k, rng.cvec(t.size(k))}; }

inline Mat random_module_map(const PathTower& t, int k, Rng& rng) {
  Mat s = Mat::Zero(t.size(k), t.size(k));
  for (int p = 0; p < t.size(k); ++p)
    for (int q = 0; q < t.size(k); ++q)
      if (t.source(k, p) == t.source(k, q)) s(q, p) = rng.cnormal();
  return s;
}

}  // namespace fixtures
