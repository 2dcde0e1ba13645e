#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardy/io.hpp"

namespace hardy {

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = false;
  json detail;  // annotated residuals
};

// random element commuting with the graph generators on K, built from the dual side
Mat graph_commutant_sample(const ModelBundle& s, Rng& rng);
// random element commuting with the dual generators, built from the graph side
Mat dual_commutant_sample(const ModelBundle& s, Rng& rng);
// random columns supported on levels <= upto
Mat low_level_start(const LiftModel& m, int upto, int cols, Rng& rng);

// criteria 1-8; every random draw is seeded from seed
std::vector<Criterion> run_criteria(std::uint64_t seed);
// {"schema": 1, "command": "selftest", "seed", "criteria", "pass"}
json selftest_report(std::uint64_t seed);

}  // namespace hardy
