#pragma once

#include <cstdint>
#include <string>

#include "hardy/io.hpp"

namespace hardy {

struct RunConfig {
  std::string command;
  std::string input_path;   // empty: no input (selftest)
  std::string output_path;  // empty: stdout
  int N = 0;                // 0: take N from the input
  double eps = 1e-6;
  std::uint64_t seed = 1;
};

struct RunResult {
  int status = 0;  // 0 ok, 1 input error, 2 mathematical rejection
  json report;
};

// dispatch on an already parsed input document
RunResult run(const RunConfig& cfg, const json& input);
// reads input, writes the report, returns the exit status
int run(const RunConfig& cfg);
int cli_main(int argc, char** argv);

}  // namespace hardy
