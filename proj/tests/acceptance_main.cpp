#include <cstdio>
#include <cstdlib>
#include <string>

#include "hardy/acceptance.hpp"

// one line per criterion; exit status is the number of failures
int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  hardy::json first = hardy::selftest_report(seed);
  int failed = 0;
  for (const auto& c : first.at("criteria")) {
    const bool ok = c.at("pass").get<bool>();
    failed += !ok;
    std::printf("criterion %d %-40s %s\n", c.at("id").get<int>(), c.at("title").get<std::string>().c_str(),
                ok ? "PASS" : "FAIL");
    if (!ok)
      for (const auto& item : c.at("checks"))
        if (!item.value("ok", true)) std::printf("    %s\n", item.dump().c_str());
  }
  const bool same = hardy::selftest_report(seed).dump() == first.dump();
  failed += !same;
  std::printf("criterion 9 %-40s %s\n", "selftest reports byte-identical", same ? "PASS" : "FAIL");
  return failed;
}
