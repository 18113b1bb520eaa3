// Acceptance runner: one PASS/FAIL line per criterion.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ballistic/selftest.hpp"

int main(int argc, char** argv) {
  int only = 0;
  std::uint64_t seed = ballistic::kDefaultAcceptanceSeed;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::fprintf(stderr, "usage: %s [--only N] [--seed S]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > ballistic::kCriterionCount) {
    std::fprintf(stderr, "criterion must be 1..%d\n", ballistic::kCriterionCount);
    return 2;
  }
  int failed = 0;
  for (const auto& r : ballistic::run_acceptance(only, seed)) {
    std::printf("[%s] criterion %2d: %s (%.2f s)\n        %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds, r.detail.c_str());
    failed += !r.pass;
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
