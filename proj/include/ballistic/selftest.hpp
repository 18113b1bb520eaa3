#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ballistic {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;
inline constexpr std::uint64_t kDefaultAcceptanceSeed = 20261015;

CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultAcceptanceSeed);
// only == 0 runs every criterion
std::vector<CriterionResult> run_acceptance(int only = 0, std::uint64_t seed = kDefaultAcceptanceSeed);

}  // namespace ballistic
