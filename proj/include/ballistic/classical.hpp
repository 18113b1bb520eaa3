#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ballistic/perm.hpp"

namespace ballistic {

// One swap of positions i < j, taken with probability p.
struct SwapStep {
  int i = 1;
  int j = 2;
  double p = 0.0;
};

// instruction[t] == '1': step t is probabilistic; '0': always applied.
struct SwapProgram {
  int n = 0;
  std::vector<SwapStep> steps;
  std::optional<std::string> instruction;

  void validate() const;
  bool forced(std::size_t t) const { return instruction && (*instruction)[t] == '0'; }
};

// Dense weights indexed by permutation rank.
struct PermDistribution {
  int n = 0;
  std::vector<double> weights;
  double weight(const Permutation& s) const;
};

inline constexpr int kMaxDistributionLabels = 10;
inline constexpr int kMaxSubsetSteps = 24;
inline constexpr int kMaxReachableLabels = 8;

// Apply the steps in order to the point mass at the identity arrangement.
PermDistribution exact_distribution(const SwapProgram& prog);
// Final arrangement when exactly the chosen steps fire (forced steps always fire).
Permutation apply_subset(const SwapProgram& prog, std::uint64_t chosen);
double brute_force_probability(const SwapProgram& prog, const Permutation& target);
// v[p-1] = probability that `color` ends at position p.
std::vector<double> marginal_location(const SwapProgram& prog, int color);
Permutation sample(const SwapProgram& prog, std::uint64_t seed);

struct ClassicalYbParams {
  double p1, p2, p3;        // left side: R1(p1) R2(p2) R1(p3)
  double q1, q2, q3;        // right side: R2(q1) R1(q2) R2(q3)
};
ClassicalYbParams classical_yb_params(double x, double y);
// 6x6 stochastic matrix of one step on three labels, row-major by rank.
std::array<double, 36> classical_step_matrix(int k, double p);
// max |LHS - RHS| of the classical three-strand identity.
double classical_yb_residual(const ClassicalYbParams& q);

// word entries are adjacent transposition indices k meaning (k, k+1)
bool reachable_adjacent(int n, const std::vector<int>& word, const Permutation& target);
Permutation demazure_product(int n, const std::vector<int>& word);
bool bruhat_leq(const Permutation& u, const Permutation& w);

bool reachable_general(const SwapProgram& prog, const Permutation& target);
std::vector<char> reachable_set(const SwapProgram& prog);
// Counts subsets of the probabilistic steps producing each arrangement,
// with `offset` applied as a final position rearrangement.
std::vector<std::uint64_t> counting_vector(const SwapProgram& prog,
                                           const Permutation* offset = nullptr);
std::uint64_t count_achieving_subsets(const SwapProgram& prog, const Permutation& target);

struct NormalizedProgram {
  SwapProgram program;  // every step probabilistic
  Permutation offset;   // forced rearrangement applied after the program
};
NormalizedProgram normalize_instruction(const SwapProgram& prog);

SwapProgram adjacent_program(int n, const std::vector<int>& word, double p = 0.5);

}  // namespace ballistic
