#include "ballistic/classical.hpp"

#include <cmath>

#include "ballistic/errors.hpp"
#include "ballistic/rng.hpp"
#include "tables.hpp"

namespace ballistic {

void SwapProgram::validate() const {
  require(n >= 1, "program needs at least one label");
  for (const auto& s : steps) {
    require(s.i >= 1 && s.i < s.j && s.j <= n, "step positions must satisfy 1 <= i < j <= n");
    require(s.p >= 0.0 && s.p <= 1.0 && !std::isnan(s.p), "step probability outside [0,1]");
  }
  if (instruction) {
    require(instruction->size() == steps.size(), "instruction length differs from step count");
    for (char c : *instruction) require(c == '0' || c == '1', "instruction must be a 0/1 string");
  }
}

double PermDistribution::weight(const Permutation& s) const {
  require(s.size() == n, "distribution: size mismatch");
  return weights[rank(s)];
}

namespace {

double step_probability(const SwapProgram& prog, std::size_t t) {
  return prog.forced(t) ? 1.0 : prog.steps[t].p;
}

std::vector<std::size_t> free_steps(const SwapProgram& prog) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < prog.steps.size(); ++t)
    if (!prog.forced(t)) out.push_back(t);
  return out;
}

}  // namespace

PermDistribution exact_distribution(const SwapProgram& prog) {
  prog.validate();
  if (prog.n > kMaxDistributionLabels)
    fail(ErrorKind::Limit, "exact_distribution supports at most 10 labels");
  PermDistribution dist;
  dist.n = prog.n;
  dist.weights.assign(factorial(prog.n), 0.0);
  dist.weights[0] = 1.0;
  std::vector<double> next(dist.weights.size());
  for (std::size_t t = 0; t < prog.steps.size(); ++t) {
    const double p = step_probability(prog, t);
    if (p == 0.0) continue;
    const auto partner = detail::position_pair_table(prog.n, prog.steps[t].i, prog.steps[t].j);
    for (std::size_t r = 0; r < next.size(); ++r)
      next[r] = (1.0 - p) * dist.weights[r] + p * dist.weights[partner[r]];
    dist.weights.swap(next);
  }
  return dist;
}

Permutation apply_subset(const SwapProgram& prog, std::uint64_t chosen) {
  std::vector<int> arr(prog.n);
  for (int p = 0; p < prog.n; ++p) arr[p] = p + 1;
  std::size_t bit = 0;
  for (std::size_t t = 0; t < prog.steps.size(); ++t) {
    bool fire = true;
    if (!prog.forced(t)) fire = (chosen >> bit++) & 1u;
    if (fire) std::swap(arr[prog.steps[t].i - 1], arr[prog.steps[t].j - 1]);
  }
  return Permutation(std::move(arr));
}

double brute_force_probability(const SwapProgram& prog, const Permutation& target) {
  prog.validate();
  require(target.size() == prog.n, "target size differs from program");
  const auto free = free_steps(prog);
  if (free.size() > static_cast<std::size_t>(kMaxSubsetSteps))
    fail(ErrorKind::Limit, "subset enumeration supports at most 24 probabilistic steps");
  double total = 0.0;
  const std::uint64_t subsets = std::uint64_t{1} << free.size();
  for (std::uint64_t s = 0; s < subsets; ++s) {
    if (apply_subset(prog, s) != target) continue;
    double w = 1.0;
    for (std::size_t b = 0; b < free.size(); ++b) {
      const double p = prog.steps[free[b]].p;
      w *= ((s >> b) & 1u) ? p : 1.0 - p;
    }
    total += w;
  }
  return total;
}

std::vector<double> marginal_location(const SwapProgram& prog, int color) {
  prog.validate();
  require(color >= 1 && color <= prog.n, "color label out of range");
  std::vector<double> v(prog.n, 0.0);
  v[color - 1] = 1.0;
  for (std::size_t t = 0; t < prog.steps.size(); ++t) {
    const double p = step_probability(prog, t);
    double& vi = v[prog.steps[t].i - 1];
    double& vj = v[prog.steps[t].j - 1];
    const double oi = vi, oj = vj;
    vi = p * oj + (1.0 - p) * oi;
    vj = p * oi + (1.0 - p) * oj;
  }
  return v;
}

Permutation sample(const SwapProgram& prog, std::uint64_t seed) {
  prog.validate();
  Rng rng(seed);
  std::vector<int> arr(prog.n);
  for (int p = 0; p < prog.n; ++p) arr[p] = p + 1;
  for (std::size_t t = 0; t < prog.steps.size(); ++t) {
    const double u = rng.uniform();
    if (prog.forced(t) || u < prog.steps[t].p)
      std::swap(arr[prog.steps[t].i - 1], arr[prog.steps[t].j - 1]);
  }
  return Permutation(std::move(arr));
}

ClassicalYbParams classical_yb_params(double x, double y) {
  require(x >= 0.0 && y >= 0.0, "classical Yang-Baxter parameters must be nonnegative");
  ClassicalYbParams q;
  q.p1 = x / (1.0 + x);
  q.p2 = (x + y) / (1.0 + x + y);
  q.p3 = y / (1.0 + y);
  q.q1 = y / (1.0 + y);
  q.q2 = (x + y) / (1.0 + x + y);
  q.q3 = x / (1.0 + x);
  return q;
}

std::array<double, 36> classical_step_matrix(int k, double p) {
  require(k == 1 || k == 2, "three-label step index must be 1 or 2");
  std::array<double, 36> m{};
  for (std::uint64_t r = 0; r < 6; ++r) {
    const auto s = unrank(3, r);
    const auto t = rank(position_swap(s, k));
    m[r * 6 + r] += 1.0 - p;
    m[t * 6 + r] += p;
  }
  return m;
}

namespace {

std::array<double, 36> mul6(const std::array<double, 36>& a, const std::array<double, 36>& b) {
  std::array<double, 36> c{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k)
      for (int j = 0; j < 6; ++j) c[i * 6 + j] += a[i * 6 + k] * b[k * 6 + j];
  return c;
}

}  // namespace

double classical_yb_residual(const ClassicalYbParams& q) {
  const auto lhs = mul6(mul6(classical_step_matrix(1, q.p1), classical_step_matrix(2, q.p2)),
                        classical_step_matrix(1, q.p3));
  const auto rhs = mul6(mul6(classical_step_matrix(2, q.q1), classical_step_matrix(1, q.q2)),
                        classical_step_matrix(2, q.q3));
  double worst = 0.0;
  for (int e = 0; e < 36; ++e) worst = std::max(worst, std::abs(lhs[e] - rhs[e]));
  return worst;
}

Permutation demazure_product(int n, const std::vector<int>& word) {
  std::vector<int> w(n);
  for (int p = 0; p < n; ++p) w[p] = p + 1;
  for (int k : word) {
    require(k >= 1 && k <= n - 1, "word letter is not an adjacent transposition");
    // absorb the letter only when it lengthens the element
    if (w[k - 1] < w[k]) std::swap(w[k - 1], w[k]);
  }
  return Permutation(std::move(w));
}

bool bruhat_leq(const Permutation& u, const Permutation& w) {
  require(u.size() == w.size(), "bruhat_leq: size mismatch");
  const int n = u.size();
  for (int k = 1; k <= n; ++k) {
    int cu = 0, cw = 0;
    for (int i = 1; i <= n; ++i) {
      if (u(i) >= k) ++cu;
      if (w(i) >= k) ++cw;
      if (cu > cw) return false;
    }
  }
  return true;
}

bool reachable_adjacent(int n, const std::vector<int>& word, const Permutation& target) {
  require(target.size() == n, "target size mismatch");
  return bruhat_leq(target, demazure_product(n, word));
}

std::vector<char> reachable_set(const SwapProgram& prog) {
  prog.validate();
  if (prog.n > kMaxReachableLabels)
    fail(ErrorKind::Limit, "reachable-set search supports at most 8 labels");
  std::vector<char> reach(factorial(prog.n), 0);
  reach[0] = 1;
  std::vector<char> next(reach.size());
  for (std::size_t t = 0; t < prog.steps.size(); ++t) {
    const auto partner = detail::position_pair_table(prog.n, prog.steps[t].i, prog.steps[t].j);
    for (std::size_t r = 0; r < reach.size(); ++r)
      next[r] = prog.forced(t) ? reach[partner[r]] : (reach[r] | reach[partner[r]]);
    reach.swap(next);
  }
  return reach;
}

bool reachable_general(const SwapProgram& prog, const Permutation& target) {
  require(target.size() == prog.n, "target size mismatch");
  return reachable_set(prog)[rank(target)] != 0;
}

std::vector<std::uint64_t> counting_vector(const SwapProgram& prog, const Permutation* offset) {
  prog.validate();
  if (offset) require(offset->size() == prog.n, "offset size mismatch");
  std::vector<std::uint64_t> counts;
  if (prog.n <= kMaxReachableLabels) {
    counts.assign(factorial(prog.n), 0);
    counts[0] = 1;
    std::vector<std::uint64_t> next(counts.size());
    for (std::size_t t = 0; t < prog.steps.size(); ++t) {
      const auto partner = detail::position_pair_table(prog.n, prog.steps[t].i, prog.steps[t].j);
      for (std::size_t r = 0; r < counts.size(); ++r)
        next[r] = prog.forced(t) ? counts[partner[r]] : counts[r] + counts[partner[r]];
      counts.swap(next);
    }
  } else {
    if (prog.n > 20) fail(ErrorKind::Limit, "counting vector supports at most 20 labels");
    const auto free = free_steps(prog);
    if (free.size() > static_cast<std::size_t>(kMaxSubsetSteps))
      fail(ErrorKind::Limit, "subset counting supports at most 24 probabilistic steps");
    if (prog.n > 12) fail(ErrorKind::Limit, "dense counting vector supports at most 12 labels");
    counts.assign(factorial(prog.n), 0);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << free.size()); ++s)
      ++counts[rank(apply_subset(prog, s))];
  }
  if (!offset) return counts;
  std::vector<std::uint64_t> moved(counts.size(), 0);
  for (std::uint64_t r = 0; r < counts.size(); ++r)
    if (counts[r]) moved[rank(compose(unrank(prog.n, r), *offset))] += counts[r];
  return moved;
}

std::uint64_t count_achieving_subsets(const SwapProgram& prog, const Permutation& target) {
  prog.validate();
  require(target.size() == prog.n, "target size mismatch");
  if (prog.n <= kMaxReachableLabels) return counting_vector(prog)[rank(target)];
  const auto free = free_steps(prog);
  if (free.size() > static_cast<std::size_t>(kMaxSubsetSteps))
    fail(ErrorKind::Limit, "subset counting supports at most 24 probabilistic steps");
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << free.size()); ++s)
    if (apply_subset(prog, s) == target) ++count;
  return count;
}

NormalizedProgram normalize_instruction(const SwapProgram& prog) {
  prog.validate();
  require(prog.instruction.has_value(), "normalize_instruction needs an instruction string");
  NormalizedProgram out;
  out.program.n = prog.n;
  out.program.instruction = std::string();
  // product of the forced swaps seen so far
  Permutation fixed = Permutation::identity(prog.n);
  for (std::size_t t = 0; t < prog.steps.size(); ++t) {
    const auto& s = prog.steps[t];
    if (prog.forced(t)) {
      fixed = compose(fixed, swap_positions(Permutation::identity(prog.n), s.i, s.j));
      continue;
    }
    // a free swap before the remaining forced block is conjugated through it
    int a = fixed(s.i), b = fixed(s.j);
    if (a > b) std::swap(a, b);
    out.program.steps.push_back({a, b, s.p});
    out.program.instruction->push_back('1');
  }
  out.offset = fixed;
  return out;
}

SwapProgram adjacent_program(int n, const std::vector<int>& word, double p) {
  SwapProgram prog;
  prog.n = n;
  for (int k : word) prog.steps.push_back({k, k + 1, p});
  return prog;
}

}  // namespace ballistic
