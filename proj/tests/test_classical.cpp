#include <doctest.h>

#include <cmath>

#include "ballistic/classical.hpp"
#include "ballistic/errors.hpp"
#include "ballistic/rng.hpp"

using namespace ballistic;

namespace {
Permutation P(std::vector<int> v) { return Permutation(std::move(v)); }

SwapProgram two_step() { return {3, {{1, 2, 0.5}, {2, 3, 0.5}}, std::nullopt}; }

SwapProgram random_program(Rng& rng, int n, int m) {
  SwapProgram p;
  p.n = n;
  for (int t = 0; t < m; ++t) {
    const int i = rng.integer(1, n - 1);
    p.steps.push_back({i, rng.integer(i + 1, n), rng.integer(0, 4) == 0 ? 1.0 : rng.uniform()});
  }
  return p;
}
}  // namespace

TEST_CASE("program validation") {
  CHECK_THROWS_AS((SwapProgram{3, {{2, 1, 0.5}}, std::nullopt}.validate()), Error);
  CHECK_THROWS_AS((SwapProgram{3, {{1, 2, 1.5}}, std::nullopt}.validate()), Error);
  CHECK_THROWS_AS((SwapProgram{3, {{1, 2, 0.5}}, std::string("01")}.validate()), Error);
  CHECK_THROWS_AS((SwapProgram{3, {{1, 2, 0.5}}, std::string("x")}.validate()), Error);
  CHECK_THROWS_AS(exact_distribution(SwapProgram{11, {}, std::nullopt}), Error);
}

TEST_CASE("exact distribution examples") {
  const auto point = exact_distribution({3, {}, std::nullopt});
  CHECK(point.weight(Permutation::identity(3)) == 1.0);
  const auto d = exact_distribution(two_step());
  for (auto img : {std::vector<int>{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {2, 3, 1}})
    CHECK(d.weight(P(img)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d.weight(P({3, 1, 2})) == 0.0);
  // all p = 1: deterministic product, step order left to right
  const auto det = exact_distribution({3, {{1, 2, 1.0}, {2, 3, 1.0}}, std::nullopt});
  CHECK(det.weight(P({2, 3, 1})) == 1.0);
}

TEST_CASE("brute force subset probability") {
  CHECK(brute_force_probability({3, {}, std::nullopt}, Permutation::identity(3)) == 1.0);
  CHECK(brute_force_probability(two_step(), P({2, 3, 1})) == doctest::Approx(0.25));
  const SwapProgram zeros{4, {{1, 2, 0.0}, {2, 4, 0.0}}, std::nullopt};
  for (const auto& s : all_permutations(4))
    CHECK(brute_force_probability(zeros, s) == (s == Permutation::identity(4) ? 1.0 : 0.0));
  Rng rng(11);
  for (int c = 0; c < 60; ++c) {
    const auto prog = random_program(rng, rng.integer(2, 5), rng.integer(0, 12));
    const auto d = exact_distribution(prog);
    double total = 0.0;
    for (double w : d.weights) {
      CHECK(w >= 0.0);
      total += w;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (const auto& s : all_permutations(prog.n))
      CHECK(std::abs(brute_force_probability(prog, s) - d.weight(s)) <= 1e-12);
  }
}

TEST_CASE("marginal location") {
  const auto m0 = marginal_location({3, {}, std::nullopt}, 2);
  CHECK(m0 == std::vector<double>{0.0, 1.0, 0.0});
  const auto m = marginal_location(two_step(), 1);
  CHECK(m[0] == doctest::Approx(0.5));
  CHECK(m[1] == doctest::Approx(0.25));
  CHECK(m[2] == doctest::Approx(0.25));
  const auto untouched = marginal_location({4, {{1, 2, 0.3}, {2, 3, 0.6}}, std::nullopt}, 4);
  CHECK(untouched == std::vector<double>{0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("sampling") {
  const SwapProgram det{3, {{1, 3, 1.0}, {1, 2, 0.0}}, std::nullopt};
  CHECK(sample(det, 1) == P({3, 2, 1}));
  CHECK(sample(two_step(), 42) == sample(two_step(), 42));
  Rng rng(5);
  std::vector<int> counts(6, 0);
  const int draws = 100000;
  for (int s = 0; s < draws; ++s) ++counts[rank(sample(two_step(), rng()))];
  for (auto img : {std::vector<int>{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {2, 3, 1}})
    CHECK(std::abs(counts[rank(P(img))] / double(draws) - 0.25) <= 0.01);
}

TEST_CASE("classical three-strand identity") {
  const auto zero = classical_yb_params(0, 0);
  CHECK(zero.p1 == 0.0);
  CHECK(zero.p2 == 0.0);
  CHECK(zero.p3 == 0.0);
  CHECK(classical_yb_residual(zero) == 0.0);
  const auto q = classical_yb_params(1, 0);
  CHECK(q.p1 == doctest::Approx(0.5));
  CHECK(q.p2 == doctest::Approx(0.5));
  CHECK(q.p3 == doctest::Approx(0.0));
  CHECK(classical_yb_residual(q) <= 1e-12);
  Rng rng(3);
  for (int t = 0; t < 200; ++t)
    CHECK(classical_yb_residual(classical_yb_params(rng.uniform(0, 10), rng.uniform(0, 10))) <= 1e-12);
  CHECK_THROWS_AS(classical_yb_params(-1, 0), Error);
  // every step matrix is doubly stochastic
  for (int k = 1; k <= 2; ++k) {
    const auto m = classical_step_matrix(k, 0.37);
    for (int i = 0; i < 6; ++i) {
      double row = 0, col = 0;
      for (int j = 0; j < 6; ++j) {
        row += m[i * 6 + j];
        col += m[j * 6 + i];
      }
      CHECK(std::abs(row - 1) <= 1e-12);
      CHECK(std::abs(col - 1) <= 1e-12);
    }
  }
}

TEST_CASE("adjacent reachability examples") {
  CHECK(reachable_adjacent(3, {2, 1, 2}, Permutation::identity(3)));
  for (auto img : {std::vector<int>{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {2, 3, 1}})
    CHECK(reachable_adjacent(3, {1, 2}, P(img)));
  CHECK_FALSE(reachable_adjacent(3, {1, 2}, P({3, 1, 2})));
  CHECK_FALSE(reachable_adjacent(3, {1, 2}, P({3, 2, 1})));
  CHECK(reachable_adjacent(2, {1, 1}, P({2, 1})));
  CHECK(reachable_adjacent(2, {1, 1}, P({1, 2})));
}

TEST_CASE("adjacent reachability against subset enumeration") {
  Rng rng(17);
  int disagreements = 0;
  for (int c = 0; c < 300; ++c) {
    const int n = rng.integer(2, 6);
    const int m = rng.integer(0, 12);
    std::vector<int> word;
    for (int t = 0; t < m; ++t) word.push_back(rng.integer(1, n - 1));
    const auto reach = reachable_set(adjacent_program(n, word));
    for (std::uint64_t r = 0; r < factorial(n); ++r)
      disagreements += reachable_adjacent(n, word, unrank(n, r)) != (reach[r] != 0);
  }
  CHECK(disagreements == 0);
}

TEST_CASE("counting subsets") {
  const auto prog = adjacent_program(2, {1, 1});
  CHECK(count_achieving_subsets(prog, P({1, 2})) == 2);
  CHECK(count_achieving_subsets(prog, P({2, 1})) == 2);
  CHECK(reachable_general({3, {}, std::nullopt}, Permutation::identity(3)));
  CHECK_FALSE(reachable_general({3, {}, std::nullopt}, P({2, 1, 3})));
  // non-adjacent swaps
  const SwapProgram far{3, {{1, 3, 0.5}}, std::nullopt};
  CHECK(reachable_general(far, P({3, 2, 1})));
  CHECK_FALSE(reachable_general(far, P({2, 1, 3})));
}

TEST_CASE("instruction normalization") {
  SwapProgram ones = two_step();
  ones.instruction = "11";
  const auto same = normalize_instruction(ones);
  CHECK(same.offset == Permutation::identity(3));
  CHECK(same.program.steps.size() == 2);
  CHECK(same.program.steps[0].i == 1);
  CHECK(same.program.steps[0].j == 2);
  CHECK(same.program.steps[1].i == 2);
  CHECK(same.program.steps[1].j == 3);

  SwapProgram zeros = two_step();
  zeros.instruction = "00";
  const auto fixed = normalize_instruction(zeros);
  CHECK(fixed.program.steps.empty());
  CHECK(fixed.offset == P({2, 3, 1}));

  // forced (1,2) then free (1,3): the free swap becomes (2,3)
  SwapProgram mixed{3, {{1, 2, 1.0}, {1, 3, 0.5}}, std::string("01")};
  const auto norm = normalize_instruction(mixed);
  REQUIRE(norm.program.steps.size() == 1);
  CHECK(norm.program.steps[0].i == 2);
  CHECK(norm.program.steps[0].j == 3);
  CHECK(counting_vector(mixed) == counting_vector(norm.program, &norm.offset));

  Rng rng(23);
  for (int c = 0; c < 200; ++c) {
    auto prog = random_program(rng, rng.integer(2, 5), rng.integer(0, 10));
    std::string instr;
    for (std::size_t t = 0; t < prog.steps.size(); ++t) instr.push_back(rng.bernoulli(0.5) ? '1' : '0');
    prog.instruction = instr;
    const auto nz = normalize_instruction(prog);
    CHECK(counting_vector(prog) == counting_vector(nz.program, &nz.offset));
  }
}

TEST_CASE("demazure and bruhat") {
  CHECK(demazure_product(3, {1, 1}) == P({2, 1, 3}));
  CHECK(demazure_product(3, {1, 2, 1}) == P({3, 2, 1}));
  CHECK(bruhat_leq(Permutation::identity(4), P({4, 3, 2, 1})));
  CHECK_FALSE(bruhat_leq(P({2, 1, 3}), P({1, 3, 2})));
}
