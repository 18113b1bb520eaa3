#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ballistic/errors.hpp"
#include "ballistic/rng.hpp"
#include "ballistic/scattering.hpp"

using namespace ballistic;

namespace {
double maxabs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("delta gate limits and unitarity") {
  const auto still = gate_matrix(delta_gate(0.3, 0.3, 1.0, 1), 2);
  CHECK(maxabs(still + Eigen::MatrixXcd::Identity(2, 2)) <= 1e-15);
  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(maxabs(gate_matrix(delta_gate(1e9, 0.0, 1.0, 1), 2) - swap) <= 1e-8);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const double v = rng.uniform(-10, 10), c = rng.uniform(0.1, 5);
    const cx denom(v, c);
    const double r = std::norm(cx(0, -c) / denom), tr = std::norm(v / denom);
    CHECK(std::abs(r + tr - 1.0) <= 1e-12);
    const auto m = gate_matrix(delta_gate(v, 0.0, c, 2), 3);
    CHECK(maxabs(m.adjoint() * m - Eigen::MatrixXcd::Identity(6, 6)) <= 1e-12);
    // entries match the reflection and transmission amplitudes
    const auto m2 = gate_matrix(delta_gate(v, 0.0, c, 1), 2);
    CHECK(std::abs(m2(0, 0) - cx(0, -c) / denom) <= 1e-12);
    CHECK(std::abs(m2(1, 0) - v / denom) <= 1e-12);
  }
  CHECK_THROWS_AS(delta_gate(1, 0, 0.0, 1), Error);
}

TEST_CASE("rapidity gates invert by negation") {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const double u = rng.uniform(-10, 10);
    const auto a = gate_matrix(Gate::h(u, 1), 3), b = gate_matrix(Gate::h(-u, 1), 3);
    CHECK(maxabs(a * b - Eigen::MatrixXcd::Identity(6, 6)) <= 1e-12);
  }
}

TEST_CASE("single crossing") {
  const auto s = build_schedule({{0.0, 1.0}, {1.0, 0.0}, 1.0});
  REQUIRE(s.events.size() == 1);
  CHECK(s.events[0].time == doctest::Approx(1.0));
  CHECK(s.events[0].k == 1);
  CHECK(s.events[0].relative_velocity == doctest::Approx(1.0));
  CHECK(s.signature == Permutation({2, 1}));
  CHECK(build_schedule({{0.0, 1.0}, {0.5, 0.5}, 1.0}).events.empty());
  CHECK(schedule_unitary(build_schedule({{0.0, 1.0}, {0.5, 0.5}, 1.0}), 1.0).empty());
}

TEST_CASE("three-ball orders depend on the middle placement") {
  const auto left = build_schedule({{0.0, 0.2, 2.0}, {1.0, 0.0, -1.0}, 1.0});
  const auto right = build_schedule({{0.0, 1.8, 2.0}, {1.0, 0.0, -1.0}, 1.0});
  REQUIRE(left.events.size() == 3);
  REQUIRE(right.events.size() == 3);
  CHECK(left.events[0].k == 1);
  CHECK(left.events[1].k == 2);
  CHECK(left.events[2].k == 1);
  CHECK(right.events[0].k == 2);
  CHECK(right.events[1].k == 1);
  CHECK(right.events[2].k == 2);
  CHECK(left.signature == right.signature);
  const auto ul = circuit_unitary(schedule_unitary(left, 1.0), 3);
  const auto ur = circuit_unitary(schedule_unitary(right, 1.0), 3);
  CHECK(maxabs(ul - ur) <= 1e-10);
}

TEST_CASE("ties are reported and jitter resolves them") {
  const TrajectorySet tie{{0.0, 1.0, 2.0}, {1.0, 0.0, -1.0}, 1.0};
  CHECK_THROWS_AS(build_schedule(tie), SimultaneousCollision);
  try {
    build_schedule(tie);
  } catch (const SimultaneousCollision& e) {
    CHECK(e.kind() == ErrorKind::SimultaneousCollision);
    CHECK(e.tied().size() >= 2);
  }
  ScheduleOptions opts;
  opts.jitter = true;
  opts.seed = 4;
  const auto s = build_schedule(tie, opts);
  CHECK(s.events.size() == 3);
}

TEST_CASE("schedule invariants on random trajectories") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.integer(2, 5);
    std::vector<double> xs(n), vs(n);
    for (auto& x : xs) x = rng.uniform(0, 10);
    std::sort(xs.begin(), xs.end());
    for (auto& v : vs) v = rng.uniform(-3, 3);
    const auto s = build_schedule({xs, vs, 1.0});
    // final order sorts velocities increasingly
    CHECK(std::is_sorted(s.final_velocities.begin(), s.final_velocities.end()));
    // signature is the product of the collisions' position swaps
    Permutation sig = Permutation::identity(n);
    double last = 0.0;
    for (const auto& e : s.events) {
      CHECK(e.time >= last);
      last = e.time;
      sig = position_swap(sig, e.k);
    }
    CHECK(sig == s.signature);
    if (n == 4) {
      const auto u = circuit_unitary(schedule_unitary(s, 1.0), n);
      CHECK(maxabs(u.adjoint() * u - Eigen::MatrixXcd::Identity(24, 24)) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(build_schedule({{1.0, 0.0}, {0.0, 0.0}, 1.0}), Error);
}

TEST_CASE("three-strand identity") {
  CHECK(ybe_check(0.0, 0.0) == 0.0);
  Rng rng(5);
  for (int t = 0; t < 200; ++t) CHECK(ybe_check(rng.uniform(-10, 10), rng.uniform(-10, 10)) < 1e-12);
  int witnesses = 0;
  for (int t = 0; t < 20; ++t) {
    const double x = rng.uniform(-3, 3), y = rng.uniform(-3, 3);
    witnesses += ybe_residual(x, y, x + y + 1.0) > 0.01;
  }
  CHECK(witnesses >= 18);
}

TEST_CASE("signature determinism") {
  CHECK(signature_determinism_check({1.0, -1.0}, 20, 1).ok);
  const auto three = signature_determinism_check({2.0, 0.0, -2.0}, 100, 2);
  CHECK(three.ok);
  CHECK(three.draws == 100);
  Rng rng(6);
  std::vector<double> v(4);
  for (auto& x : v) x = rng.uniform(-3, 3);
  CHECK(signature_determinism_check(v, 100, 7).ok);
  CHECK_THROWS_AS(signature_determinism_check({1, 2, 3, 4, 5, 6}, 10, 1), Error);
}
