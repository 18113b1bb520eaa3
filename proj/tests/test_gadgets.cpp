#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ballistic/encoded.hpp"
#include "ballistic/errors.hpp"
#include "ballistic/gadgets.hpp"
#include "ballistic/rng.hpp"

using namespace ballistic;

namespace {
constexpr double kPi = std::numbers::pi;
const cx I(0.0, 1.0);

Permutation P(std::vector<int> v) { return Permutation(std::move(v)); }

// distance after removing the best global phase
double phase_distance(const std::vector<cx>& a, const std::vector<cx>& b) {
  cx overlap = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) overlap += std::conj(b[r]) * a[r];
  const cx ph = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cx(1, 0);
  double worst = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) worst = std::max(worst, std::abs(a[r] - ph * b[r]));
  return worst;
}

ScheduleEvent gate_ev(const Gate& g) {
  ScheduleEvent e;
  e.gate = g;
  return e;
}
ScheduleEvent meas_ev(int pos, int label, MeasureMode m = MeasureMode::Nondemolition) {
  ScheduleEvent e;
  e.kind = ScheduleEvent::Kind::Measure;
  e.measure = {pos, label, m};
  return e;
}
}  // namespace

TEST_CASE("postselection basics") {
  const auto r = postselect(PermState::basis(P({1, 2, 3})), {1, 1, MeasureMode::Nondemolition});
  CHECK(r.success_probability == 1.0);
  CHECK(r.state.amplitude(P({1, 2, 3})) == cx(1.0, 0.0));
  CHECK_THROWS_AS(postselect(PermState::basis(P({1, 2, 3})), {1, 2, MeasureMode::Nondemolition}), Error);
}

TEST_CASE("label 1 at position 2 after the collision triple") {
  const double z1 = 0.8, z2 = -1.7;
  PermState st = PermState::basis(Permutation::identity(3));
  apply_circuit(st, collision_triple(z1, z2));
  const auto r = postselect(st, {2, 1, MeasureMode::Nondemolition});
  // (|213> + i z2 |312>) / sqrt(1 + z2^2)
  std::vector<cx> want(6, 0.0);
  const double nrm = std::sqrt(1 + z2 * z2);
  want[rank(P({2, 1, 3}))] = 1.0 / nrm;
  want[rank(P({3, 1, 2}))] = I * z2 / nrm;
  CHECK(phase_distance(r.state.amplitudes(), want) <= 1e-12);
}

TEST_CASE("nine closed forms and the Born rule") {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const double z1 = rng.uniform(-3, 3), z2 = rng.uniform(-3, 3);
    PermState st = PermState::basis(Permutation::identity(3));
    apply_circuit(st, collision_triple(z1, z2));
    for (int pos = 1; pos <= 3; ++pos) {
      double total = 0.0;
      for (int label = 1; label <= 3; ++label) {
        const auto r = postselect(st, {pos, label, MeasureMode::Nondemolition});
        total += r.success_probability;
        CHECK(phase_distance(r.state.amplitudes(), pij_closed_form(label, pos, z1, z2).amplitudes()) <= 1e-12);
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("four-particle gadget") {
  const auto idg = four_particle_gadget(0.0, 0.0);
  CHECK(idg.success_probability == doctest::Approx(1.0));
  CHECK(phase_fidelity(idg.matrix, Eigen::Matrix2cd::Identity()) >= 1 - 1e-12);
  const auto quarter = four_particle_gadget(1.0, 0.0);
  CHECK(phase_fidelity(quarter.matrix, pair_rotation(kPi / 4)) >= 1 - 1e-12);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const double z1 = rng.uniform(-3, 3), z2 = rng.uniform(-3, 3);
    const auto e = four_particle_gadget(z1, z2);
    CHECK(e.fidelity >= 1 - 1e-10);
    CHECK(std::abs(e.target_angle - (std::atan(z1) + std::atan(z2))) <= 1e-15);
    CHECK((e.matrix.adjoint() * e.matrix - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-10);
    // success probability of the two ancilla reflections
    const double va = (z1 + z2) / 2, vb = (z1 - z2) / 2;
    CHECK(std::abs(e.success_probability - 1.0 / ((1 + va * va) * (1 + (z1 - vb) * (z1 - vb)))) <= 1e-12);
  }
}

TEST_CASE("four-particle gadget on an entangled black pair") {
  const double z1 = 0.9, z2 = -0.35;
  GadgetSchedule s;
  s.n_black = 2;
  s.n_total = 4;
  s.initial = {3, -1, -2, 4};
  s.ancilla_labels = {3, 4};
  s.events = {gate_ev(Gate::h(z1, 2)), gate_ev(Gate::h((z1 + z2) / 2, 1)), gate_ev(Gate::h(z1 - (z1 - z2) / 2, 3)),
              gate_ev(Gate::h((z1 + z2) / 2 - (z1 - z2) / 2, 2)), meas_ev(1, 3), meas_ev(4, 4)};
  s.final_black_positions = {2, 3};
  PermState in(2);
  in[0] = cx(0.6, 0.0);
  in[1] = cx(0.0, 0.8);
  const auto run = run_schedule(s, in);
  PermState want = in;
  apply_gate(want, Gate::x(std::atan(z1) + std::atan(z2), 1));
  CHECK(phase_distance(run.output.amplitudes(), want.amplitudes()) <= 1e-12);
}

TEST_CASE("navigation gadget") {
  CHECK(navigation_gadget(0.0, 1.0, 1.0).success_probability == doctest::Approx(0.5));
  CHECK(navigation_gadget(0.0, 1e6, 1.0).success_probability < 1e-10);
  CHECK(navigation_gadget(0.0, 1e-6, 1.0).success_probability > 1 - 1e-10);
  CHECK(navigation_gadget(0.0, 2.0, 1.0).label_preserved);
  CHECK(navigation_gadget(0.3, 2.0, 1.0).outgoing_velocity == 2.0);
  CHECK_THROWS_AS(navigation_gadget(1.0, 0.5, 1.0), Error);
}

TEST_CASE("three-particle gadget") {
  const auto zero = three_particle_nondemolition(0.7, 0.4, 0);
  CHECK((zero.matrix - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const double z1 = rng.uniform(-1.5, 1.5), z2 = rng.uniform(-1.5, 1.5);
    const auto one = three_particle_nondemolition(z1, z2, 1);
    CHECK(phase_fidelity(one.matrix, pair_rotation(three_particle_angle(z1, z2))) >= 1 - 1e-9);
    const auto two = three_particle_nondemolition(z1, z2, 2);
    CHECK(phase_fidelity(two.matrix, one.matrix * one.matrix) >= 1 - 1e-9);
    for (int iters = 3; iters <= 8; ++iters) CHECK(three_particle_nondemolition(z1, z2, iters).fidelity >= 1 - 1e-9);
  }
  CHECK_THROWS_AS(three_particle_nondemolition(1, 1, -1), Error);
}

TEST_CASE("schedule validation freezes demolished particles") {
  GadgetSchedule s;
  s.n_black = 1;
  s.n_total = 2;
  s.initial = {-1, 2};
  s.ancilla_labels = {2};
  s.final_black_positions = {1};
  s.events = {meas_ev(2, 2, MeasureMode::Demolition), gate_ev(Gate::x(0.1, 1))};
  CHECK_THROWS_AS(s.validate(), Error);
  s.events = {gate_ev(Gate::y(0.1, 1))};
  CHECK_THROWS_AS(s.validate(), Error);
  s.events = {meas_ev(2, 2, MeasureMode::Demolition)};
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("compiled schedules") {
  const auto empty = compile_x_circuit({}, 3);
  CHECK(empty.events.empty());
  const auto run0 = run_schedule(empty, PermState::basis(P({2, 3, 1})));
  CHECK(run0.success_probability == 1.0);
  CHECK(run0.distribution.weight(P({2, 3, 1})) == 1.0);

  for (double th : {0.3, -0.9, 1.5707963, 2.8, kPi / 2, -kPi / 2}) {
    const auto s = compile_x_circuit({Gate::x(th, 1)}, 2);
    const auto run = run_schedule(s, PermState::basis(Permutation::identity(2)));
    CHECK(run.distribution.weights[0] == doctest::Approx(std::cos(th) * std::cos(th)).epsilon(1e-9));
    CHECK(run.distribution.weights[1] == doctest::Approx(std::sin(th) * std::sin(th)).epsilon(1e-9));
  }

  const std::vector<Gate> brick = {Gate::x(0.7, 1), Gate::x(-0.4, 3), Gate::x(1.1, 2)};
  for (auto scheme : {CompileScheme::Stationary, CompileScheme::Trajectory}) {
    const auto s = compile_x_circuit(brick, 4, scheme);
    const auto run = run_schedule(s, PermState::basis(Permutation::identity(4)));
    PermState direct = PermState::basis(Permutation::identity(4));
    apply_circuit(direct, brick);
    CHECK(total_variation(run.distribution.weights, measure_distribution(direct).weights) <= 1e-9);
    CHECK(run.success_probability > 0.0);
    double product = 1.0;
    for (double p : run.step_probabilities) product *= p;
    CHECK(std::abs(product - run.success_probability) <= 1e-12 * std::max(1.0, product));
  }
  CHECK_THROWS_AS(compile_x_circuit({Gate::y(0.2, 1)}, 3), Error);
}

TEST_CASE("compiled schedules on random circuits") {
  Rng rng(4);
  for (int c = 0; c < 50; ++c) {
    const int n = rng.integer(2, 4);
    std::vector<Gate> g;
    for (int t = 0, m = rng.integer(1, 4); t < m; ++t)
      g.push_back(Gate::x(rng.uniform(-kPi, kPi), rng.integer(1, n - 1)));
    PermState in(n);
    for (auto& a : in.amplitudes()) a = cx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    in.normalize();
    const auto scheme = c % 2 ? CompileScheme::Trajectory : CompileScheme::Stationary;
    const auto run = run_schedule(compile_x_circuit(g, n, scheme), in);
    PermState direct = in;
    apply_circuit(direct, g);
    CHECK(total_variation(run.distribution.weights, measure_distribution(direct).weights) <= 1e-9);
  }
}
