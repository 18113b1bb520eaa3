#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ballistic/errors.hpp"
#include "ballistic/qsim.hpp"
#include "ballistic/rng.hpp"

using namespace ballistic;

namespace {
constexpr double kPi = std::numbers::pi;
const cx I(0.0, 1.0);

Permutation P(std::vector<int> v) { return Permutation(std::move(v)); }

double maxabs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<Gate> random_x(Rng& rng, int n, int m) {
  std::vector<Gate> g;
  for (int t = 0; t < m; ++t) g.push_back(Gate::x(rng.uniform(-kPi, kPi), rng.integer(1, n - 1)));
  return g;
}

AngleTable random_table(Rng& rng, int n) {
  AngleTable t(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) t[a][b] = t[b][a] = rng.uniform(-kPi, kPi);
  return t;
}
}  // namespace

TEST_CASE("two-label X gate matrix") {
  const double th = 0.73;
  const auto m = gate_matrix(Gate::x(th, 1), 2);
  Eigen::Matrix2cd want;
  want << std::cos(th), I * std::sin(th), I * std::sin(th), std::cos(th);
  CHECK(maxabs(m - want) <= 1e-15);
  CHECK(maxabs(circuit_unitary({Gate::x(th, 1)}, 2) - want) <= 1e-15);
  CHECK(maxabs(circuit_unitary({}, 3) - Eigen::MatrixXcd::Identity(6, 6)) == 0.0);
  PermState st = PermState::basis(Permutation::identity(2));
  apply_gate(st, Gate::x(th, 1));
  CHECK(std::abs(st.amplitude(P({1, 2})) - std::cos(th)) <= 1e-15);
  CHECK(std::abs(st.amplitude(P({2, 1})) - I * std::sin(th)) <= 1e-15);
}

TEST_CASE("zero angle is the identity and H matches X of the arctangent") {
  CHECK(maxabs(gate_matrix(Gate::x(0.0, 2), 4) - Eigen::MatrixXcd::Identity(24, 24)) == 0.0);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const double z = rng.uniform(-20, 20);
    CHECK(maxabs(gate_matrix(Gate::h(z, 2), 3) - gate_matrix(Gate::x(std::atan(z), 2), 3)) <= 1e-12);
  }
}

TEST_CASE("measurement distributions") {
  const auto s = P({3, 1, 2});
  const auto d = measure_distribution(PermState::basis(s));
  CHECK(d.weight(s) == 1.0);
  PermState st = PermState::basis(Permutation::identity(2));
  apply_gate(st, Gate::x(kPi / 4, 1));
  const auto d2 = measure_distribution(st);
  CHECK(d2.weights[0] == doctest::Approx(0.5));
  CHECK(d2.weights[1] == doctest::Approx(0.5));
  const double th = 0.4;
  PermState a = PermState::basis(Permutation::identity(2)), b = a;
  apply_circuit(a, {Gate::x(th, 1), Gate::x(th, 1)});
  apply_gate(b, Gate::x(2 * th, 1));
  CHECK(std::abs(measure_distribution(a).weights[1] - measure_distribution(b).weights[1]) <= 1e-15);
  PermState zero(3);
  CHECK_THROWS_AS(measure_distribution(zero), Error);
  CHECK(sample_measurement(st, 9) == sample_measurement(st, 9));
}

TEST_CASE("gate validation and limits") {
  CHECK_THROWS_AS(validate_gate(Gate::x(0.1, 3), 3), Error);
  CHECK_THROWS_AS(validate_gate(Gate::x(NAN, 1), 3), Error);
  AngleTable asym = {{0, 1, 0}, {0.5, 0, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(validate_gate(Gate::zgate(asym, 1), 3), Error);
  CHECK_THROWS_AS(PermState(11), Error);
  try {
    PermState big(11);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Limit);
  }
  CHECK_THROWS_AS(circuit_unitary({}, 7), Error);
}

TEST_CASE("every gate kind is unitary") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const int n = 4;
    const int k = rng.integer(1, 3);
    for (const Gate& g : {Gate::x(rng.uniform(-3, 3), k), Gate::y(rng.uniform(-3, 3), k), Gate::h(rng.uniform(-5, 5), k),
                          Gate::zgate(random_table(rng, n), k), Gate::wgate(random_table(rng, n), k)}) {
      const auto m = gate_matrix(g, n);
      CHECK(maxabs(m.adjoint() * m - Eigen::MatrixXcd::Identity(24, 24)) <= 1e-12);
    }
  }
  for (int c = 0; c < 100; ++c) {
    const auto u = circuit_unitary(random_x(rng, 4, 12), 4);
    CHECK(maxabs(u.adjoint() * u - Eigen::MatrixXcd::Identity(24, 24)) <= 1e-10);
  }
}

TEST_CASE("commutation and inverse relations") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    const auto x1 = gate_matrix(Gate::x(a, 1), 4), x3 = gate_matrix(Gate::x(b, 3), 4);
    CHECK(maxabs(x1 * x3 - x3 * x1) <= 1e-12);
    const int k = rng.integer(1, 3), k2 = rng.integer(1, 3);
    const auto xk = gate_matrix(Gate::x(a, k), 4), yk = gate_matrix(Gate::y(b, k2), 4);
    CHECK(maxabs(xk * yk - yk * xk) <= 1e-12);
    CHECK(maxabs(xk * gate_matrix(Gate::x(-a, k), 4) - Eigen::MatrixXcd::Identity(24, 24)) <= 1e-12);
  }
}

TEST_CASE("dense application agrees with the matrix") {
  Rng rng(6);
  const int n = 4;
  std::vector<Gate> gates = random_x(rng, n, 6);
  gates.push_back(Gate::y(0.3, 2));
  gates.push_back(Gate::zgate(random_table(rng, n), 1));
  gates.push_back(Gate::wgate(random_table(rng, n), 3));
  const auto u = circuit_unitary(gates, n);
  for (std::uint64_t r = 0; r < 24; r += 5) {
    PermState st = PermState::basis(unrank(n, r));
    apply_circuit(st, gates);
    for (std::uint64_t q = 0; q < 24; ++q) CHECK(std::abs(st[q] - u(q, r)) <= 1e-12);
  }
}

TEST_CASE("pair rotation on distant positions") {
  PermState st = PermState::basis(Permutation::identity(4));
  apply_pair_rotation(st, 1, 4, 0.6);
  CHECK(std::abs(st.amplitude(P({1, 2, 3, 4})) - std::cos(0.6)) <= 1e-15);
  CHECK(std::abs(st.amplitude(P({4, 2, 3, 1})) - I * std::sin(0.6)) <= 1e-15);
}

TEST_CASE("column permutation relation") {
  CHECK(column_permutation_check({}, 3).ok);
  Rng rng(7);
  for (int c = 0; c < 50; ++c) CHECK(column_permutation_check(random_x(rng, 4, 15), 4).ok);
  // a generic label-dependent circuit breaks it
  bool violated = false;
  for (int c = 0; c < 20 && !violated; ++c) {
    std::vector<Gate> z;
    for (int t = 0; t < 4; ++t) z.push_back(Gate::zgate(random_table(rng, 3), rng.integer(1, 2)));
    violated = column_relation_residual(z, 3) > 1e-3;
  }
  CHECK(violated);
  CHECK_THROWS_AS(column_permutation_check({Gate::y(0.3, 1)}, 3), Error);
}

TEST_CASE("X/Y duality") {
  CHECK(xy_duality_check({}, 4).ok);
  for (int k = 1; k <= 3; ++k) {
    PermState a = PermState::basis(Permutation::identity(4)), b = a;
    apply_gate(a, Gate::x(0.9, k));
    apply_gate(b, Gate::y(0.9, k));
    for (std::size_t r = 0; r < a.dimension(); ++r) CHECK(std::abs(a[r] - b[r]) <= 1e-15);
  }
  Rng rng(8);
  for (int c = 0; c < 50; ++c) CHECK(xy_duality_check(random_x(rng, 4, 15), 4).ok);
}

TEST_CASE("trace identity") {
  const double th = 1.1;
  const auto t = trace_identity_check({Gate::x(th, 1)}, 2);
  CHECK(std::abs(t.trace - 2 * std::cos(th)) <= 1e-14);
  CHECK(std::abs(t.identity_amplitude - std::cos(th)) <= 1e-14);
  const auto id = trace_identity_check({}, 4);
  CHECK(std::abs(id.trace - 24.0) <= 1e-12);
  CHECK(std::abs(id.identity_amplitude - 1.0) <= 1e-15);
  Rng rng(9);
  for (int c = 0; c < 50; ++c) CHECK(trace_identity_check(random_x(rng, 5, 30), 5).ok);
}

TEST_CASE("Monte Carlo identity amplitude") {
  const auto id = mc_identity_amplitude({}, 3, 1000, 1);
  CHECK(id.value.real() == 1.0);
  const auto est = mc_identity_amplitude({Gate::x(kPi / 3, 1)}, 2, 40000, 3);
  CHECK(std::abs(est.value.real() - 0.5) <= 3 * est.stderr_re + 1e-12);
  CHECK(std::abs(est.value.imag()) <= 3 * est.stderr_im + 1e-12);
  Rng rng(10);
  const auto g = random_x(rng, 4, 10);
  const auto small = mc_identity_amplitude(g, 4, 1000, 5);
  const auto large = mc_identity_amplitude(g, 4, 16000, 5);
  // standard error shrinks like 1/sqrt(samples)
  CHECK(large.stderr_re < small.stderr_re / 2.5);
}
