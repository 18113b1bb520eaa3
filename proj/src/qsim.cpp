#include "ballistic/qsim.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "ballistic/errors.hpp"
#include "ballistic/rng.hpp"
#include "tables.hpp"

namespace ballistic {

Gate Gate::x(double theta, int k) {
  Gate g;
  g.kind = GateKind::X;
  g.theta = theta;
  g.k = k;
  return g;
}

Gate Gate::y(double theta, int k) {
  Gate g = x(theta, k);
  g.kind = GateKind::Y;
  return g;
}

Gate Gate::h(double z, int k) {
  Gate g;
  g.kind = GateKind::H;
  g.z = z;
  g.k = k;
  return g;
}

Gate Gate::zgate(AngleTable table, int k) {
  Gate g;
  g.kind = GateKind::Z;
  g.table = std::move(table);
  g.k = k;
  return g;
}

Gate Gate::wgate(AngleTable table, int k) {
  Gate g = zgate(std::move(table), k);
  g.kind = GateKind::W;
  return g;
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::W: return "W";
    case GateKind::H: return "H";
  }
  return "?";
}

void validate_gate(const Gate& g, int n) {
  require(g.k >= 1 && g.k <= n - 1, "gate position k out of range");
  require(std::isfinite(g.theta) && std::isfinite(g.z), "gate parameter is not finite");
  require(std::abs(std::abs(g.phase) - 1.0) < 1e-12, "gate phase must have unit modulus");
  if (g.kind == GateKind::Z || g.kind == GateKind::W) {
    require(static_cast<int>(g.table.size()) == n, "angle table must be n x n");
    for (int a = 0; a < n; ++a) {
      require(static_cast<int>(g.table[a].size()) == n, "angle table must be n x n");
      for (int b = 0; b < n; ++b) {
        require(std::isfinite(g.table[a][b]), "angle table entry is not finite");
        require(g.table[a][b] == g.table[b][a], "angle table must be symmetric");
      }
    }
  }
}

PermState::PermState(int n) : n_(n) {
  require(n >= 1, "state needs at least one label");
  if (n > kMaxDenseLabels) fail(ErrorKind::Limit, "dense states support at most 10 labels");
  amp_.assign(factorial(n), cx{0.0, 0.0});
}

PermState PermState::basis(const Permutation& s) {
  PermState st(s.size());
  st.amp_[rank(s)] = 1.0;
  return st;
}

cx PermState::amplitude(const Permutation& s) const {
  require(s.size() == n_, "amplitude: size mismatch");
  return amp_[rank(s)];
}

double PermState::norm() const {
  double sum = 0.0;
  for (const auto& a : amp_) sum += std::norm(a);
  return std::sqrt(sum);
}

void PermState::normalize() {
  const double nrm = norm();
  if (nrm < 1e-300) fail(ErrorKind::ZeroProbability, "cannot normalize a zero state");
  for (auto& a : amp_) a /= nrm;
}

namespace {

// Partner tables are cached for small n; n = 10 is rebuilt per call.
std::shared_ptr<const std::vector<std::uint32_t>> pair_table(bool labels, int n, int a, int b) {
  static std::mutex mu;
  static std::map<std::tuple<bool, int, int, int>, std::shared_ptr<const std::vector<std::uint32_t>>>
      cache;
  const auto key = std::make_tuple(labels, n, a, b);
  if (n <= 9) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const std::vector<std::uint32_t>>(
      labels ? detail::label_pair_table(n, a, b) : detail::position_pair_table(n, a, b));
  if (n <= 9) {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, built);
  }
  return built;
}

// Each pair {r, partner[r]} is touched once; angle(r) must equal angle(partner[r]).
template <class AngleOf>
void rotate_pairs(PermState& state, const std::vector<std::uint32_t>& partner, cx phase,
                  AngleOf angle_of) {
  auto& amp = state.amplitudes();
  detail::parallel_ranges(amp.size(), [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t r = lo; r < hi; ++r) {
      const std::uint64_t q = partner[r];
      if (q <= r) continue;
      const double t = angle_of(r);
      const cx c = phase * std::cos(t);
      const cx s = phase * cx(0.0, std::sin(t));
      const cx a = amp[r], b = amp[q];
      amp[r] = c * a + s * b;
      amp[q] = s * a + c * b;
    }
  });
}

}  // namespace

void apply_gate(PermState& state, const Gate& g) {
  const int n = state.n();
  validate_gate(g, n);
  switch (g.kind) {
    case GateKind::X:
    case GateKind::H: {
      const double t = g.kind == GateKind::X ? g.theta : std::atan(g.z);
      auto tab = pair_table(false, n, g.k, g.k + 1);
      rotate_pairs(state, *tab, g.phase, [t](std::uint64_t) { return t; });
      break;
    }
    case GateKind::Y: {
      auto tab = pair_table(true, n, g.k, g.k + 1);
      rotate_pairs(state, *tab, g.phase, [&](std::uint64_t) { return g.theta; });
      break;
    }
    case GateKind::Z: {
      auto tab = pair_table(false, n, g.k, g.k + 1);
      rotate_pairs(state, *tab, g.phase, [&](std::uint64_t r) {
        int img[32];
        unrank_into(n, r, img);
        return g.table[img[g.k - 1] - 1][img[g.k] - 1];
      });
      break;
    }
    case GateKind::W: {
      auto tab = pair_table(true, n, g.k, g.k + 1);
      rotate_pairs(state, *tab, g.phase, [&](std::uint64_t r) {
        int img[32];
        unrank_into(n, r, img);
        int pa = 0, pb = 0;
        for (int p = 0; p < n; ++p) {
          if (img[p] == g.k) pa = p;
          if (img[p] == g.k + 1) pb = p;
        }
        return g.table[pa][pb];
      });
      break;
    }
  }
}

void apply_circuit(PermState& state, const std::vector<Gate>& gates) {
  for (const auto& g : gates) apply_gate(state, g);
}

void apply_pair_rotation(PermState& state, int i, int j, double theta) {
  const int n = state.n();
  require(i >= 1 && j >= 1 && i <= n && j <= n && i != j, "pair rotation positions invalid");
  if (i > j) std::swap(i, j);
  auto tab = pair_table(false, n, i, j);
  rotate_pairs(state, *tab, cx{1.0, 0.0}, [theta](std::uint64_t) { return theta; });
}

cx amplitude(const PermState& state, const Permutation& s) { return state.amplitude(s); }

PermDistribution measure_distribution(const PermState& state) {
  const double nrm = state.norm();
  if (std::abs(nrm - 1.0) > 1e-10) fail(ErrorKind::Input, "measurement needs a normalized state");
  PermDistribution d;
  d.n = state.n();
  d.weights.resize(state.dimension());
  for (std::size_t r = 0; r < state.dimension(); ++r) d.weights[r] = std::norm(state[r]);
  return d;
}

Permutation sample_measurement(const PermState& state, std::uint64_t seed) {
  const auto d = measure_distribution(state);
  Rng rng(seed);
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t r = 0; r < d.weights.size(); ++r) {
    acc += d.weights[r];
    if (u < acc) return unrank(state.n(), r);
  }
  // rounding left u just above the accumulated mass: take the last supported rank
  for (std::size_t r = d.weights.size(); r-- > 0;)
    if (d.weights[r] > 0.0) return unrank(state.n(), r);
  return Permutation::identity(state.n());
}

Eigen::MatrixXcd gate_matrix(const Gate& g, int n) { return circuit_unitary({g}, n); }

Eigen::MatrixXcd circuit_unitary(const std::vector<Gate>& gates, int n) {
  if (n > kMaxMatrixLabels) fail(ErrorKind::Limit, "matrix materialization supports at most 6 labels");
  for (const auto& g : gates) validate_gate(g, n);
  const auto dim = static_cast<Eigen::Index>(factorial(n));
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    PermState st(n);
    st[static_cast<std::size_t>(c)] = 1.0;
    apply_circuit(st, gates);
    for (Eigen::Index r = 0; r < dim; ++r) u(r, c) = st[static_cast<std::size_t>(r)];
  }
  return u;
}

namespace {

void require_x_only(const std::vector<Gate>& gates) {
  for (const auto& g : gates)
    require(g.kind == GateKind::X || g.kind == GateKind::H, "check accepts X gates only");
}

}  // namespace

CheckResult column_permutation_check(const std::vector<Gate>& gates, int n, double tol) {
  require_x_only(gates);
  const double worst = column_relation_residual(gates, n);
  return {worst <= tol, worst};
}

double column_relation_residual(const std::vector<Gate>& gates, int n) {
  const auto u = circuit_unitary(gates, n);
  const auto perms = all_permutations(n);
  double worst = 0.0;
  for (const auto& pi : perms) {
    const auto col = static_cast<Eigen::Index>(rank(pi));
    for (const auto& s : perms) {
      const cx alpha = u(static_cast<Eigen::Index>(rank(s)), 0);
      const cx beta = u(static_cast<Eigen::Index>(rank(relabel(s, pi))), col);
      worst = std::max(worst, std::abs(alpha - beta));
    }
  }
  return worst;
}

std::vector<Gate> y_mirror(const std::vector<Gate>& gates) {
  std::vector<Gate> out;
  for (const auto& g : gates) {
    require(g.kind == GateKind::X || g.kind == GateKind::H, "mirror accepts X gates only");
    Gate y = Gate::y(g.kind == GateKind::X ? g.theta : std::atan(g.z), g.k);
    y.phase = g.phase;
    out.push_back(y);
  }
  return out;
}

CheckResult xy_duality_check(const std::vector<Gate>& gates, int n, double tol) {
  PermState xs = PermState::basis(Permutation::identity(n));
  PermState ys = xs;
  apply_circuit(xs, gates);
  apply_circuit(ys, y_mirror(gates));
  double worst = 0.0;
  int img[32];
  for (std::uint64_t r = 0; r < xs.dimension(); ++r) {
    unrank_into(n, r, img);
    const auto s = Permutation(std::vector<int>(img, img + n));
    worst = std::max(worst, std::abs(ys[r] - xs[rank(inverse(s))]));
  }
  return {worst <= tol, worst};
}

TraceCheck trace_identity_check(const std::vector<Gate>& gates, int n) {
  require_x_only(gates);
  const auto u = circuit_unitary(gates, n);
  TraceCheck t;
  t.trace = u.trace();
  t.identity_amplitude = u(0, 0);
  const double nf = static_cast<double>(factorial(n));
  t.residual = std::abs(t.trace - nf * t.identity_amplitude);
  t.ok = t.residual <= 1e-9 * nf;
  return t;
}

McEstimate mc_identity_amplitude(const std::vector<Gate>& gates, int n, std::uint64_t samples,
                                 std::uint64_t seed) {
  require_x_only(gates);
  require(samples >= 1, "need at least one sample");
  Rng rng(seed);
  const std::uint64_t dim = factorial(n);
  std::unordered_map<std::uint64_t, cx> diagonal;
  double sum_re = 0.0, sum_im = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(0, dim - 1)(rng);
    auto it = diagonal.find(r);
    if (it == diagonal.end()) {
      PermState st(n);
      st[r] = 1.0;
      apply_circuit(st, gates);
      it = diagonal.emplace(r, st[r]).first;
    }
    // one-clean-qubit readouts: outcome +1 with probability (1 + part) / 2
    const double pre = 0.5 * (1.0 + it->second.real());
    const double pim = 0.5 * (1.0 + it->second.imag());
    sum_re += rng.uniform() < pre ? 1.0 : -1.0;
    sum_im += rng.uniform() < pim ? 1.0 : -1.0;
  }
  const double m = static_cast<double>(samples);
  McEstimate e;
  e.value = cx(sum_re / m, sum_im / m);
  e.stderr_re = std::sqrt(std::max(0.0, 1.0 - e.value.real() * e.value.real()) / m);
  e.stderr_im = std::sqrt(std::max(0.0, 1.0 - e.value.imag() * e.value.imag()) / m);
  return e;
}

}  // namespace ballistic
