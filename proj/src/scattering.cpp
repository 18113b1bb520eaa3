#include "ballistic/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "ballistic/errors.hpp"
#include "ballistic/rng.hpp"

namespace ballistic {

void TrajectorySet::validate() const {
  require(!positions.empty(), "trajectory set is empty");
  require(positions.size() == velocities.size(), "positions and velocities differ in length");
  require(c > 0.0 && std::isfinite(c), "interaction strength c must be positive");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    require(std::isfinite(positions[i]) && std::isfinite(velocities[i]), "non-finite trajectory");
    if (i) require(positions[i] > positions[i - 1], "positions must be strictly increasing");
  }
}

Gate delta_gate(double p_left, double p_right, double c, int k) {
  require(c > 0.0, "interaction strength c must be positive");
  const double v = p_left - p_right;
  // (-ic + V L)/(ic + V) = [-ic/(ic+V)] sqrt(1+z^2) * H(z), z = V/c
  const cx reflect = cx(0.0, -c) / cx(v, c);
  Gate g = Gate::h(v / c, k);
  g.phase = reflect / std::abs(reflect);
  return g;
}

namespace {

CollisionSchedule schedule_once(const TrajectorySet& t, double window) {
  const int n = static_cast<int>(t.positions.size());
  std::vector<int> slot(n);  // particle index in each slot
  for (int i = 0; i < n; ++i) slot[i] = i;
  CollisionSchedule s;
  double now = 0.0;
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, double>> candidates;
    for (int k = 0; k + 1 < n; ++k) {
      const int a = slot[k], b = slot[k + 1];
      const double dv = t.velocities[a] - t.velocities[b];
      if (dv <= 0.0) continue;
      const double when = (t.positions[b] - t.positions[a]) / dv;
      if (when <= now) continue;
      candidates.emplace_back(k, when);
      best = std::min(best, when);
    }
    if (candidates.empty()) break;
    std::vector<std::pair<int, double>> tied;
    for (const auto& c : candidates)
      if (std::abs(c.second - best) <= window * std::max(1.0, std::abs(best))) tied.push_back(c);
    if (tied.size() > 1) {
      std::ostringstream os;
      os << "simultaneous collisions at time " << best << " on pairs";
      for (const auto& e : tied) os << " (" << e.first + 1 << "," << e.first + 2 << ")";
      throw SimultaneousCollision(os.str(), [&] {
        std::vector<std::pair<int, double>> out;
        for (const auto& e : tied) out.emplace_back(e.first + 1, e.second);
        return out;
      }());
    }
    const int k = tied.front().first;
    Collision ev;
    ev.time = best;
    ev.k = k + 1;
    ev.left = slot[k] + 1;
    ev.right = slot[k + 1] + 1;
    ev.p_left = t.velocities[slot[k]];
    ev.p_right = t.velocities[slot[k + 1]];
    ev.relative_velocity = ev.p_left - ev.p_right;
    ev.rapidity = ev.relative_velocity / t.c;
    s.events.push_back(ev);
    std::swap(slot[k], slot[k + 1]);
    now = best;
  }
  std::vector<int> sig(n);
  for (int k = 0; k < n; ++k) {
    sig[k] = slot[k] + 1;
    s.final_velocities.push_back(t.velocities[slot[k]]);
  }
  s.signature = Permutation(std::move(sig));
  return s;
}

}  // namespace

CollisionSchedule build_schedule(const TrajectorySet& t, const ScheduleOptions& opts) {
  t.validate();
  if (!opts.jitter) return schedule_once(t, opts.time_window);
  Rng rng(opts.seed);
  TrajectorySet moved = t;
  for (int attempt = 0;; ++attempt) {
    try {
      return schedule_once(moved, opts.time_window);
    } catch (const SimultaneousCollision&) {
      if (attempt + 1 >= opts.max_retries) throw;
    }
    moved = t;
    for (std::size_t i = 0; i < moved.positions.size(); ++i)
      moved.positions[i] += opts.epsilon * rng.uniform(-1.0, 1.0);
    bool increasing = true;
    for (std::size_t i = 1; i < moved.positions.size(); ++i)
      increasing = increasing && moved.positions[i] > moved.positions[i - 1];
    if (!increasing) moved = t;
  }
}

std::vector<Gate> schedule_unitary(const CollisionSchedule& s, double c) {
  std::vector<Gate> gates;
  for (const auto& ev : s.events) gates.push_back(delta_gate(ev.p_left, ev.p_right, c, ev.k));
  return gates;
}

double ybe_residual(double x, double y, double middle) {
  const auto lhs = circuit_unitary({Gate::h(y, 1), Gate::h(middle, 2), Gate::h(x, 1)}, 3);
  const auto rhs = circuit_unitary({Gate::h(x, 2), Gate::h(middle, 1), Gate::h(y, 2)}, 3);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double ybe_check(double x, double y) { return ybe_residual(x, y, x + y); }

DeterminismReport signature_determinism_check(const std::vector<double>& velocities, int trials,
                                              std::uint64_t seed, double c) {
  const int n = static_cast<int>(velocities.size());
  require(n >= 1, "need at least one velocity");
  if (n > 5) fail(ErrorKind::Limit, "signature determinism check supports at most 5 particles");
  require(trials >= 1, "need at least one trial");
  Rng rng(seed);
  std::map<Permutation, Eigen::MatrixXcd> seen;
  DeterminismReport rep;
  int failures = 0;
  while (rep.draws < trials) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.uniform(0.0, 10.0);
    std::sort(xs.begin(), xs.end());
    TrajectorySet t{xs, velocities, c};
    CollisionSchedule s;
    try {
      t.validate();
      s = schedule_once(t, 1e-12);
    } catch (const Error&) {
      if (++failures > 100 * trials) fail(ErrorKind::Input, "could not draw a generic configuration");
      continue;
    }
    ++rep.draws;
    const auto u = circuit_unitary(schedule_unitary(s, c), n);
    auto it = seen.find(s.signature);
    if (it == seen.end()) {
      seen.emplace(s.signature, u);
      continue;
    }
    const double r = (u - it->second).cwiseAbs().maxCoeff();
    rep.max_residual = std::max(rep.max_residual, r);
  }
  rep.signatures = static_cast<int>(seen.size());
  rep.ok = rep.max_residual <= 1e-10;
  return rep;
}

}  // namespace ballistic
