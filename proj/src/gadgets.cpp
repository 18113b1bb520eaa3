#include "ballistic/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_map>

#include "ballistic/errors.hpp"
#include "ballistic/scattering.hpp"

namespace ballistic {

namespace {

constexpr double kPi = std::numbers::pi;

// Projects in place without renormalizing; returns the kept squared norm.
double project(PermState& st, int position, int label) {
  int img[32];
  double kept = 0.0;
  for (std::uint64_t r = 0; r < st.dimension(); ++r) {
    unrank_into(st.n(), r, img);
    if (img[position - 1] == label) kept += std::norm(st[r]);
    else st[r] = 0.0;
  }
  return kept;
}

Permutation perm_of(std::initializer_list<int> img) { return Permutation(std::vector<int>(img)); }

}  // namespace

PostselectResult postselect(const PermState& state, const MeasurementEvent& ev) {
  require(ev.position >= 1 && ev.position <= state.n(), "measurement position out of range");
  require(ev.label >= 1 && ev.label <= state.n(), "measurement label out of range");
  const double total = state.norm();
  require(std::abs(total - 1.0) <= 1e-10, "postselection needs a normalized state");
  PostselectResult out{state, 0.0};
  out.success_probability = project(out.state, ev.position, ev.label);
  if (out.success_probability < kMinPostselectProbability)
    fail(ErrorKind::ZeroProbability, "postselection outcome has vanishing probability");
  out.state.normalize();
  return out;
}

std::vector<Gate> collision_triple(double z1, double z2) {
  return {Gate::h(z1, 1), Gate::h(z1 + z2, 2), Gate::h(z2, 1)};
}

PermState pij_closed_form(int label, int position, double z1, double z2) {
  require(label >= 1 && label <= 3 && position >= 1 && position <= 3, "P_ij indices must be in 1..3");
  const double s = z1 + z2;
  const double d = 1.0 - z1 * z2;
  const cx i1(0.0, 1.0);
  PermState st(3);
  auto put = [&](std::initializer_list<int> p, cx a) { st[rank(perm_of(p))] += a; };
  switch (label * 10 + position) {
    case 11: put({1, 2, 3}, d); put({1, 3, 2}, i1 * s); break;
    case 12: put({2, 1, 3}, 1.0); put({3, 1, 2}, i1 * z2); break;
    case 13: put({2, 3, 1}, 1.0); put({3, 2, 1}, i1 * z2); break;
    case 21: put({2, 1, 3}, 1.0); put({2, 3, 1}, i1 * z1); break;
    case 22: put({1, 2, 3}, d); put({3, 2, 1}, -i1 * z1 * z2 * s); break;
    case 23: put({1, 3, 2}, 1.0); put({3, 1, 2}, i1 * z2); break;
    case 31: put({3, 1, 2}, 1.0); put({3, 2, 1}, i1 * z1); break;
    case 32: put({1, 3, 2}, 1.0); put({2, 3, 1}, i1 * z1); break;
    case 33: put({1, 2, 3}, d); put({2, 1, 3}, i1 * s); break;
  }
  st.normalize();
  return st;
}

// ---------------------------------------------------------------------------
// Sparse evolution for schedules whose label count exceeds dense storage.

namespace {

using Key = std::string;  // key[p] = label at position p+1
using Sparse = std::unordered_map<Key, cx>;

int label_at(const Key& k, int p) { return static_cast<unsigned char>(k[p - 1]); }

void sparse_gate(Sparse& st, const Gate& g, int n) {
  validate_gate(g, n);
  Sparse out;
  out.reserve(st.size() * 2);
  for (const auto& [key, a] : st) {
    Key partner = key;
    double t = 0.0;
    switch (g.kind) {
      case GateKind::X: t = g.theta; break;
      case GateKind::H: t = std::atan(g.z); break;
      case GateKind::Y: t = g.theta; break;
      case GateKind::Z: t = g.table[label_at(key, g.k) - 1][label_at(key, g.k + 1) - 1]; break;
      case GateKind::W: {
        const auto pa = key.find(static_cast<char>(g.k));
        const auto pb = key.find(static_cast<char>(g.k + 1));
        t = g.table[pa][pb];
        break;
      }
    }
    if (g.kind == GateKind::Y || g.kind == GateKind::W) {
      for (auto& ch : partner) {
        if (ch == static_cast<char>(g.k)) ch = static_cast<char>(g.k + 1);
        else if (ch == static_cast<char>(g.k + 1)) ch = static_cast<char>(g.k);
      }
    } else {
      std::swap(partner[g.k - 1], partner[g.k]);
    }
    out[key] += g.phase * std::cos(t) * a;
    out[partner] += g.phase * cx(0.0, std::sin(t)) * a;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (std::norm(it->second) < 1e-300) it = out.erase(it);
    else ++it;
  }
  st.swap(out);
}

double sparse_norm2(const Sparse& st) {
  double s = 0.0;
  for (const auto& kv : st) s += std::norm(kv.second);
  return s;
}

double sparse_postselect(Sparse& st, int position, int label) {
  const double before = sparse_norm2(st);
  for (auto it = st.begin(); it != st.end();) {
    if (label_at(it->first, position) != label) it = st.erase(it);
    else ++it;
  }
  const double p = sparse_norm2(st) / before;
  if (p < kMinPostselectProbability) {
    std::ostringstream os;
    os << "postselection of label " << label << " at position " << position
       << " has vanishing probability " << p;
    fail(ErrorKind::ZeroProbability, os.str());
  }
  const double scale = 1.0 / std::sqrt(p * before);
  for (auto& kv : st) kv.second *= scale;
  return p;
}

}  // namespace

void GadgetSchedule::validate() const {
  require(n_black >= 1, "schedule needs at least one black label");
  require(static_cast<int>(initial.size()) == n_total, "schedule layout size mismatch");
  require(n_total <= 120, "schedule has too many labels");
  require(static_cast<int>(final_black_positions.size()) == n_black, "missing final black positions");
  std::vector<char> frozen(n_total + 1, 0);
  for (const auto& ev : events) {
    if (ev.kind == ScheduleEvent::Kind::Gate) {
      validate_gate(ev.gate, n_total);
      if (ev.gate.kind == GateKind::Y || ev.gate.kind == GateKind::W)
        fail(ErrorKind::Input, "schedules accept position-swap gates only");
      if (frozen[ev.gate.k] || frozen[ev.gate.k + 1]) {
        std::ostringstream os;
        os << "gate at positions (" << ev.gate.k << "," << ev.gate.k + 1
           << ") touches a demolished particle";
        fail(ErrorKind::Input, os.str());
      }
    } else {
      const auto& m = ev.measure;
      require(m.position >= 1 && m.position <= n_total, "measurement position out of range");
      require(m.label >= 1 && m.label <= n_total, "measurement label out of range");
      if (m.mode == MeasureMode::Demolition) frozen[m.position] = 1;
    }
  }
}

RunResult run_schedule(const GadgetSchedule& sched, const PermState& input) {
  sched.validate();
  require(input.n() == sched.n_black, "input state size differs from the black label count");
  require(std::abs(input.norm() - 1.0) <= 1e-10, "input state must be normalized");
  const int n = sched.n_total;
  Sparse st;
  int img[32];
  for (std::uint64_t r = 0; r < input.dimension(); ++r) {
    if (input[r] == cx{0.0, 0.0}) continue;
    unrank_into(input.n(), r, img);
    Key key(static_cast<std::size_t>(n), '\0');
    for (int p = 0; p < n; ++p) {
      const int v = sched.initial[p];
      key[p] = static_cast<char>(v > 0 ? v : img[-v - 1]);
    }
    st[key] += input[r];
  }
  RunResult res{PermState(sched.n_black), {}, 1.0, {}};
  for (const auto& ev : sched.events) {
    if (ev.kind == ScheduleEvent::Kind::Gate) {
      sparse_gate(st, ev.gate, n);
    } else {
      const double p = sparse_postselect(st, ev.measure.position, ev.measure.label);
      res.step_probabilities.push_back(p);
      res.success_probability *= p;
    }
  }
  // Ancillas must sit in one configuration so the black state is pure.
  std::vector<char> is_black(n + 1, 0);
  for (int p : sched.final_black_positions) is_black[p] = 1;
  const Key* reference = nullptr;
  std::vector<int> black_img(sched.n_black);
  for (const auto& [key, a] : st) {
    if (reference) {
      for (int p = 1; p <= n; ++p)
        if (!is_black[p] && key[p - 1] != (*reference)[p - 1])
          fail(ErrorKind::Check, "ancillas finished in more than one configuration");
    }
    reference = &key;
    for (int b = 0; b < sched.n_black; ++b) {
      const int lab = label_at(key, sched.final_black_positions[b]);
      if (lab < 1 || lab > sched.n_black) fail(ErrorKind::Check, "ancilla left in a black slot");
      black_img[b] = lab;
    }
    res.output[rank_of(black_img.data(), sched.n_black)] += a;
  }
  res.output.normalize();
  res.distribution = measure_distribution(res.output);
  return res;
}

// ---------------------------------------------------------------------------
// Compilation of X circuits into postselected schedules.

namespace {

double wrap_half_turn(double theta) {
  // representative of theta modulo pi in (-pi/2, pi/2]
  double t = std::fmod(theta, kPi);
  if (t <= -kPi / 2) t += kPi;
  if (t > kPi / 2) t -= kPi;
  return t;
}

// Positive rotation angles whose sum equals theta modulo pi.
std::vector<double> positive_pieces(double theta) {
  const double t = wrap_half_turn(theta);
  if (std::abs(t) < 1e-15) return {};
  if (t > 0.0 && t < kPi / 2 - 1e-6) return {t};
  if (t > 0.0) return {t / 2, t / 2};
  const double lifted = t + kPi;  // in (pi/2, pi)
  return {lifted / 3, lifted / 3, lifted / 3};
}

class Builder {
 public:
  Builder(int n, int gadgets) : n_(n), g_(gadgets) {
    s_.n_black = n;
    s_.n_total = n + 2 * gadgets;
    occ_.resize(s_.n_total);
    for (int g = 1; g <= gadgets; ++g) {
      occ_[gadgets - g] = n + g;                 // left ancilla of gadget g
      occ_[gadgets + n + g - 1] = n + gadgets + g;  // right ancilla of gadget g
      s_.ancilla_labels.push_back(n + g);
    }
    for (int g = 1; g <= gadgets; ++g) s_.ancilla_labels.push_back(n + gadgets + g);
    for (int b = 1; b <= n; ++b) occ_[gadgets + b - 1] = -b;
    s_.initial = occ_;
    frozen_.assign(s_.n_total + 2, 0);
    velocity_.assign(n + 1, 0.0);
  }

  int left_label(int g) const { return n_ + g; }
  int right_label(int g) const { return n_ + g_ + g; }

  int pos_of(int id) const {
    for (int p = 0; p < s_.n_total; ++p)
      if (occ_[p] == id) return p + 1;
    fail(ErrorKind::Input, "compiler lost track of a particle");
  }

  void gate(const Gate& g) {
    ScheduleEvent ev;
    ev.kind = ScheduleEvent::Kind::Gate;
    ev.gate = g;
    s_.events.push_back(ev);
  }

  void measure(int position, int label, MeasureMode mode) {
    ScheduleEvent ev;
    ev.kind = ScheduleEvent::Kind::Measure;
    ev.measure = {position, label, mode};
    s_.events.push_back(ev);
  }

  // Ancilla passes its neighbour in direction dir; keep only the transmitted branch.
  void transit(int label, int dir, double rapidity) {
    const int q = pos_of(label);
    const int t = q + dir;
    gate(Gate::h(rapidity, std::min(q, t)));
    measure(t, label, MeasureMode::Nondemolition);
    std::swap(occ_[q - 1], occ_[t - 1]);
  }

  // Ancilla bounces off its neighbour in direction dir; keep the reflected branch.
  void reflect(int label, int dir, double rapidity) {
    const int q = pos_of(label);
    gate(Gate::h(rapidity, std::min(q, q + dir)));
    measure(q, label, MeasureMode::Nondemolition);
  }

  // Move an ancilla outward until it meets the frozen region, then demolish it.
  void retire(int label, int dir, double rapidity) {
    for (;;) {
      const int q = pos_of(label);
      const int t = q + dir;
      if (t < 1 || t > s_.n_total || frozen_[t]) break;
      transit(label, dir, rapidity);
    }
    const int q = pos_of(label);
    measure(q, label, MeasureMode::Demolition);
    frozen_[q] = 1;
  }

  // Carry an ancilla inward until it is adjacent to black slot b.
  void approach(int label, int dir, int black, double rapidity) {
    for (;;) {
      const int q = pos_of(label);
      if (occ_[q + dir - 1] == -black) break;
      transit(label, dir, rapidity);
    }
  }

  void stationary_gadget(int g, int k, double z) {
    const double u = z / 2, w = z / 2;
    const int a = left_label(g), b = right_label(g);
    approach(a, +1, k, u);
    reflect(a, +1, u);
    approach(b, -1, k + 1, w);
    reflect(b, -1, w);
    gate(Gate::h(u + w, pos_of(-k)));
    reflect(a, +1, w);   // left black, now moving at -w, stops against a
    reflect(b, -1, u);   // right black, moving at +u, stops against b
    retire(a, -1, w);
    retire(b, +1, u);
  }

  double ferry_speed() const {
    double m = 0.0;
    for (int b = 1; b <= n_; ++b) m = std::max(m, std::abs(velocity_[b]));
    return m + 1.0;
  }

  void trajectory_gadget(int g, int k, double theta) {
    const double v1 = velocity_[k], v2 = velocity_[k + 1];
    const double z1 = v1 - v2;
    // Gates on one pair telescope: the outgoing difference is -z2, so the
    // angle left over here cannot be moved to a later gadget on this pair.
    const double rest = wrap_half_turn(theta - std::atan(z1));
    if (std::cos(rest) < 1e-9)
      fail(ErrorKind::Input, "trajectory scheme needs an unbounded velocity for this angle; use the stationary scheme");
    const double z2 = std::tan(rest);
    const double va = v2 + (z1 + z2) / 2, vb = v2 + (z1 - z2) / 2;
    const int a = left_label(g), b = right_label(g);
    const double f = ferry_speed();
    approach(a, +1, k, f);
    approach(b, -1, k + 1, f);
    const int p = pos_of(a);
    gate(Gate::h(v1 - v2, p + 1));
    gate(Gate::h(va - v2, p));
    gate(Gate::h(v1 - vb, p + 2));
    gate(Gate::h(va - vb, p + 1));
    measure(p, a, MeasureMode::Nondemolition);
    measure(p + 3, b, MeasureMode::Nondemolition);
    velocity_[k] = vb;
    velocity_[k + 1] = va;
    retire(a, -1, f);
    retire(b, +1, f);
  }

  GadgetSchedule finish() {
    for (int b = 1; b <= n_; ++b) s_.final_black_positions.push_back(pos_of(-b));
    s_.validate();
    return s_;
  }

 private:
  int n_, g_;
  GadgetSchedule s_;
  std::vector<int> occ_;
  std::vector<char> frozen_;
  std::vector<double> velocity_;
};

}  // namespace

GadgetSchedule compile_x_circuit(const std::vector<Gate>& gates, int n, CompileScheme scheme) {
  require(n >= 1, "circuit needs at least one label");
  std::vector<std::pair<int, double>> pieces;  // (k, positive angle) for stationary
  for (const auto& g : gates) {
    require(g.kind == GateKind::X || g.kind == GateKind::H, "only X circuits can be compiled");
    require(g.k >= 1 && g.k <= n - 1, "gate position k out of range");
    const double theta = g.kind == GateKind::X ? g.theta : std::atan(g.z);
    if (scheme == CompileScheme::Stationary) {
      for (double t : positive_pieces(theta)) pieces.emplace_back(g.k, t);
    } else {
      pieces.emplace_back(g.k, theta);
    }
  }
  if (scheme == CompileScheme::Stationary) {
    Builder b(n, static_cast<int>(pieces.size()));
    int g = 1;
    for (const auto& [k, t] : pieces) b.stationary_gadget(g++, k, std::tan(t));
    return b.finish();
  }
  std::erase_if(pieces, [](const auto& p) { return std::abs(wrap_half_turn(p.second)) < 1e-15; });
  Builder b(n, static_cast<int>(pieces.size()));
  int g = 1;
  for (const auto& [k, t] : pieces) b.trajectory_gadget(g++, k, t);
  return b.finish();
}

// ---------------------------------------------------------------------------

Eigen::Matrix2cd pair_rotation(double theta) {
  Eigen::Matrix2cd m;
  m << std::cos(theta), cx(0.0, std::sin(theta)), cx(0.0, std::sin(theta)), std::cos(theta);
  return m;
}

double phase_fidelity(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return std::abs((a.adjoint() * b).trace()) / 2.0;
}

namespace {

// Linear map of a schedule on a dense state restricted to two basis inputs.
struct RestrictedMap {
  Eigen::Matrix2cd matrix;  // columns rescaled so the first has unit norm
  double success = 1.0;     // product of stepwise probabilities for the first input
};

// Both inputs are evolved together; after every projection the pair is
// rescaled by the first input's survival so long runs do not underflow.
RestrictedMap restricted_map(const std::vector<ScheduleEvent>& events, const Permutation& in0,
                             const Permutation& in1) {
  PermState st[2] = {PermState::basis(in0), PermState::basis(in1)};
  RestrictedMap out;
  for (const auto& ev : events) {
    if (ev.kind == ScheduleEvent::Kind::Gate) {
      for (auto& s : st) apply_gate(s, ev.gate);
      continue;
    }
    const double before = st[0].norm();
    for (auto& s : st) project(s, ev.measure.position, ev.measure.label);
    const double after = st[0].norm();
    const double p = before > 0 ? (after * after) / (before * before) : 0.0;
    if (p < kMinPostselectProbability)
      fail(ErrorKind::ZeroProbability, "gadget postselection has vanishing probability");
    out.success *= p;
    for (auto& s : st)
      for (auto& a : s.amplitudes()) a /= after;
  }
  const Permutation ins[2] = {in0, in1};
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 2; ++r) out.matrix(r, c) = st[c].amplitude(ins[r]);
  return out;
}

ScheduleEvent gate_event(const Gate& g) {
  ScheduleEvent ev;
  ev.kind = ScheduleEvent::Kind::Gate;
  ev.gate = g;
  return ev;
}

ScheduleEvent measure_event(int position, int label) {
  ScheduleEvent ev;
  ev.kind = ScheduleEvent::Kind::Measure;
  ev.measure = {position, label, MeasureMode::Nondemolition};
  return ev;
}

EffectiveGate finish_effective(const RestrictedMap& raw, double target) {
  EffectiveGate e;
  // the first column already has unit norm unless the map leaks out of the pair
  const double kept = raw.matrix.col(0).squaredNorm();
  if (kept < kMinPostselectProbability)
    fail(ErrorKind::ZeroProbability, "gadget output leaves the black pair");
  e.success_probability = raw.success * kept;
  e.matrix = raw.matrix / std::sqrt(kept);
  e.target_angle = target;
  e.fidelity = phase_fidelity(e.matrix, pair_rotation(target));
  return e;
}

}  // namespace

EffectiveGate four_particle_gadget_velocities(double v1, double v2, double va, double vb) {
  for (double v : {v1, v2, va, vb}) require(std::isfinite(v), "gadget velocities must be finite");
  // labels: blacks 1, 2; ancillas 3 (left) and 4 (right)
  const std::vector<ScheduleEvent> events = {
      gate_event(Gate::h(v1 - v2, 2)), gate_event(Gate::h(va - v2, 1)),
      gate_event(Gate::h(v1 - vb, 3)), gate_event(Gate::h(va - vb, 2)),
      measure_event(1, 3),             measure_event(4, 4)};
  const auto raw = restricted_map(events, perm_of({3, 1, 2, 4}), perm_of({3, 2, 1, 4}));
  auto e = finish_effective(raw, std::atan(v1 - v2) + std::atan(va - vb));
  e.out_velocity_left = vb;
  e.out_velocity_right = va;
  return e;
}

EffectiveGate four_particle_gadget(double z1, double z2) {
  require(std::isfinite(z1) && std::isfinite(z2), "rapidities must be finite");
  return four_particle_gadget_velocities(z1, 0.0, (z1 + z2) / 2, (z1 - z2) / 2);
}

NavigationResult navigation_gadget(double v1, double va, double c) {
  require(c > 0.0, "interaction strength c must be positive");
  const double rel = va - v1;
  if (!(rel > 0.0)) fail(ErrorKind::Input, "ancilla never reaches the particle: no collision");
  // ancilla label 2 on the left, particle label 1 on the right
  PermState st = PermState::basis(perm_of({2, 1}));
  apply_gate(st, delta_gate(va, v1, c, 1));
  NavigationResult out;
  auto ps = postselect(st, {1, 2, MeasureMode::Nondemolition});
  out.success_probability = ps.success_probability;
  out.label_preserved = std::abs(ps.state.amplitude(perm_of({2, 1}))) > 1.0 - 1e-12;
  out.outgoing_velocity = va;
  return out;
}

double three_particle_angle(double z1, double z2) {
  const double s = z1 + z2;
  return std::atan(-s / (1.0 - z1 * z2 - z1 * z2 * s * s));
}

EffectiveGate three_particle_nondemolition(double z1, double z2, int iterations) {
  require(iterations >= 0, "iteration count must be nonnegative");
  require(std::isfinite(z1) && std::isfinite(z2), "rapidities must be finite");
  // labels: x = 1, ancilla = 2, y = 3
  std::vector<ScheduleEvent> round;
  for (const auto& g : collision_triple(z1, z2)) round.push_back(gate_event(g));
  round.push_back(measure_event(2, 2));
  round.push_back(gate_event(Gate::h(-z2, 1)));
  round.push_back(measure_event(1, 2));
  round.push_back(gate_event(Gate::h(-(z1 + z2), 2)));
  round.push_back(gate_event(Gate::h(-z1, 1)));
  round.push_back(measure_event(2, 2));
  std::vector<ScheduleEvent> all;
  for (int t = 0; t < iterations; ++t) all.insert(all.end(), round.begin(), round.end());
  const auto raw = restricted_map(all, perm_of({1, 2, 3}), perm_of({3, 2, 1}));
  return finish_effective(raw, iterations * three_particle_angle(z1, z2));
}

}  // namespace ballistic
