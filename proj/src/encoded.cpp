#include "ballistic/encoded.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "ballistic/errors.hpp"
#include "ballistic/rng.hpp"

namespace ballistic {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;
}

void EncodedQubitLayout::validate() const {
  require(!pairs.empty(), "layout needs at least one qubit");
  std::set<int> seen;
  for (const auto& [a, b] : pairs) {
    require(a >= 1 && b >= 1 && a <= labels() && b <= labels(), "layout label out of range");
    require(a != b, "a qubit needs two different labels");
    require(seen.insert(a).second && seen.insert(b).second, "layout labels must be disjoint");
  }
}

EncodedQubitLayout default_layout(int qubits) {
  EncodedQubitLayout l;
  for (int q = 0; q < qubits; ++q) l.pairs.emplace_back(2 * q + 1, 2 * q + 2);
  return l;
}

PermState encoded_basis_state(const EncodedQubitLayout& layout, const std::vector<int>& bits) {
  layout.validate();
  require(static_cast<int>(bits.size()) == layout.qubits(), "one bit per qubit expected");
  std::vector<int> img(layout.labels());
  cx phase = 1.0;
  for (int q = 0; q < layout.qubits(); ++q) {
    const auto [a, b] = layout.pairs[q];
    require(bits[q] == 0 || bits[q] == 1, "bits must be 0 or 1");
    img[2 * q] = bits[q] ? b : a;
    img[2 * q + 1] = bits[q] ? a : b;
    if (bits[q]) phase *= cx(0.0, 1.0);
  }
  PermState st = PermState::basis(Permutation(img));
  for (auto& v : st.amplitudes()) v *= phase;
  return st;
}

std::vector<cx> encoded_amplitudes(const PermState& state, const EncodedQubitLayout& layout) {
  layout.validate();
  require(state.n() == layout.labels(), "state size differs from layout");
  const int q = layout.qubits();
  std::vector<cx> out(std::size_t{1} << q);
  for (std::uint64_t idx = 0; idx < out.size(); ++idx) {
    std::vector<int> bits(q);
    for (int b = 0; b < q; ++b) bits[b] = (idx >> (q - 1 - b)) & 1;
    const auto basis = encoded_basis_state(layout, bits);
    cx overlap = 0.0;
    for (std::size_t r = 0; r < basis.dimension(); ++r)
      if (basis[r] != cx{0.0, 0.0}) overlap += std::conj(basis[r]) * state[r];
    out[idx] = overlap;
  }
  return out;
}

std::vector<Gate> pair_x_gates(double theta, int i, int j) {
  require(i >= 1 && j >= 1 && i != j, "pair positions must differ");
  if (i > j) std::swap(i, j);
  std::vector<Gate> gates;
  // walk position j next to i with i L moves, rotate, and walk back with -i L
  for (int m = j - 1; m > i; --m) gates.push_back(Gate::x(kHalfPi, m));
  gates.push_back(Gate::x(theta, i));
  for (int m = i + 1; m < j; ++m) gates.push_back(Gate::x(-kHalfPi, m));
  return gates;
}

std::vector<Gate> controlled_swap(const std::vector<SwapPair>& pairs, int n, int k, int l) {
  require(k >= 1 && l >= 1 && k <= n && l <= n && k != l, "controlled swap positions invalid");
  AngleTable table(n, std::vector<double>(n, 0.0));
  std::set<std::pair<int, int>> listed;
  for (const auto& p : pairs) {
    require(p.a >= 1 && p.b >= 1 && p.a <= n && p.b <= n && p.a != p.b, "swap pair labels invalid");
    const auto key = std::minmax(p.a, p.b);
    if (!listed.insert(key).second) fail(ErrorKind::Input, "a label pair is listed twice");
    const double angle = p.starred ? -kHalfPi : kHalfPi;
    table[p.a - 1][p.b - 1] = angle;
    table[p.b - 1][p.a - 1] = angle;
  }
  const int lo = std::min(k, l), hi = std::max(k, l);
  std::vector<Gate> gates;
  for (int m = hi - 1; m > lo; --m) gates.push_back(Gate::x(kHalfPi, m));
  gates.push_back(Gate::zgate(table, lo));
  for (int m = lo + 1; m < hi; ++m) gates.push_back(Gate::x(-kHalfPi, m));
  return gates;
}

std::vector<Gate> encoded_cnot(const EncodedQubitLayout& layout, int control, int target) {
  layout.validate();
  require(control >= 0 && target >= 0 && control < layout.qubits() && target < layout.qubits() &&
              control != target,
          "cnot qubits invalid");
  const int n = layout.labels();
  const int a = layout.pairs[control].first;
  const auto [x, y] = layout.pairs[target];
  // three positions: the control's second slot and both target slots
  const int s1 = 2 * control + 2, s2 = 2 * target + 1, s3 = 2 * target + 2;
  std::vector<Gate> out;
  auto add = [&](const std::vector<Gate>& g) { out.insert(out.end(), g.begin(), g.end()); };
  add(controlled_swap({{a, x, false}, {a, y, true}}, n, s1, s3));
  add(controlled_swap({{a, x, false}, {a, y, false}}, n, s2, s3));
  add(controlled_swap({{a, x, false}, {a, y, false}}, n, s1, s2));
  return out;
}

Gate encoded_rotation(const EncodedQubitLayout& layout, int qubit, double theta) {
  layout.validate();
  require(qubit >= 0 && qubit < layout.qubits(), "qubit index out of range");
  return Gate::x(theta, 2 * qubit + 1);
}

void ExchangeCircuit::validate() const {
  require(n >= 1, "exchange circuit needs at least one qubit");
  for (const auto& g : gates) {
    require(g.i >= 1 && g.i < g.j && g.j <= n, "exchange gate needs 1 <= i < j <= n");
    require(std::isfinite(g.theta), "exchange angle must be finite");
  }
}

std::uint64_t bits_index(const std::string& bits) {
  std::uint64_t idx = 0;
  for (char c : bits) {
    require(c == '0' || c == '1', "bit strings use 0 and 1 only");
    idx = idx * 2 + static_cast<std::uint64_t>(c == '1');
  }
  return idx;
}

std::string index_bits(std::uint64_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int p = n - 1; p >= 0; --p, index >>= 1) s[static_cast<std::size_t>(p)] = (index & 1) ? '1' : '0';
  return s;
}

std::vector<cx> exchange_simulate_state(const ExchangeCircuit& c, const std::vector<cx>& input) {
  c.validate();
  if (c.n > kMaxExchangeQubits) fail(ErrorKind::Limit, "exchange simulation supports at most 12 qubits");
  require(input.size() == (std::size_t{1} << c.n), "input vector has the wrong length");
  std::vector<cx> st = input;
  for (const auto& g : c.gates) {
    const int bi = c.n - g.i, bj = c.n - g.j;  // bit offsets from the right
    const cx co = std::cos(g.theta), si = cx(0.0, std::sin(g.theta));
    for (std::uint64_t x = 0; x < st.size(); ++x) {
      const int xi = (x >> bi) & 1, xj = (x >> bj) & 1;
      if (xi == xj) {
        st[x] *= co + si;  // E acts as identity on equal bits
        continue;
      }
      const std::uint64_t y = x ^ ((std::uint64_t{1} << bi) | (std::uint64_t{1} << bj));
      if (y < x) continue;
      const cx a = st[x], b = st[y];
      st[x] = co * a + si * b;
      st[y] = si * a + co * b;
    }
  }
  return st;
}

std::vector<double> exchange_simulate(const ExchangeCircuit& c, const std::string& input) {
  require(static_cast<int>(input.size()) == c.n, "input length differs from qubit count");
  std::vector<cx> in(std::size_t{1} << c.n, 0.0);
  in[bits_index(input)] = 1.0;
  const auto out = exchange_simulate_state(c, in);
  std::vector<double> p(out.size());
  for (std::size_t x = 0; x < out.size(); ++x) p[x] = std::norm(out[x]);
  return p;
}

std::string threshold_bits(const std::vector<int>& image, int weight) {
  std::string s;
  for (int v : image) s.push_back(v <= weight ? '1' : '0');
  return s;
}

PermState hamming_encode(const std::string& bits) {
  const int n = static_cast<int>(bits.size());
  require(n >= 1, "empty bit string");
  if (n > kMaxReductionLabels) fail(ErrorKind::Limit, "hamming encoding supports at most 7 labels");
  int weight = 0;
  for (char c : bits) {
    require(c == '0' || c == '1', "bit strings use 0 and 1 only");
    weight += c == '1';
  }
  PermState st(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(factorial(weight) * factorial(n - weight)));
  int img[32];
  for (std::uint64_t r = 0; r < st.dimension(); ++r) {
    unrank_into(n, r, img);
    if (threshold_bits(std::vector<int>(img, img + n), weight) == bits) st[r] = amp;
  }
  return st;
}

std::vector<Gate> exchange_mirror(const ExchangeCircuit& c) {
  c.validate();
  std::vector<Gate> gates;
  for (const auto& g : c.gates) {
    const auto part = pair_x_gates(g.theta, g.i, g.j);
    gates.insert(gates.end(), part.begin(), part.end());
  }
  return gates;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  require(p.size() == q.size(), "distributions differ in support size");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

ReductionResult exchange_reduction(const ExchangeCircuit& c, const std::vector<cx>& input, int weight) {
  c.validate();
  if (c.n > kMaxReductionLabels) fail(ErrorKind::Limit, "reduction supports at most 7 labels");
  require(input.size() == (std::size_t{1} << c.n), "input vector has the wrong length");
  PermState st(c.n);
  for (std::uint64_t x = 0; x < input.size(); ++x) {
    if (input[x] == cx{0.0, 0.0}) continue;
    const auto bits = index_bits(x, c.n);
    int w = 0;
    for (char ch : bits) w += ch == '1';
    if (w != weight) fail(ErrorKind::Input, "input leaves the requested Hamming weight sector");
    const auto enc = hamming_encode(bits);
    for (std::size_t r = 0; r < st.dimension(); ++r) st[r] += input[x] * enc[r];
  }
  apply_circuit(st, exchange_mirror(c));
  ReductionResult res;
  res.reduced.assign(input.size(), 0.0);
  int img[32];
  for (std::uint64_t r = 0; r < st.dimension(); ++r) {
    const double w = std::norm(st[r]);
    if (w == 0.0) continue;
    unrank_into(c.n, r, img);
    res.reduced[bits_index(threshold_bits(std::vector<int>(img, img + c.n), weight))] += w;
  }
  const auto out = exchange_simulate_state(c, input);
  res.direct.resize(out.size());
  for (std::size_t x = 0; x < out.size(); ++x) res.direct[x] = std::norm(out[x]);
  res.tv = total_variation(res.reduced, res.direct);
  return res;
}

ReductionResult exchange_reduction(const ExchangeCircuit& c, const std::string& input) {
  require(static_cast<int>(input.size()) == c.n, "input length differs from qubit count");
  std::vector<cx> in(std::size_t{1} << c.n, 0.0);
  in[bits_index(input)] = 1.0;
  int w = 0;
  for (char ch : input) w += ch == '1';
  return exchange_reduction(c, in, w);
}

std::string exchange_reduction_sample(const ExchangeCircuit& c, const std::string& input,
                                      std::uint64_t seed) {
  require(static_cast<int>(input.size()) == c.n, "input length differs from qubit count");
  int w = 0;
  for (char ch : input) w += ch == '1';
  PermState st = hamming_encode(input);
  apply_circuit(st, exchange_mirror(c));
  const auto s = sample_measurement(st, seed);
  return threshold_bits(s.image(), w);
}

LogicalQubit logical_three_spin() {
  LogicalQubit q{};
  const double r2 = 1.0 / std::sqrt(2.0), r6 = 1.0 / std::sqrt(6.0);
  q.zero[0b010] = r2;
  q.zero[0b100] = -r2;
  q.one[0b001] = 2.0 * r6;
  q.one[0b010] = -r6;
  q.one[0b100] = -r6;
  return q;
}

double third_bit_zero_probability(const std::array<cx, 8>& state) {
  double p = 0.0;
  for (int x = 0; x < 8; ++x)
    if ((x & 1) == 0) p += std::norm(state[x]);
  return p;
}

int distinguish(const std::array<cx, 8>& state, int copies, std::uint64_t seed) {
  require(copies >= 1, "need at least one copy");
  Rng rng(seed);
  const double p0 = third_bit_zero_probability(state);
  for (int c = 0; c < copies; ++c)
    if (!(rng.uniform() < p0)) return 1;
  return 0;
}

double distinguish_error_rate(int copies, int trials, std::uint64_t seed) {
  require(trials >= 1, "need at least one trial");
  const auto q = logical_three_spin();
  Rng rng(seed);
  int wrong = 0;
  for (int t = 0; t < trials; ++t)
    if (distinguish(q.one, copies, rng()) != 1) ++wrong;
  return static_cast<double>(wrong) / trials;
}

}  // namespace ballistic
