#include "ballistic/selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ballistic/classical.hpp"
#include "ballistic/encoded.hpp"
#include "ballistic/errors.hpp"
#include "ballistic/gadgets.hpp"
#include "ballistic/perm.hpp"
#include "ballistic/qsim.hpp"
#include "ballistic/rep_theory.hpp"
#include "ballistic/rng.hpp"
#include "ballistic/scattering.hpp"

namespace ballistic {

namespace {

constexpr double kPi = std::numbers::pi;

const char* const kTitles[kCriterionCount] = {
    "quantum Yang-Baxter identity on 1000 random rapidity pairs",
    "classical Yang-Baxter identity on 1000 random nonnegative pairs",
    "trace equals n! times the identity amplitude, 30-gate circuits, n = 3,4,5",
    "column permutation and X/Y duality on 50 random circuits, n = 4",
    "collision diagrams with equal signature give equal unitaries",
    "nine label-position postselections match their closed forms",
    "four-particle and three-particle gadgets realize their rotations",
    "compiled postselected schedules reproduce direct simulation",
    "representation suite",
    "exchange reduction and encoded CNOT truth table",
    "classical swap model oracles agree",
    "code locality under adjacent swaps and codec bijectivity"};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<Gate> random_x_circuit(Rng& rng, int n, int m) {
  std::vector<Gate> g;
  for (int t = 0; t < m; ++t) g.push_back(Gate::x(rng.uniform(-kPi, kPi), rng.integer(1, n - 1)));
  return g;
}

SwapProgram random_program(Rng& rng, int n, int m, bool adjacent) {
  SwapProgram p;
  p.n = n;
  for (int t = 0; t < m; ++t) {
    int i, j;
    if (adjacent) {
      i = rng.integer(1, n - 1);
      j = i + 1;
    } else {
      i = rng.integer(1, n - 1);
      j = rng.integer(i + 1, n);
    }
    // mix exact 0/1 and generic probabilities
    const int kind = rng.integer(0, 9);
    const double prob = kind == 0 ? 0.0 : kind == 1 ? 1.0 : rng.uniform();
    p.steps.push_back({i, j, prob});
  }
  return p;
}

// Largest amplitude difference after aligning the global phase.
double phase_aligned_distance(const PermState& a, const PermState& b) {
  cx overlap = 0.0;
  for (std::size_t r = 0; r < a.dimension(); ++r) overlap += std::conj(b[r]) * a[r];
  const cx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cx(1.0, 0.0);
  double worst = 0.0;
  for (std::size_t r = 0; r < a.dimension(); ++r) worst = std::max(worst, std::abs(a[r] - phase * b[r]));
  return worst;
}

CriterionResult c1(Rng& rng) {
  CriterionResult r{1, kTitles[1 - 1], false, "", 0};
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) worst = std::max(worst, ybe_check(rng.uniform(-10, 10), rng.uniform(-10, 10)));
  r.pass = worst < 1e-12;
  r.detail = "max residual " + sci(worst) + " (limit 1e-12)";
  return r;
}

CriterionResult c2(Rng& rng) {
  CriterionResult r{2, kTitles[2 - 1], false, "", 0};
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t)
    worst = std::max(worst, classical_yb_residual(classical_yb_params(rng.uniform(0, 10), rng.uniform(0, 10))));
  r.pass = worst <= 1e-12;
  r.detail = "max entrywise residual " + sci(worst) + " (limit 1e-12)";
  return r;
}

CriterionResult c3(Rng& rng) {
  CriterionResult r{3, kTitles[3 - 1], false, "", 0};
  double worst = 0.0;
  bool ok = true;
  for (int n = 3; n <= 5; ++n)
    for (int c = 0; c < 50; ++c) {
      const auto t = trace_identity_check(random_x_circuit(rng, n, 30), n);
      const double rel = t.residual / static_cast<double>(factorial(n));
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-9;
    }
  r.pass = ok;
  r.detail = "max relative error " + sci(worst) + " over 150 circuits (limit 1e-9)";
  return r;
}

CriterionResult c4(Rng& rng) {
  CriterionResult r{4, kTitles[4 - 1], false, "", 0};
  double col = 0.0, dual = 0.0;
  for (int c = 0; c < 50; ++c) {
    const auto g = random_x_circuit(rng, 4, 20);
    col = std::max(col, column_permutation_check(g, 4).residual);
    dual = std::max(dual, xy_duality_check(g, 4).residual);
  }
  r.pass = col <= 1e-12 && dual <= 1e-12;
  r.detail = "column residual " + sci(col) + ", duality residual " + sci(dual) + " (limit 1e-12)";
  return r;
}

CriterionResult c5(Rng& rng) {
  CriterionResult r{5, kTitles[5 - 1], false, "", 0};
  double worst = 0.0;
  bool ok = true;
  const std::vector<std::vector<double>> velocity_sets = {
      {2.0, 0.0, -2.0}, {1.0, -0.5, 0.25}, {1.5, 0.5, -0.5, -1.5}, {0.3, 2.0, -1.0, 0.7}};
  for (const auto& v : velocity_sets) {
    const auto rep = signature_determinism_check(v, 100, rng());
    worst = std::max(worst, rep.max_residual);
    ok = ok && rep.ok;
  }
  // three balls at speeds u, 0, -u with the middle one near either side
  const double u = 1.0;
  const auto near_left = build_schedule({{0.0, 0.2, 2.0}, {u, 0.0, -u}, 1.0});
  const auto near_right = build_schedule({{0.0, 1.8, 2.0}, {u, 0.0, -u}, 1.0});
  const bool orders = near_left.events.size() == 3 && near_right.events.size() == 3 &&
                      near_left.events[0].k == 1 && near_left.events[1].k == 2 && near_left.events[2].k == 1 &&
                      near_right.events[0].k == 2 && near_right.events[1].k == 1 && near_right.events[2].k == 2;
  const double diff = (circuit_unitary(schedule_unitary(near_left, 1.0), 3) -
                       circuit_unitary(schedule_unitary(near_right, 1.0), 3))
                          .cwiseAbs()
                          .maxCoeff();
  worst = std::max(worst, diff);
  r.pass = ok && orders && diff <= 1e-10;
  r.detail = "max unitary difference " + sci(worst) + " (limit 1e-10); three-ball orders " +
             (orders ? "as expected" : "WRONG");
  return r;
}

CriterionResult c6(Rng& rng) {
  CriterionResult r{6, kTitles[6 - 1], false, "", 0};
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double z1 = rng.uniform(-3, 3), z2 = rng.uniform(-3, 3);
    PermState st = PermState::basis(Permutation::identity(3));
    apply_circuit(st, collision_triple(z1, z2));
    for (int label = 1; label <= 3; ++label)
      for (int pos = 1; pos <= 3; ++pos) {
        const auto got = postselect(st, {pos, label, MeasureMode::Nondemolition});
        worst = std::max(worst, phase_aligned_distance(got.state, pij_closed_form(label, pos, z1, z2)));
      }
  }
  r.pass = worst <= 1e-12;
  r.detail = "max amplitude difference " + sci(worst) + " over 900 cases (limit 1e-12)";
  return r;
}

CriterionResult c7(Rng& rng) {
  CriterionResult r{7, kTitles[7 - 1], false, "", 0};
  double four = 0.0, three = 0.0, square = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto e = four_particle_gadget(rng.uniform(-3, 3), rng.uniform(-3, 3));
    four = std::max(four, 1.0 - e.fidelity);
  }
  for (int t = 0; t < 20; ++t) {
    const double z1 = rng.uniform(-1.5, 1.5), z2 = rng.uniform(-1.5, 1.5);
    // fidelity is taken against the rotation by t times the closed-form angle
    for (int iters = 0; iters <= 8; ++iters)
      three = std::max(three, 1.0 - three_particle_nondemolition(z1, z2, iters).fidelity);
    const auto one = three_particle_nondemolition(z1, z2, 1).matrix;
    const auto two = three_particle_nondemolition(z1, z2, 2).matrix;
    square = std::max(square, 1.0 - phase_fidelity(one * one, two));
  }
  r.pass = four <= 1e-10 && three <= 1e-9 && square <= 1e-9;
  r.detail = "four-particle infidelity " + sci(four) + " (limit 1e-10), three-particle infidelity for t <= 8 " +
             sci(three) + " (limit 1e-9), two rounds vs one squared " + sci(square);
  return r;
}

CriterionResult c8(Rng& rng) {
  CriterionResult r{8, kTitles[8 - 1], false, "", 0};
  double worst = 0.0;
  double smallest = 1.0;
  auto check = [&](const std::vector<Gate>& g, int n, const PermState& input) {
    const auto sched = compile_x_circuit(g, n);
    const auto run = run_schedule(sched, input);
    PermState direct = input;
    apply_circuit(direct, g);
    const auto d = measure_distribution(direct);
    worst = std::max(worst, total_variation(run.distribution.weights, d.weights));
    smallest = std::min(smallest, run.success_probability);
  };
  for (int c = 0; c < 50; ++c) {
    const int n = rng.integer(2, 4);
    const auto g = random_x_circuit(rng, n, rng.integer(1, 5));
    PermState in(n);
    for (auto& a : in.amplitudes()) a = cx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    in.normalize();
    check(g, n, in);
  }
  // three gates on four wires: (1,2), (3,4), then the middle pair
  const std::vector<Gate> brick = {Gate::x(0.7, 1), Gate::x(-0.4, 3), Gate::x(1.1, 2)};
  check(brick, 4, PermState::basis(Permutation::identity(4)));
  r.pass = worst <= 1e-9;
  r.detail = "max total variation " + sci(worst) + " over 51 circuits (limit 1e-9); smallest success " +
             sci(smallest);
  return r;
}

CriterionResult c9(Rng&) {
  CriterionResult r{9, kTitles[9 - 1], false, "", 0};
  std::ostringstream why;
  bool ok = true;
  // dimensions
  bool dims = true;
  for (int n = 1; n <= 9; ++n) {
    std::uint64_t s = 0;
    for (const auto& p : partitions(n)) s += hook_dimension(p) * hook_dimension(p);
    dims = dims && s == factorial(n);
  }
  why << "sum f^2 = n! " << (dims ? "ok" : "FAIL");
  ok = ok && dims;
  // relations
  double rel = 0.0;
  for (int n = 1; n <= 7; ++n)
    for (const auto& p : partitions(n)) {
      const auto rep = verify_irrep_relations(p);
      rel = std::max({rel, rep.involution, rep.symmetry, rep.commuting, rep.braid});
    }
  why << "; relations " << sci(rel) << (rel <= 1e-12 ? " ok" : " FAIL");
  ok = ok && rel <= 1e-12;
  // the two three-box matrices
  const auto l1 = yy_matrix({2, 1}, 1), l2 = yy_matrix({2, 1}, 2);
  Eigen::Matrix2d e1, e2;
  e1 << 1, 0, 0, -1;
  e2 << -0.5, std::sqrt(3.0) / 2, std::sqrt(3.0) / 2, 0.5;
  const double mats = std::max((l1 - e1).cwiseAbs().maxCoeff(), (l2 - e2).cwiseAbs().maxCoeff());
  why << "; (2,1) matrices " << sci(mats) << (mats <= 1e-10 ? " ok" : " FAIL");
  ok = ok && mats <= 1e-10;
  // commutator combinations against the Pauli matrices
  const Eigen::Matrix2cd a = l1.cast<cx>(), b = l2.cast<cx>();
  const Eigen::Matrix2cd ab = a * b - b * a;
  const Eigen::Matrix2cd aab = a * ab - ab * a;
  const Eigen::Matrix2cd sx = aab / (2.0 * std::sqrt(3.0));
  const Eigen::Matrix2cd sy = cx(0.0, 1.0) / std::sqrt(3.0) * ab;
  const Eigen::Matrix2cd sz = (aab * ab - ab * aab) / 6.0;
  Eigen::Matrix2cd px, py, pz;
  px << 0, 1, 1, 0;
  py << 0, cx(0, -1), cx(0, 1), 0;
  pz << 1, 0, 0, -1;
  const double dx = (sx - px).cwiseAbs().maxCoeff();
  const double dy = (sy - py).cwiseAbs().maxCoeff();
  const double dz = (sz - pz).cwiseAbs().maxCoeff();
  why << "; sigma_x " << sci(dx) << (dx <= 1e-10 ? " ok" : " FAIL") << ", sigma_y " << sci(dy)
      << (dy <= 1e-10 ? " ok" : " FAIL") << ", sigma_z " << sci(dz) << (dz <= 1e-10 ? " ok" : " FAIL");
  if (dy > 1e-10 && (sy + py).cwiseAbs().maxCoeff() <= 1e-10) why << " (combination equals -sigma_y)";
  if (dz > 1e-10 && (sz + 2.0 * pz).cwiseAbs().maxCoeff() <= 1e-10) why << " (combination equals -2 sigma_z)";
  ok = ok && dx <= 1e-10 && dy <= 1e-10 && dz <= 1e-10;
  // branching
  bool branch = true;
  for (int n = 2; n <= 7; ++n)
    for (const auto& p : partitions(n)) branch = branch && branching_check(p).ok;
  why << "; branching " << (branch ? "ok" : "FAIL");
  ok = ok && branch;
  // two equal rows
  bool cat = true;
  for (int n = 1; n <= 8; ++n) cat = cat && hook_dimension({n, n}) == catalan(n);
  why << "; f(n,n) = Catalan " << (cat ? "ok" : "FAIL");
  ok = ok && cat;
  r.pass = ok;
  r.detail = why.str();
  return r;
}

CriterionResult c10(Rng& rng) {
  CriterionResult r{10, kTitles[10 - 1], false, "", 0};
  double worst = 0.0;
  for (int c = 0; c < 50; ++c) {
    ExchangeCircuit circ;
    circ.n = 5;
    for (int t = 0; t < 5; ++t) {
      const int i = rng.integer(1, 4);
      circ.gates.push_back({rng.uniform(-kPi, kPi), i, rng.integer(i + 1, 5)});
    }
    std::string x = "00000";
    const int a = rng.integer(0, 4);
    int b = rng.integer(0, 3);
    if (b >= a) ++b;
    x[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(b)] = '1';
    worst = std::max(worst, exchange_reduction(circ, x).tv);
  }
  const auto layout = default_layout(2);
  const auto cnot = encoded_cnot(layout);
  const int in[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const int out[4] = {0b00, 0b01, 0b11, 0b10};
  double table = 0.0;
  for (int row = 0; row < 4; ++row) {
    PermState st = encoded_basis_state(layout, {in[row][0], in[row][1]});
    apply_circuit(st, cnot);
    const auto amps = encoded_amplitudes(st, layout);
    for (int col = 0; col < 4; ++col)
      table = std::max(table, std::abs(amps[static_cast<std::size_t>(col)] - (col == out[row] ? 1.0 : 0.0)));
  }
  r.pass = worst <= 1e-9 && table <= 1e-10;
  r.detail = "max total variation " + sci(worst) + " (limit 1e-9); CNOT table deviation " + sci(table);
  return r;
}

CriterionResult c11(Rng& rng) {
  CriterionResult r{11, kTitles[11 - 1], false, "", 0};
  double prob = 0.0, marg = 0.0;
  for (int c = 0; c < 200; ++c) {
    const int n = rng.integer(2, 5);
    const auto prog = random_program(rng, n, rng.integer(0, 12), false);
    const auto dist = exact_distribution(prog);
    for (const auto& s : all_permutations(n))
      prob = std::max(prob, std::abs(brute_force_probability(prog, s) - dist.weight(s)));
    for (int color = 1; color <= n; ++color) {
      const auto v = marginal_location(prog, color);
      std::vector<double> want(n, 0.0);
      for (const auto& s : all_permutations(n)) want[s.position_of(color) - 1] += dist.weight(s);
      for (int p = 0; p < n; ++p) marg = std::max(marg, std::abs(v[p] - want[p]));
    }
  }
  int disagreements = 0;
  for (int c = 0; c < 1000; ++c) {
    const int n = rng.integer(2, 6);
    const int m = rng.integer(0, 16);
    std::vector<int> word;
    for (int t = 0; t < m; ++t) word.push_back(rng.integer(1, n - 1));
    const auto prog = adjacent_program(n, word);
    std::vector<char> brute(factorial(n), 0);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) brute[rank(apply_subset(prog, s))] = 1;
    for (std::uint64_t t = 0; t < brute.size(); ++t)
      if (reachable_adjacent(n, word, unrank(n, t)) != (brute[t] != 0)) ++disagreements;
  }
  int count_mismatch = 0;
  for (int c = 0; c < 200; ++c) {
    const int n = rng.integer(2, 5);
    auto prog = random_program(rng, n, rng.integer(0, 10), false);
    std::string instr;
    for (std::size_t t = 0; t < prog.steps.size(); ++t) instr.push_back(rng.bernoulli(0.5) ? '1' : '0');
    prog.instruction = instr;
    const auto norm = normalize_instruction(prog);
    if (counting_vector(prog) != counting_vector(norm.program, &norm.offset)) ++count_mismatch;
  }
  r.pass = prob <= 1e-12 && marg <= 1e-12 && disagreements == 0 && count_mismatch == 0;
  r.detail = "subset vs exact " + sci(prob) + ", marginals " + sci(marg) + " (limit 1e-12); reachability disagreements " +
             std::to_string(disagreements) + "; counting mismatches " + std::to_string(count_mismatch);
  return r;
}

CriterionResult c12(Rng&) {
  CriterionResult r{12, kTitles[12 - 1], false, "", 0};
  int local_bad = 0, codec_bad = 0;
  for (int n = 2; n <= 6; ++n)
    for (const auto& s : all_permutations(n))
      for (int k = 1; k < n; ++k)
        for (int b : code_block_diff(s, k))
          if (b != k && b != k + 1) ++local_bad;
  for (int n = 1; n <= 7; ++n) {
    std::vector<char> hit(factorial(n), 0);
    for (const auto& s : all_permutations(n)) {
      const auto code = encode(s);
      if (static_cast<int>(code.bits.size()) != code_length(n) || decode(code) != s) ++codec_bad;
      hit[rank(decode(code))] = 1;
    }
    for (char h : hit) codec_bad += h ? 0 : 1;
  }
  r.pass = local_bad == 0 && codec_bad == 0;
  r.detail = "blocks outside {k,k+1}: " + std::to_string(local_bad) + "; codec failures: " + std::to_string(codec_bad);
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  require(id >= 1 && id <= kCriterionCount, "criterion id out of range");
  std::uint64_t s = seed + static_cast<std::uint64_t>(id);
  Rng rng(splitmix64(s));
  using Fn = CriterionResult (*)(Rng&);
  static const Fn table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  static const double budget[] = {1.0, 1.0, 30.0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](rng);
  } catch (const std::exception& e) {
    r.id = id;
    r.title = kTitles[id - 1];
    r.pass = false;
    r.detail = std::string("raised: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double limit = budget[id - 1];
  if (limit > 0 && r.seconds >= limit) {
    r.pass = false;
    r.detail += "; runtime " + sci(r.seconds) + " s exceeds " + sci(limit) + " s";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(int only, std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id)
    if (only == 0 || only == id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace ballistic
