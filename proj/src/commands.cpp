#include "commands.hpp"

#include <cmath>
#include <map>

#include "ballistic/errors.hpp"
#include "ballistic/rep_theory.hpp"
#include "ballistic/rng.hpp"
#include "ballistic/selftest.hpp"

namespace ballistic {

using io::json;

namespace {


struct Opts {
  const json& j;

  bool has(const char* key) const { return j.is_object() && j.contains(key) && !j[key].is_null(); }
  double num(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    if (!j[key].is_number()) fail(ErrorKind::Input, std::string("option ") + key + " must be a number");
    return j[key].get<double>();
  }
  int integer(const char* key, int fallback) const {
    if (!has(key)) return fallback;
    if (!j[key].is_number_integer()) fail(ErrorKind::Input, std::string("option ") + key + " must be an integer");
    return j[key].get<int>();
  }
  bool flag(const char* key) const {
    if (!has(key)) return false;
    if (!j[key].is_boolean()) fail(ErrorKind::Input, std::string("option ") + key + " must be true or false");
    return j[key].get<bool>();
  }
  std::string str(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j[key].is_string()) fail(ErrorKind::Input, std::string("option ") + key + " must be a string");
    return j[key].get<std::string>();
  }
  // Sampling is only allowed with an explicit seed.
  std::uint64_t seed(const char* purpose) const {
    if (!has("seed")) fail(ErrorKind::Input, std::string(purpose) + " needs --seed");
    const auto& s = j["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      fail(ErrorKind::Input, "seed must be a nonnegative integer");
    return s.get<std::uint64_t>();
  }
  std::vector<std::string> list(const char* key) const {
    std::vector<std::string> out;
    if (!has(key)) return out;
    if (j[key].is_string()) {
      out.push_back(j[key].get<std::string>());
      return out;
    }
    if (!j[key].is_array()) fail(ErrorKind::Input, std::string("option ") + key + " must be a list of names");
    for (const auto& v : j[key]) {
      if (!v.is_string()) fail(ErrorKind::Input, std::string("option ") + key + " must be a list of names");
      out.push_back(v.get<std::string>());
    }
    return out;
  }
};

struct Checks {
  json residuals = json::object();
  json results = json::object();
  bool all = true;

  void add(const std::string& name, double residual, double tol) {
    residuals[name] = residual;
    const bool ok = std::isfinite(residual) && residual <= tol;
    results[name] = {{"pass", ok}, {"residual", residual}, {"tolerance", tol}};
    all = all && ok;
  }
  void add_bool(const std::string& name, bool ok) {
    results[name] = {{"pass", ok}};
    all = all && ok;
  }
  void finish(json& report) const {
    report["residuals"] = residuals;
    if (!results.empty()) report["checks"] = results;
    report["checks_passed"] = all;
  }
};

void no_extra_options(const json& options, std::initializer_list<const char*> allowed, const std::string& cmd) {
  if (!options.is_object()) fail(ErrorKind::Input, "options must be a JSON object");
  for (auto it = options.begin(); it != options.end(); ++it) {
    if (it.key() == "format") continue;
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(ErrorKind::Input, "option \"" + it.key() + "\" is not understood by " + cmd);
  }
}

json sample_counts(const std::vector<Permutation>& draws) {
  std::map<std::vector<int>, int> hist;
  for (const auto& s : draws) ++hist[s.image()];
  json out = json::array();
  for (const auto& [img, count] : hist) out.push_back({{"perm", img}, {"count", count}});
  return out;
}

json cmd_classical(const json& input, const json& options) {
  no_extra_options(options, {"seed", "samples", "target", "tol"}, "classical");
  const Opts o{options};
  const auto prog = io::parse_swap_program(input);
  json report;
  report["n"] = prog.n;
  report["steps"] = prog.steps.size();
  const auto dist = exact_distribution(prog);
  report["distribution"] = io::distribution_json(dist);
  json marg = json::array();
  for (int color = 1; color <= prog.n; ++color) marg.push_back(marginal_location(prog, color));
  report["marginals"] = marg;
  Checks checks;
  double mass = 0.0;
  for (double w : dist.weights) mass += w;
  checks.residuals["total_probability"] = std::abs(mass - 1.0);
  if (o.has("target")) {
    const auto target = io::parse_permutation(options["target"]);
    require(target.size() == prog.n, "target size differs from n");
    json t;
    t["perm"] = target.image();
    t["reachable"] = reachable_general(prog, target);
    t["probability"] = dist.weight(target);
    if (prog.steps.size() <= static_cast<std::size_t>(kMaxSubsetSteps)) {
      t["achieving_subsets"] = count_achieving_subsets(prog, target);
      const double brute = brute_force_probability(prog, target);
      t["subset_probability"] = brute;
      checks.add("subset_vs_exact", std::abs(brute - dist.weight(target)), o.num("tol", 1e-12));
    }
    if (t.contains("achieving_subsets"))
      checks.add_bool("reachability_consistent",
                      t["reachable"].get<bool>() == (t["achieving_subsets"].get<std::uint64_t>() > 0));
    report["target"] = t;
  }
  const int samples = o.integer("samples", 0);
  require(samples >= 0, "samples must be nonnegative");
  if (samples > 0) {
    Rng rng(o.seed("sampling"));
    std::vector<Permutation> draws;
    for (int s = 0; s < samples; ++s) draws.push_back(sample(prog, rng()));
    report["samples"] = sample_counts(draws);
  }
  checks.finish(report);
  return report;
}

PermState input_state(const Opts& o, int n) {
  if (!o.has("input")) return PermState::basis(Permutation::identity(n));
  const auto s = io::parse_permutation(o.j["input"]);
  require(s.size() == n, "input permutation size differs from n");
  return PermState::basis(s);
}

json cmd_simulate(const json& input, const json& options) {
  no_extra_options(options, {"seed", "samples", "check", "x", "y", "input", "tol", "mc_samples"}, "simulate");
  const Opts o{options};
  const auto circ = io::parse_circuit(input);
  const auto checks_wanted = o.list("check");
  for (const auto& c : checks_wanted)
    if (c != "column" && c != "duality" && c != "trace" && c != "ybe" && c != "mc")
      fail(ErrorKind::Input, "unknown check \"" + c + "\" (column, duality, trace, ybe, mc)");
  PermState st = input_state(o, circ.n);
  apply_circuit(st, circ.gates);
  json report;
  report["n"] = circ.n;
  report["gates"] = circ.gates.size();
  report["distribution"] = io::distribution_json(measure_distribution(st), 1e-15);
  Checks checks;
  checks.residuals["norm"] = std::abs(st.norm() - 1.0);
  for (const auto& c : checks_wanted) {
    if (c == "column") {
      checks.add("column_permutation", column_relation_residual(circ.gates, circ.n), o.num("tol", 1e-12));
    } else if (c == "duality") {
      checks.add("xy_duality", xy_duality_check(circ.gates, circ.n).residual, o.num("tol", 1e-12));
    } else if (c == "trace") {
      const auto t = trace_identity_check(circ.gates, circ.n);
      report["trace"] = {t.trace.real(), t.trace.imag()};
      report["identity_amplitude"] = {t.identity_amplitude.real(), t.identity_amplitude.imag()};
      checks.add("trace_identity", t.residual / static_cast<double>(factorial(circ.n)), o.num("tol", 1e-9));
    } else if (c == "ybe") {
      require(o.has("x") && o.has("y"), "the ybe check needs --x and --y");
      checks.add("ybe", ybe_check(o.num("x", 0), o.num("y", 0)), o.num("tol", 1e-12));
    } else if (c == "mc") {
      const int samples = o.integer("mc_samples", 10000);
      require(samples > 0, "mc_samples must be positive");
      const auto mc = mc_identity_amplitude(circ.gates, circ.n, static_cast<std::uint64_t>(samples), o.seed("mc"));
      PermState e = PermState::basis(Permutation::identity(circ.n));
      apply_circuit(e, circ.gates);
      const cx exact = e[0];
      report["mc_identity_amplitude"] = {{"estimate", {mc.value.real(), mc.value.imag()}},
                                         {"stderr", {mc.stderr_re, mc.stderr_im}},
                                         {"exact", {exact.real(), exact.imag()}}};
      checks.residuals["mc_error"] = std::abs(mc.value - exact);
    }
  }
  const int samples = o.integer("samples", 0);
  require(samples >= 0, "samples must be nonnegative");
  if (samples > 0) {
    Rng rng(o.seed("sampling"));
    std::vector<Permutation> draws;
    for (int s = 0; s < samples; ++s) draws.push_back(sample_measurement(st, rng()));
    report["samples"] = sample_counts(draws);
  }
  checks.finish(report);
  return report;
}

json schedule_report(const CollisionSchedule& s) {
  json events = json::array();
  for (const auto& e : s.events)
    events.push_back({{"time", e.time},
                      {"k", e.k},
                      {"left", e.left},
                      {"right", e.right},
                      {"relative_velocity", e.relative_velocity},
                      {"rapidity", e.rapidity}});
  return {{"events", events}, {"signature", s.signature.image()}, {"final_velocities", s.final_velocities}};
}

json cmd_scatter(const json& input, const json& options) {
  no_extra_options(options, {"seed", "jitter", "epsilon", "compare_positions", "tol"}, "scatter");
  const Opts o{options};
  const auto traj = io::parse_trajectory(input);
  ScheduleOptions so;
  so.jitter = o.flag("jitter");
  so.epsilon = o.num("epsilon", so.epsilon);
  if (so.jitter) so.seed = o.seed("jitter");
  const auto sched = build_schedule(traj, so);
  const int n = static_cast<int>(traj.positions.size());
  json report = schedule_report(sched);
  const auto gates = schedule_unitary(sched, traj.c);
  PermState st = PermState::basis(Permutation::identity(n));
  apply_circuit(st, gates);
  report["distribution"] = io::distribution_json(measure_distribution(st), 1e-15);
  Checks checks;
  checks.residuals["norm"] = std::abs(st.norm() - 1.0);
  if (o.has("compare_positions")) {
    TrajectorySet other = traj;
    other.positions.clear();
    for (const auto& v : options["compare_positions"]) {
      if (!v.is_number()) fail(ErrorKind::Input, "compare_positions must be numbers");
      other.positions.push_back(v.get<double>());
    }
    other.validate();
    const auto alt = build_schedule(other, so);
    report["compare"] = schedule_report(alt);
    const bool same_signature = alt.signature == sched.signature;
    report["compare"]["same_signature"] = same_signature;
    const double diff =
        (circuit_unitary(gates, n) - circuit_unitary(schedule_unitary(alt, traj.c), n)).cwiseAbs().maxCoeff();
    if (same_signature) checks.add("unitary_difference", diff, o.num("tol", 1e-10));
    else checks.residuals["unitary_difference"] = diff;
  }
  checks.finish(report);
  return report;
}

json effective_json(const EffectiveGate& e) {
  return {{"target_angle", e.target_angle},
          {"success_probability", e.success_probability},
          {"fidelity", e.fidelity},
          {"matrix", io::matrix_json(Eigen::MatrixXcd(e.matrix))},
          {"out_velocity_left", e.out_velocity_left},
          {"out_velocity_right", e.out_velocity_right}};
}

json cmd_gadget(const json& input, const json& options) {
  no_extra_options(options, {"z1", "z2", "iters", "v1", "va", "c", "input", "tol"}, "gadget");
  const Opts o{options};
  json report;
  Checks checks;
  if (!input.is_null()) {
    // run a user-supplied schedule
    const auto sched = io::parse_gadget_schedule(input);
    const auto run = run_schedule(sched, input_state(o, sched.n_black));
    report["success_probability"] = run.success_probability;
    report["step_probabilities"] = run.step_probabilities;
    report["distribution"] = io::distribution_json(run.distribution, 1e-15);
    checks.residuals["norm"] = std::abs(run.output.norm() - 1.0);
    checks.finish(report);
    return report;
  }
  const double z1 = o.num("z1", 1.0), z2 = o.num("z2", 1.0);
  const int iters = o.integer("iters", 1);
  const auto four = four_particle_gadget(z1, z2);
  report["z1"] = z1;
  report["z2"] = z2;
  report["effective_angle"] = four.target_angle;
  report["four_particle"] = effective_json(four);
  checks.add("four_particle_infidelity", 1.0 - four.fidelity, o.num("tol", 1e-10));
  const auto three = three_particle_nondemolition(z1, z2, iters);
  report["three_particle"] = effective_json(three);
  report["three_particle"]["iterations"] = iters;
  report["three_particle"]["angle"] = three_particle_angle(z1, z2);
  checks.add("three_particle_infidelity", 1.0 - three.fidelity, o.num("tol", 1e-9));
  if (o.has("v1") || o.has("va")) {
    const auto nav = navigation_gadget(o.num("v1", 0.0), o.num("va", 1.0), o.num("c", 1.0));
    report["navigation"] = {{"success_probability", nav.success_probability},
                            {"outgoing_velocity", nav.outgoing_velocity},
                            {"label_preserved", nav.label_preserved}};
    checks.add_bool("navigation_label_preserved", nav.label_preserved);
  }
  checks.finish(report);
  return report;
}

json cmd_compile(const json& input, const json& options) {
  no_extra_options(options, {"scheme", "input", "tol", "schedule"}, "compile");
  const Opts o{options};
  const auto circ = io::parse_circuit(input);
  const std::string scheme = o.str("scheme", "stationary");
  CompileScheme cs;
  if (scheme == "stationary") cs = CompileScheme::Stationary;
  else if (scheme == "trajectory") cs = CompileScheme::Trajectory;
  else fail(ErrorKind::Input, "scheme must be stationary or trajectory");
  const auto sched = compile_x_circuit(circ.gates, circ.n, cs);
  const PermState in = input_state(o, circ.n);
  const auto run = run_schedule(sched, in);
  PermState direct = in;
  apply_circuit(direct, circ.gates);
  const auto want = measure_distribution(direct);
  json report;
  report["scheme"] = scheme;
  report["n_total"] = sched.n_total;
  report["events"] = sched.events.size();
  report["success_probability"] = run.success_probability;
  report["distribution"] = io::distribution_json(run.distribution, 1e-15);
  report["direct_distribution"] = io::distribution_json(want, 1e-15);
  if (!o.has("schedule") || o.flag("schedule")) report["schedule"] = io::gadget_schedule_json(sched);
  Checks checks;
  checks.add("total_variation", total_variation(run.distribution.weights, want.weights), o.num("tol", 1e-9));
  checks.finish(report);
  return report;
}

json cmd_irrep(const json&, const json& options) {
  no_extra_options(options, {"n", "shape", "matrices", "closure", "su2", "tol"}, "irrep");
  const Opts o{options};
  const double tol = o.num("tol", 1e-12);
  std::vector<Partition> shapes;
  int n = 0;
  if (o.has("shape")) {
    Partition p;
    for (const auto& v : options["shape"]) {
      if (!v.is_number_integer()) fail(ErrorKind::Input, "shape must be a list of integers");
      p.push_back(v.get<int>());
    }
    validate_partition(p);
    for (int v : p) n += v;
    shapes.push_back(p);
  } else {
    n = o.integer("n", 3);
    require(n >= 1 && n <= 20, "irrep --n must be in 1..20");
    shapes = partitions(n);
  }
  json report;
  report["n"] = n;
  json table = json::array();
  Checks checks;
  std::uint64_t sum = 0;
  double rel = 0.0;
  bool branch = true;
  for (const auto& p : shapes) {
    const auto f = hook_dimension(p);
    sum += f * f;
    json row = {{"shape", p}, {"dimension", f}};
    if (n <= 8 && f <= 2000) {
      const auto r = verify_irrep_relations(p);
      row["involution"] = r.involution;
      row["symmetry"] = r.symmetry;
      row["commuting"] = r.commuting;
      row["braid"] = r.braid;
      rel = std::max({rel, r.involution, r.symmetry, r.commuting, r.braid});
      if (n >= 2) {
        const auto b = branching_check(p);
        row["branching_ok"] = b.ok;
        branch = branch && b.ok;
      }
      if (o.flag("matrices")) {
        json mats = json::array();
        for (int k = 1; k < n; ++k) mats.push_back(io::matrix_json(yy_matrix(p, k)));
        row["matrices"] = mats;
      }
      if (o.flag("closure") && n >= 2 && f <= 12) {
        std::vector<Eigen::MatrixXcd> gens;
        for (int k = 1; k < n; ++k) gens.push_back(cx(0.0, 1.0) * yy_matrix(p, k).cast<cx>());
        row["lie_closure_dimension"] = lie_closure(gens, static_cast<int>(f * f)).dimension;
      }
    }
    table.push_back(row);
  }
  report["irreps"] = table;
  if (!o.has("shape")) {
    report["sum_dimension_squared"] = sum;
    report["factorial"] = factorial(std::min(n, 20));
    checks.add_bool("sum_of_squares", sum == factorial(n));
  }
  if (n <= 8) {
    checks.add("relations", rel, tol);
    if (n >= 2) checks.add_bool("branching", branch);
  }
  if (o.flag("su2")) {
    // three-box irrep: commutator combinations against the Pauli matrices
    const Eigen::Matrix2cd a = yy_matrix({2, 1}, 1).cast<cx>(), b = yy_matrix({2, 1}, 2).cast<cx>();
    const Eigen::Matrix2cd ab = a * b - b * a;
    const Eigen::Matrix2cd aab = a * ab - ab * a;
    Eigen::Matrix2cd px, py, pz;
    px << 0, 1, 1, 0;
    py << 0, cx(0, -1), cx(0, 1), 0;
    pz << 1, 0, 0, -1;
    const Eigen::Matrix2cd sx = aab / (2.0 * std::sqrt(3.0));
    const Eigen::Matrix2cd sy = cx(0.0, 1.0) / std::sqrt(3.0) * ab;
    const Eigen::Matrix2cd sz = (aab * ab - ab * aab) / 6.0;
    report["su2"] = {{"sigma_x", io::matrix_json(Eigen::MatrixXcd(sx))},
                     {"sigma_y", io::matrix_json(Eigen::MatrixXcd(sy))},
                     {"sigma_z", io::matrix_json(Eigen::MatrixXcd(sz))}};
    checks.add("su2_sigma_x", (sx - px).cwiseAbs().maxCoeff(), 1e-10);
    checks.add("su2_sigma_y", (sy - py).cwiseAbs().maxCoeff(), 1e-10);
    checks.add("su2_sigma_z", (sz - pz).cwiseAbs().maxCoeff(), 1e-10);
  }
  checks.finish(report);
  return report;
}

json cmd_encode(const json& input, const json& options) {
  no_extra_options(options, {"input", "seed", "samples", "cnot", "copies", "trials", "tol"}, "encode");
  const Opts o{options};
  const auto circ = io::parse_exchange_circuit(input);
  require(o.has("input"), "encode needs --input with a bit string");
  const std::string bits = o.str("input", "");
  const auto red = exchange_reduction(circ, bits);
  json report;
  report["n"] = circ.n;
  report["input"] = bits;
  json rows = json::array();
  for (std::size_t x = 0; x < red.direct.size(); ++x) {
    if (red.direct[x] <= 1e-15 && red.reduced[x] <= 1e-15) continue;
    rows.push_back({{"bits", index_bits(x, circ.n)}, {"reduced", red.reduced[x]}, {"direct", red.direct[x]}});
  }
  report["distribution"] = rows;
  Checks checks;
  checks.add("total_variation", red.tv, o.num("tol", 1e-9));
  const int samples = o.integer("samples", 0);
  require(samples >= 0, "samples must be nonnegative");
  if (samples > 0) {
    Rng rng(o.seed("sampling"));
    std::map<std::string, int> hist;
    for (int s = 0; s < samples; ++s) ++hist[exchange_reduction_sample(circ, bits, rng())];
    json h = json::array();
    for (const auto& [b, c] : hist) h.push_back({{"bits", b}, {"count", c}});
    report["samples"] = h;
  }
  if (o.flag("cnot")) {
    const auto layout = default_layout(2);
    const auto gates = encoded_cnot(layout);
    json table = json::array();
    double worst = 0.0;
    const int out[4] = {0b00, 0b01, 0b11, 0b10};
    for (int row = 0; row < 4; ++row) {
      PermState st = encoded_basis_state(layout, {row >> 1, row & 1});
      apply_circuit(st, gates);
      const auto amps = encoded_amplitudes(st, layout);
      json a = json::array();
      for (int col = 0; col < 4; ++col) {
        a.push_back({amps[col].real(), amps[col].imag()});
        worst = std::max(worst, std::abs(amps[col] - (col == out[row] ? 1.0 : 0.0)));
      }
      table.push_back({{"in", index_bits(row, 2)}, {"amplitudes", a}});
    }
    report["cnot"] = table;
    checks.add("cnot_truth_table", worst, 1e-10);
  }
  if (o.has("copies")) {
    const int copies = o.integer("copies", 1);
    const int trials = o.integer("trials", 10000);
    const double rate = distinguish_error_rate(copies, trials, o.seed("distinguish"));
    report["distinguish"] = {{"copies", copies}, {"trials", trials}, {"error_rate", rate},
                             {"bound", std::pow(1.0 / 3.0, copies)}};
  }
  checks.finish(report);
  return report;
}

json cmd_selftest(const json&, const json& options) {
  no_extra_options(options, {"only", "seed"}, "selftest");
  const Opts o{options};
  const int only = o.integer("only", 0);
  require(only >= 0 && only <= kCriterionCount, "--only must name a criterion 1..12");
  const std::uint64_t seed = o.has("seed") ? o.seed("selftest") : kDefaultAcceptanceSeed;
  const auto results = run_acceptance(only, seed);
  json report;
  json rows = json::array();
  Checks checks;
  for (const auto& r : results) {
    rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    checks.add_bool((r.id < 10 ? "criterion_0" : "criterion_") + std::to_string(r.id), r.pass);
  }
  report["seed"] = seed;
  report["criteria"] = rows;
  checks.finish(report);
  return report;
}

using Handler = json (*)(const json&, const json&);

const std::map<std::string, std::pair<Handler, bool>>& handlers() {
  static const std::map<std::string, std::pair<Handler, bool>> table = {
      {"classical", {cmd_classical, true}}, {"simulate", {cmd_simulate, true}}, {"scatter", {cmd_scatter, true}},
      {"gadget", {cmd_gadget, false}},      {"compile", {cmd_compile, true}},   {"irrep", {cmd_irrep, false}},
      {"encode", {cmd_encode, true}},       {"selftest", {cmd_selftest, false}}};
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

bool command_needs_input(const std::string& name) {
  auto it = handlers().find(name);
  return it != handlers().end() && it->second.second;
}

json run_command(const std::string& name, const json& input, const json& options) {
  auto it = handlers().find(name);
  if (it == handlers().end()) fail(ErrorKind::Input, "unknown command \"" + name + "\"");
  if (it->second.second && input.is_null()) fail(ErrorKind::Input, name + " needs an input document");
  const json opts = options.is_null() ? json::object() : options;
  json report = it->second.first(input, opts);
  report["command"] = name;
  return report;
}

}  // namespace ballistic
