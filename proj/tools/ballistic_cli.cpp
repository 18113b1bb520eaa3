// Command-line front end over the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ballistic/ballistic.h"

using nlohmann::json;

namespace {

struct Common {
  std::string input;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::optional<double> tol;
};

// "-" reads stdin, text starting with '{' is inline JSON, anything else is a path.
bool load_document(const std::string& source, std::string& out, std::string& err) {
  if (source.empty()) return true;
  if (source == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') {
    out = source;
    return true;
  }
  std::ifstream f(source);
  if (!f) {
    err = "cannot read " + source;
    return false;
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

void add_common(CLI::App* sub, Common& c, bool takes_input) {
  if (takes_input)
    sub->add_option("input,--input", c.input, "JSON document: file path, inline JSON, or - for stdin");
  sub->add_option("--seed", c.seed, "64-bit seed (required when sampling)");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--tol", c.tol, "tolerance override for the checks");
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ballistic-cli: permutation-register simulation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bl_version());

  Common common;
  json options = json::object();

  // classical
  std::optional<std::vector<int>> target;
  std::optional<int> samples, mc_samples, iters, n_opt, only, copies, trials;
  auto* classical = app.add_subcommand("classical", "exact distribution of a random swap program");
  add_common(classical, common, true);
  classical->add_option("--target", target, "arrangement to test for reachability")->delimiter(',');
  classical->add_option("--samples", samples, "number of sampled runs");

  // simulate
  std::vector<std::string> checks;
  std::optional<double> x, y;
  std::optional<std::vector<int>> input_perm;
  auto* simulate = app.add_subcommand("simulate", "run a gate circuit on the permutation register");
  add_common(simulate, common, true);
  simulate->add_option("--check", checks, "column, duality, trace, ybe or mc")->delimiter(',');
  simulate->add_option("--x", x, "first rapidity for the ybe check");
  simulate->add_option("--y", y, "second rapidity for the ybe check");
  simulate->add_option("--input-perm", input_perm, "starting arrangement")->delimiter(',');
  simulate->add_option("--samples", samples, "number of measurement samples");
  simulate->add_option("--mc-samples", mc_samples, "draws for the mc check");

  // scatter
  bool jitter = false;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> compare;
  auto* scatter = app.add_subcommand("scatter", "collision schedule of particles on a line");
  add_common(scatter, common, true);
  scatter->add_flag("--jitter", jitter, "perturb positions to break simultaneous collisions");
  scatter->add_option("--epsilon", epsilon, "jitter amplitude");
  scatter->add_option("--compare-positions", compare, "second placement to compare")->delimiter(',');

  // gadget
  std::optional<double> z1, z2, v1, va, cval;
  auto* gadget = app.add_subcommand("gadget", "effective gates of the postselection gadgets");
  add_common(gadget, common, false);
  gadget->add_option("--schedule", common.input, "run a schedule document instead");
  gadget->add_option("--z1", z1, "first rapidity");
  gadget->add_option("--z2", z2, "second rapidity");
  gadget->add_option("--iters", iters, "three-particle iterations");
  gadget->add_option("--v1", v1, "navigation: black velocity");
  gadget->add_option("--va", va, "navigation: ancilla velocity");
  gadget->add_option("--c", cval, "navigation: interaction strength");
  gadget->add_option("--input-perm", input_perm, "starting arrangement for --schedule")->delimiter(',');

  // compile
  std::optional<std::string> scheme;
  bool no_schedule = false;
  auto* compile = app.add_subcommand("compile", "compile an X circuit into a postselected schedule");
  add_common(compile, common, true);
  compile->add_option("--scheme", scheme, "stationary or trajectory");
  compile->add_option("--input-perm", input_perm, "starting arrangement")->delimiter(',');
  compile->add_flag("--no-schedule", no_schedule, "omit the schedule from the report");

  // irrep
  std::optional<std::vector<int>> shape;
  bool matrices = false, closure = false, su2 = false;
  auto* irrep = app.add_subcommand("irrep", "Young-Yamanouchi irreps and their checks");
  add_common(irrep, common, false);
  irrep->add_option("--n", n_opt, "all shapes with n boxes");
  irrep->add_option("--shape", shape, "one shape, e.g. 3,2")->delimiter(',');
  irrep->add_flag("--matrices", matrices, "include transposition matrices");
  irrep->add_flag("--closure", closure, "report the Lie closure dimension");
  irrep->add_flag("--su2", su2, "check the three-box commutator identities");

  // encode
  std::optional<std::string> bits;
  bool cnot = false;
  auto* encode = app.add_subcommand("encode", "exchange-circuit reduction to the permutation register");
  add_common(encode, common, true);
  encode->add_option("--bits", bits, "input bit string")->required();
  encode->add_option("--samples", samples, "number of sampled outputs");
  encode->add_flag("--cnot", cnot, "add the encoded CNOT truth table");
  encode->add_option("--copies", copies, "copies for the logical-state discrimination");
  encode->add_option("--trials", trials, "trials for the discrimination estimate");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  add_common(selftest, common, false);
  selftest->add_option("--only", only, "single criterion 1..12");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : BL_ERR_INPUT;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  put(options, "seed", common.seed);
  put(options, "tol", common.tol);
  options["format"] = common.format;
  put(options, "samples", samples);
  put(options, "target", target);
  if (!checks.empty()) options["check"] = checks;
  put(options, "x", x);
  put(options, "y", y);
  put(options, "input", input_perm);
  put(options, "mc_samples", mc_samples);
  if (jitter) options["jitter"] = true;
  put(options, "epsilon", epsilon);
  put(options, "compare_positions", compare);
  put(options, "z1", z1);
  put(options, "z2", z2);
  put(options, "iters", iters);
  put(options, "v1", v1);
  put(options, "va", va);
  put(options, "c", cval);
  put(options, "scheme", scheme);
  if (no_schedule) options["schedule"] = false;
  put(options, "n", n_opt);
  put(options, "shape", shape);
  if (matrices) options["matrices"] = true;
  if (closure) options["closure"] = true;
  if (su2) options["su2"] = true;
  if (bits) options["input"] = *bits;
  if (cnot) options["cnot"] = true;
  put(options, "copies", copies);
  put(options, "trials", trials);
  put(options, "only", only);

  std::string doc, err;
  if (!load_document(common.input, doc, err)) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return BL_ERR_INPUT;
  }

  char* out = nullptr;
  const std::string opts = options.dump();
  const bl_status st = bl_run_command(name.c_str(), doc.empty() ? nullptr : doc.c_str(), opts.c_str(), &out);
  if (out) {
    std::fputs(out, stdout);
    bl_string_free(out);
  }
  if (st != BL_OK && st != BL_ERR_CHECK) std::fprintf(stderr, "error: %s\n", bl_last_error());
  return static_cast<int>(st);
}
