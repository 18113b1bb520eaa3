#include "json_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ballistic/errors.hpp"

namespace ballistic::io {

namespace {

const json& field(const json& j, const char* key, const char* where) {
  if (!j.is_object()) fail(ErrorKind::Input, std::string(where) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::Input, std::string(where) + ": missing field \"" + key + "\"");
  return *it;
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(ErrorKind::Input, std::string(what) + " must be an integer");
  return j.get<int>();
}

double as_double(const json& j, const char* what) {
  if (!j.is_number()) fail(ErrorKind::Input, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ErrorKind::Input, std::string(what) + " must be finite");
  return v;
}

std::vector<double> as_doubles(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Input, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_double(v, what));
  return out;
}

std::vector<int> as_ints(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Input, std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(ErrorKind::Input, std::string(where) + ": unknown field \"" + it.key() + "\"");
  }
}

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  // shortest text that reads back to the same double
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  // keep floats recognizable as floats
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << pad << json(it.key()).dump() << sep;
        write(os, it.value(), indent, depth + 1);
      }
      os << close << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      // short numeric rows stay on one line
      bool flat = j.size() <= 16;
      for (const auto& v : j) flat = flat && v.is_primitive();
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (flat && indent > 0 ? ", " : ",");
        first = false;
        if (!flat) os << pad;
        write(os, v, indent, depth + 1);
      }
      if (!flat) os << close;
      os << ']';
      return;
    }
    case json::value_t::number_float:
      os << number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    return;
  }
  if (j.is_array()) {
    bool flat = true;
    for (const auto& v : j) flat = flat && (v.is_primitive() || (v.is_array() && v.size() <= 12));
    if (flat) {
      rows.emplace_back(prefix, dump(j, 0));
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : dump(j, 0));
}

}  // namespace

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Input, std::string(what) + " is not valid JSON: " + e.what());
  }
}

Permutation parse_permutation(const json& j) { return Permutation(as_ints(j, "permutation")); }

json permutation_json(const Permutation& s) { return s.image(); }

SwapProgram parse_swap_program(const json& j) {
  check_keys(j, {"n", "steps", "instruction"}, "swap program");
  SwapProgram p;
  p.n = as_int(field(j, "n", "swap program"), "n");
  const auto& steps = field(j, "steps", "swap program");
  if (!steps.is_array()) fail(ErrorKind::Input, "steps must be an array");
  for (const auto& s : steps) {
    check_keys(s, {"i", "j", "p"}, "swap step");
    p.steps.push_back({as_int(field(s, "i", "swap step"), "i"), as_int(field(s, "j", "swap step"), "j"),
                       as_double(field(s, "p", "swap step"), "p")});
  }
  if (j.contains("instruction")) {
    if (!j["instruction"].is_string()) fail(ErrorKind::Input, "instruction must be a string of 0/1");
    p.instruction = j["instruction"].get<std::string>();
  }
  p.validate();
  return p;
}

json swap_program_json(const SwapProgram& p) {
  json steps = json::array();
  for (const auto& s : p.steps) steps.push_back({{"i", s.i}, {"j", s.j}, {"p", s.p}});
  json out = {{"n", p.n}, {"steps", steps}};
  if (p.instruction) out["instruction"] = *p.instruction;
  return out;
}

Gate parse_gate(const json& j) {
  check_keys(j, {"type", "k", "theta", "z", "table"}, "gate");
  const auto& type = field(j, "type", "gate");
  if (!type.is_string()) fail(ErrorKind::Input, "gate type must be a string");
  const std::string t = type.get<std::string>();
  const int k = as_int(field(j, "k", "gate"), "k");
  auto table = [&] {
    AngleTable tab;
    const auto& rows = field(j, "table", "gate");
    if (!rows.is_array()) fail(ErrorKind::Input, "table must be a nested array");
    for (const auto& row : rows) tab.push_back(as_doubles(row, "table entry"));
    return tab;
  };
  if (t == "X") return Gate::x(as_double(field(j, "theta", "gate"), "theta"), k);
  if (t == "Y") return Gate::y(as_double(field(j, "theta", "gate"), "theta"), k);
  if (t == "H") return Gate::h(as_double(field(j, "z", "gate"), "z"), k);
  if (t == "Z") return Gate::zgate(table(), k);
  if (t == "W") return Gate::wgate(table(), k);
  fail(ErrorKind::Input, "unknown gate type \"" + t + "\"");
}

json gate_json(const Gate& g) {
  json out = {{"type", gate_name(g.kind)}, {"k", g.k}};
  switch (g.kind) {
    case GateKind::X:
    case GateKind::Y: out["theta"] = g.theta; break;
    case GateKind::H: out["z"] = g.z; break;
    default: out["table"] = g.table;
  }
  return out;
}

Circuit parse_circuit(const json& j) {
  check_keys(j, {"n", "gates"}, "circuit");
  Circuit c;
  c.n = as_int(field(j, "n", "circuit"), "n");
  require(c.n >= 1, "circuit needs n >= 1");
  const auto& gates = field(j, "gates", "circuit");
  if (!gates.is_array()) fail(ErrorKind::Input, "gates must be an array");
  for (const auto& g : gates) {
    c.gates.push_back(parse_gate(g));
    validate_gate(c.gates.back(), c.n);
  }
  return c;
}

json circuit_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) gates.push_back(gate_json(g));
  return {{"n", c.n}, {"gates", gates}};
}

TrajectorySet parse_trajectory(const json& j) {
  check_keys(j, {"positions", "velocities", "c"}, "trajectory");
  TrajectorySet t;
  t.positions = as_doubles(field(j, "positions", "trajectory"), "positions");
  t.velocities = as_doubles(field(j, "velocities", "trajectory"), "velocities");
  if (j.contains("c")) t.c = as_double(j["c"], "c");
  t.validate();
  return t;
}

ExchangeCircuit parse_exchange_circuit(const json& j) {
  check_keys(j, {"n", "gates"}, "exchange circuit");
  ExchangeCircuit c;
  c.n = as_int(field(j, "n", "exchange circuit"), "n");
  const auto& gates = field(j, "gates", "exchange circuit");
  if (!gates.is_array()) fail(ErrorKind::Input, "gates must be an array");
  for (const auto& g : gates) {
    check_keys(g, {"theta", "i", "j"}, "exchange gate");
    c.gates.push_back({as_double(field(g, "theta", "exchange gate"), "theta"),
                       as_int(field(g, "i", "exchange gate"), "i"), as_int(field(g, "j", "exchange gate"), "j")});
  }
  c.validate();
  return c;
}

GadgetSchedule parse_gadget_schedule(const json& j) {
  check_keys(j, {"n_black", "n_total", "initial", "ancilla_labels", "events", "final_black_positions"},
             "gadget schedule");
  GadgetSchedule s;
  s.n_black = as_int(field(j, "n_black", "gadget schedule"), "n_black");
  s.n_total = as_int(field(j, "n_total", "gadget schedule"), "n_total");
  s.initial = as_ints(field(j, "initial", "gadget schedule"), "initial");
  if (j.contains("ancilla_labels")) s.ancilla_labels = as_ints(j["ancilla_labels"], "ancilla_labels");
  s.final_black_positions = as_ints(field(j, "final_black_positions", "gadget schedule"), "final_black_positions");
  const auto& events = field(j, "events", "gadget schedule");
  if (!events.is_array()) fail(ErrorKind::Input, "events must be an array");
  for (const auto& e : events) {
    ScheduleEvent ev;
    if (e.is_object() && e.size() == 1 && e.contains("gate")) {
      ev.kind = ScheduleEvent::Kind::Gate;
      ev.gate = parse_gate(e["gate"]);
    } else if (e.is_object() && e.size() == 1 && e.contains("measure")) {
      const auto& m = e["measure"];
      check_keys(m, {"position", "label", "mode"}, "measure event");
      ev.kind = ScheduleEvent::Kind::Measure;
      ev.measure.position = as_int(field(m, "position", "measure event"), "position");
      ev.measure.label = as_int(field(m, "label", "measure event"), "label");
      const std::string mode = m.value("mode", std::string("nondemolition"));
      if (mode == "demolition") ev.measure.mode = MeasureMode::Demolition;
      else if (mode == "nondemolition") ev.measure.mode = MeasureMode::Nondemolition;
      else fail(ErrorKind::Input, "measure mode must be demolition or nondemolition");
    } else {
      fail(ErrorKind::Input, "each event must be {\"gate\": ...} or {\"measure\": ...}");
    }
    s.events.push_back(ev);
  }
  s.validate();
  return s;
}

json gadget_schedule_json(const GadgetSchedule& s) {
  json events = json::array();
  for (const auto& e : s.events) {
    if (e.kind == ScheduleEvent::Kind::Gate) {
      events.push_back({{"gate", gate_json(e.gate)}});
    } else {
      events.push_back({{"measure",
                         {{"position", e.measure.position},
                          {"label", e.measure.label},
                          {"mode", e.measure.mode == MeasureMode::Demolition ? "demolition" : "nondemolition"}}}});
    }
  }
  return {{"n_black", s.n_black},   {"n_total", s.n_total}, {"initial", s.initial},
          {"ancilla_labels", s.ancilla_labels}, {"events", events},
          {"final_black_positions", s.final_black_positions}};
}

json distribution_json(const PermDistribution& d, double cutoff) {
  json out = json::array();
  for (std::uint64_t r = 0; r < d.weights.size(); ++r) {
    if (d.weights[r] <= cutoff) continue;
    out.push_back({{"perm", unrank(d.n, r).image()}, {"p", d.weights[r]}});
  }
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

std::string dump(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

std::string render_table(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

}  // namespace ballistic::io
