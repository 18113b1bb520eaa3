#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ballistic/classical.hpp"
#include "ballistic/encoded.hpp"
#include "ballistic/gadgets.hpp"
#include "ballistic/qsim.hpp"
#include "ballistic/scattering.hpp"

namespace ballistic::io {

using json = nlohmann::json;

// Parse errors surface as ErrorKind::Input.
json parse_text(const std::string& text, const char* what);

Permutation parse_permutation(const json& j);
json permutation_json(const Permutation& s);

SwapProgram parse_swap_program(const json& j);
json swap_program_json(const SwapProgram& p);

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;
};
Gate parse_gate(const json& j);
json gate_json(const Gate& g);
Circuit parse_circuit(const json& j);
json circuit_json(const Circuit& c);

TrajectorySet parse_trajectory(const json& j);

ExchangeCircuit parse_exchange_circuit(const json& j);

GadgetSchedule parse_gadget_schedule(const json& j);
json gadget_schedule_json(const GadgetSchedule& s);

json distribution_json(const PermDistribution& d, double cutoff = 0.0);
json matrix_json(const Eigen::MatrixXd& m);
json matrix_json(const Eigen::MatrixXcd& m);

// Doubles are written with 17 significant digits.
std::string dump(const json& j, int indent = 2);
// Flattened key/value rendering for humans.
std::string render_table(const json& report);

}  // namespace ballistic::io
