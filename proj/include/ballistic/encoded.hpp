#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ballistic/qsim.hpp"

namespace ballistic {

// Qubit q sits on positions 2q+1, 2q+2 with |0> = |a b> and |1> = i|b a>.
struct EncodedQubitLayout {
  std::vector<std::pair<int, int>> pairs;
  int qubits() const { return static_cast<int>(pairs.size()); }
  int labels() const { return 2 * qubits(); }
  void validate() const;
};

EncodedQubitLayout default_layout(int qubits);  // pairs (1,2), (3,4), ...

// bits[q] is the value of qubit q
PermState encoded_basis_state(const EncodedQubitLayout& layout, const std::vector<int>& bits);
// Overlaps with every encoded basis vector, qubit 0 most significant.
std::vector<cx> encoded_amplitudes(const PermState& state, const EncodedQubitLayout& layout);

struct SwapPair {
  int a = 1, b = 2;
  bool starred = false;  // starred pairs receive -i instead of +i
};

// i L on positions (k, l) when their labels form a listed pair, identity otherwise.
std::vector<Gate> controlled_swap(const std::vector<SwapPair>& pairs, int n, int k, int l);
std::vector<Gate> encoded_cnot(const EncodedQubitLayout& layout, int control = 0, int target = 1);
Gate encoded_rotation(const EncodedQubitLayout& layout, int qubit, double theta);

// X rotation on two arbitrary positions, built from adjacent gates.
std::vector<Gate> pair_x_gates(double theta, int i, int j);

struct ExchangeGate {
  double theta = 0.0;
  int i = 1, j = 2;
};

struct ExchangeCircuit {
  int n = 0;
  std::vector<ExchangeGate> gates;
  void validate() const;
};

inline constexpr int kMaxExchangeQubits = 12;
inline constexpr int kMaxReductionLabels = 7;

// Bit strings index states with the first character most significant.
std::uint64_t bits_index(const std::string& bits);
std::string index_bits(std::uint64_t index, int n);

std::vector<cx> exchange_simulate_state(const ExchangeCircuit& c, const std::vector<cx>& input);
std::vector<double> exchange_simulate(const ExchangeCircuit& c, const std::string& input);

PermState hamming_encode(const std::string& bits);
std::vector<Gate> exchange_mirror(const ExchangeCircuit& c);
std::string threshold_bits(const std::vector<int>& image, int weight);

struct ReductionResult {
  std::vector<double> reduced;  // bit-string distribution read from the permutation register
  std::vector<double> direct;   // distribution of the qubit simulation
  double tv = 0.0;
};
ReductionResult exchange_reduction(const ExchangeCircuit& c, const std::vector<cx>& input, int weight);
ReductionResult exchange_reduction(const ExchangeCircuit& c, const std::string& input);
std::string exchange_reduction_sample(const ExchangeCircuit& c, const std::string& input,
                                      std::uint64_t seed);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

struct LogicalQubit {
  std::array<cx, 8> zero;  // three spins, first spin most significant
  std::array<cx, 8> one;
};
LogicalQubit logical_three_spin();
double third_bit_zero_probability(const std::array<cx, 8>& state);
// Reads the third spin of each copy; answers 1 as soon as any copy shows a 1.
int distinguish(const std::array<cx, 8>& state, int copies, std::uint64_t seed);
double distinguish_error_rate(int copies, int trials, std::uint64_t seed);

}  // namespace ballistic
