#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ballistic/classical.hpp"
#include "ballistic/perm.hpp"

namespace ballistic {

using cx = std::complex<double>;
using AngleTable = std::vector<std::vector<double>>;

enum class GateKind { X, Y, Z, W, H };

// X: position swap rotation, Y: label swap rotation, Z: position swap with an
// angle chosen by the two labels, W: label swap with an angle chosen by the
// two positions, H: X(atan z). `phase` multiplies the whole gate.
struct Gate {
  GateKind kind = GateKind::X;
  int k = 1;
  double theta = 0.0;
  double z = 0.0;
  AngleTable table;
  cx phase{1.0, 0.0};

  static Gate x(double theta, int k);
  static Gate y(double theta, int k);
  static Gate h(double z, int k);
  static Gate zgate(AngleTable table, int k);
  static Gate wgate(AngleTable table, int k);
};

const char* gate_name(GateKind kind);
void validate_gate(const Gate& g, int n);

inline constexpr int kMaxDenseLabels = 10;
inline constexpr int kMaxMatrixLabels = 6;

class PermState {
 public:
  explicit PermState(int n);  // zero vector
  static PermState basis(const Permutation& s);

  int n() const { return n_; }
  std::size_t dimension() const { return amp_.size(); }
  std::vector<cx>& amplitudes() { return amp_; }
  const std::vector<cx>& amplitudes() const { return amp_; }
  cx amplitude(const Permutation& s) const;
  cx& operator[](std::size_t r) { return amp_[r]; }
  cx operator[](std::size_t r) const { return amp_[r]; }
  double norm() const;
  void normalize();

 private:
  int n_;
  std::vector<cx> amp_;
};

void apply_gate(PermState& state, const Gate& g);
void apply_circuit(PermState& state, const std::vector<Gate>& gates);
// Rotation cos t I + i sin t L on two arbitrary positions i, j.
void apply_pair_rotation(PermState& state, int i, int j, double theta);

cx amplitude(const PermState& state, const Permutation& s);
PermDistribution measure_distribution(const PermState& state);
Permutation sample_measurement(const PermState& state, std::uint64_t seed);

Eigen::MatrixXcd gate_matrix(const Gate& g, int n);
// Product of gate matrices with the first gate applied first.
Eigen::MatrixXcd circuit_unitary(const std::vector<Gate>& gates, int n);

struct CheckResult {
  bool ok = false;
  double residual = 0.0;
};

CheckResult column_permutation_check(const std::vector<Gate>& gates, int n, double tol = 1e-12);
// same relation for any gate kinds; label-dependent gates usually break it
double column_relation_residual(const std::vector<Gate>& gates, int n);
std::vector<Gate> y_mirror(const std::vector<Gate>& gates);
CheckResult xy_duality_check(const std::vector<Gate>& gates, int n, double tol = 1e-12);

struct TraceCheck {
  cx trace;
  cx identity_amplitude;
  bool ok = false;
  double residual = 0.0;
};
TraceCheck trace_identity_check(const std::vector<Gate>& gates, int n);

// Hadamard-test style estimate of <e|C|e> from uniformly drawn diagonal entries.
struct McEstimate {
  cx value;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
};
McEstimate mc_identity_amplitude(const std::vector<Gate>& gates, int n, std::uint64_t samples,
                                 std::uint64_t seed);

}  // namespace ballistic
