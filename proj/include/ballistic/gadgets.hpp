#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ballistic/qsim.hpp"

namespace ballistic {

enum class MeasureMode { Demolition, Nondemolition };

// Postselect on `label` sitting at `position`.
struct MeasurementEvent {
  int position = 1;
  int label = 1;
  MeasureMode mode = MeasureMode::Nondemolition;
};

struct PostselectResult {
  PermState state;
  double success_probability = 0.0;
};

inline constexpr double kMinPostselectProbability = 1e-14;

PostselectResult postselect(const PermState& state, const MeasurementEvent& ev);

// Normalized output of P_ij C(z1, z2)|123>, with
// C(z1, z2) = H(z2, 1) H(z1 + z2, 2) H(z1, 1).
std::vector<Gate> collision_triple(double z1, double z2);
PermState pij_closed_form(int label, int position, double z1, double z2);

struct ScheduleEvent {
  enum class Kind { Gate, Measure } kind = Kind::Gate;
  Gate gate;
  MeasurementEvent measure;
};

// Layout: initial[p-1] > 0 is an ancilla label, initial[p-1] < 0 marks the
// slot of black number -initial[p-1]. Black labels are 1..n_black.
struct GadgetSchedule {
  int n_black = 0;
  int n_total = 0;
  std::vector<int> initial;
  std::vector<int> ancilla_labels;
  std::vector<ScheduleEvent> events;
  std::vector<int> final_black_positions;  // position of black slot b at the end

  void validate() const;  // rejects gates touching demolished positions
};

struct RunResult {
  PermState output;                  // black-label state after all postselections
  PermDistribution distribution;     // conditional distribution over black arrangements
  double success_probability = 1.0;
  std::vector<double> step_probabilities;
};

RunResult run_schedule(const GadgetSchedule& sched, const PermState& input);

enum class CompileScheme { Stationary, Trajectory };
GadgetSchedule compile_x_circuit(const std::vector<Gate>& gates, int n,
                                 CompileScheme scheme = CompileScheme::Stationary);

struct EffectiveGate {
  Eigen::Matrix2cd matrix;         // on (|B1 B2>, |B2 B1>) after renormalization
  double success_probability = 0.0;
  double target_angle = 0.0;
  double fidelity = 0.0;           // phase-insensitive overlap with the target rotation
  double out_velocity_left = 0.0;  // velocities of the two black slots afterwards
  double out_velocity_right = 0.0;
};

// Rotation cos t I + i sin t swap on the black pair.
Eigen::Matrix2cd pair_rotation(double theta);
double phase_fidelity(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

EffectiveGate four_particle_gadget(double z1, double z2);
EffectiveGate four_particle_gadget_velocities(double v1, double v2, double va, double vb);

struct NavigationResult {
  double success_probability = 0.0;
  double outgoing_velocity = 0.0;
  bool label_preserved = false;
};
NavigationResult navigation_gadget(double v1, double va, double c = 1.0);

double three_particle_angle(double z1, double z2);
EffectiveGate three_particle_nondemolition(double z1, double z2, int iterations);

}  // namespace ballistic
