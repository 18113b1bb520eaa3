#pragma once

#include <cstdint>
#include <vector>

#include "ballistic/perm.hpp"
#include "ballistic/qsim.hpp"

namespace ballistic {

struct TrajectorySet {
  std::vector<double> positions;   // strictly increasing
  std::vector<double> velocities;  // unit masses, so also momenta
  double c = 1.0;
  void validate() const;
};

struct Collision {
  double time = 0.0;
  int k = 1;               // adjacent slot pair (k, k+1)
  int left = 0, right = 0; // particle labels before the swap
  double p_left = 0.0, p_right = 0.0;
  double relative_velocity = 0.0;
  double rapidity = 0.0;   // relative velocity over c
};

struct CollisionSchedule {
  std::vector<Collision> events;
  Permutation signature;            // label in each slot after all collisions
  std::vector<double> final_velocities;
};

struct ScheduleOptions {
  bool jitter = false;
  double epsilon = 1e-6;
  std::uint64_t seed = 0;
  int max_retries = 32;
  double time_window = 1e-12;
};

// (-ic I + V L) / (ic + V) with V = p_left - p_right.
Gate delta_gate(double p_left, double p_right, double c, int k);
CollisionSchedule build_schedule(const TrajectorySet& t, const ScheduleOptions& opts = {});
std::vector<Gate> schedule_unitary(const CollisionSchedule& s, double c);

// max-entry difference between the two three-strand products; the middle
// rapidity is normally x + y.
double ybe_residual(double x, double y, double middle);
double ybe_check(double x, double y);

struct DeterminismReport {
  bool ok = true;
  int draws = 0;
  int signatures = 0;
  double max_residual = 0.0;
};
DeterminismReport signature_determinism_check(const std::vector<double>& velocities, int trials,
                                              std::uint64_t seed, double c = 1.0);

}  // namespace ballistic
