#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ballistic {

using Partition = std::vector<int>;  // non-ascending positive parts

void validate_partition(const Partition& shape);
std::vector<Partition> partitions(int n);  // reverse lexicographic, (n) first
Partition dual(const Partition& shape);
std::string partition_str(const Partition& shape);

struct StandardTableau {
  Partition shape;
  std::vector<std::vector<int>> rows;

  int row_of(int entry) const;     // 0-based
  int column_of(int entry) const;  // 0-based
  std::vector<int> reading_word() const;
  friend bool operator==(const StandardTableau&, const StandardTableau&) = default;
};

std::uint64_t hook_dimension(const Partition& shape);
// Ordered lexicographically by the row-reading word.
std::vector<StandardTableau> standard_tableaux(const Partition& shape);

// Content difference (column minus row) from entry k to entry k+1.
int axial_distance(const StandardTableau& t, int k);
Eigen::MatrixXd yy_matrix(const Partition& shape, int k);

struct IrrepReport {
  Partition shape;
  std::uint64_t dimension = 0;
  double involution = 0.0;   // max |M_k^2 - I|
  double symmetry = 0.0;     // max |M_k - M_k^T|
  double commuting = 0.0;    // max |[M_k, M_j]| for |k - j| >= 2
  double braid = 0.0;        // max |M_k M_{k+1} M_k - M_{k+1} M_k M_{k+1}|
  bool ok(double tol = 1e-12) const {
    return involution <= tol && symmetry <= tol && commuting <= tol && braid <= tol;
  }
};
IrrepReport verify_irrep_relations(const Partition& shape);

struct BranchingReport {
  bool ok = false;
  std::vector<Partition> pieces;  // sub-shapes in the order their blocks appear
  double residual = 0.0;
};
BranchingReport branching_check(const Partition& shape);

struct LieClosure {
  int dimension = 0;
  std::vector<Eigen::MatrixXcd> basis;  // orthonormal under Re tr(A^dagger B)
};
LieClosure lie_closure(const std::vector<Eigen::MatrixXcd>& generators, int max_dim);
bool in_real_span(const LieClosure& algebra, const Eigen::MatrixXcd& m, double tol = 1e-9);

// Steps +1 when the entry sits in the first row, -1 otherwise.
std::vector<std::vector<int>> path_model(const Partition& shape);
std::uint64_t path_count(int length, int end_height);
std::uint64_t catalan(int n);

}  // namespace ballistic
