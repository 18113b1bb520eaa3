#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ballistic/errors.hpp"
#include "ballistic/perm.hpp"
#include "ballistic/rep_theory.hpp"

using namespace ballistic;
using cx = std::complex<double>;

namespace {
template <class M>
double maxabs(const Eigen::MatrixBase<M>& m) {
  return m.cwiseAbs().maxCoeff();
}

// position swap (k, k+1) on the regular representation, ranked basis
Eigen::MatrixXcd regular_swap(int n, int k) {
  const auto all = all_permutations(n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(all.size(), all.size());
  for (std::size_t r = 0; r < all.size(); ++r) m(rank(position_swap(all[r], k)), r) = 1.0;
  return m;
}

std::uint64_t brute_count(int n) { return partitions(n).size(); }
}  // namespace

TEST_CASE("partitions and duals") {
  const auto p4 = partitions(4);
  const std::vector<Partition> want = {{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  CHECK(p4 == want);
  CHECK(brute_count(8) == 22);
  CHECK(dual({3, 1}) == Partition{2, 1, 1});
  for (const auto& p : partitions(8)) CHECK(dual(dual(p)) == p);
  CHECK_THROWS_AS(validate_partition({1, 2}), Error);
  CHECK_THROWS_AS(validate_partition({2, 0}), Error);
}

TEST_CASE("dimensions") {
  CHECK(hook_dimension({2, 1}) == 2);
  CHECK(hook_dimension({2, 2}) == 2);
  CHECK(hook_dimension({3, 3}) == 5);
  CHECK(hook_dimension({4, 2}) == 9);
  std::uint64_t s5 = 0;
  for (const auto& p : partitions(5)) s5 += hook_dimension(p) * hook_dimension(p);
  CHECK(s5 == 120);
  for (int n = 1; n <= 9; ++n) {
    std::uint64_t s = 0;
    for (const auto& p : partitions(n)) {
      s += hook_dimension(p) * hook_dimension(p);
      CHECK(hook_dimension(p) == hook_dimension(dual(p)));
    }
    CHECK(s == factorial(n));
  }
  for (int n = 1; n <= 8; ++n) CHECK(hook_dimension({n, n}) == catalan(n));
  for (const auto& p : partitions(6)) CHECK(standard_tableaux(p).size() == hook_dimension(p));
}

TEST_CASE("tableau order and axial distance") {
  const auto t = standard_tableaux({2, 1});
  REQUIRE(t.size() == 2);
  CHECK(t[0].rows == std::vector<std::vector<int>>{{1, 2}, {3}});
  CHECK(t[1].rows == std::vector<std::vector<int>>{{1, 3}, {2}});
  CHECK(axial_distance(t[0], 1) == 1);
  CHECK(axial_distance(t[1], 1) == -1);
  CHECK(axial_distance(t[0], 2) == -2);
  const auto t31 = standard_tableaux({3, 1});
  CHECK(t31[0].reading_word() == std::vector<int>{1, 2, 3, 4});
  CHECK(t31[1].reading_word() == std::vector<int>{1, 2, 4, 3});
  CHECK(t31[2].reading_word() == std::vector<int>{1, 3, 4, 2});
}

TEST_CASE("three-box matrices") {
  Eigen::Matrix2d l1, l2;
  l1 << 1, 0, 0, -1;
  l2 << -0.5, std::sqrt(3.0) / 2, std::sqrt(3.0) / 2, 0.5;
  CHECK(maxabs(yy_matrix({2, 1}, 1) - l1) <= 1e-15);
  CHECK(maxabs(yy_matrix({2, 1}, 2) - l2) <= 1e-15);
  for (int k = 1; k < 5; ++k) {
    CHECK(maxabs(yy_matrix({5}, k) - Eigen::MatrixXd::Identity(1, 1)) == 0.0);
    CHECK(maxabs(yy_matrix({1, 1, 1, 1, 1}, k) + Eigen::MatrixXd::Identity(1, 1)) == 0.0);
  }
}

TEST_CASE("Coxeter relations") {
  CHECK(verify_irrep_relations({2, 1}).ok());
  const auto r32 = verify_irrep_relations({3, 2});
  CHECK(r32.dimension == 5);
  CHECK(r32.ok());
  CHECK(verify_irrep_relations({4}).ok());
  for (int n = 1; n <= 7; ++n)
    for (const auto& p : partitions(n)) {
      CHECK(verify_irrep_relations(p).ok(1e-12));
      for (int k = 1; k < n; ++k) {
        const auto m = yy_matrix(p, k);
        CHECK(maxabs(m * m.transpose() - Eigen::MatrixXd::Identity(m.rows(), m.cols())) <= 1e-12);
      }
    }
}

TEST_CASE("branching") {
  const auto b22 = branching_check({2, 2});
  CHECK(b22.ok);
  CHECK(b22.pieces == std::vector<Partition>{{2, 1}});
  auto sorted = [](std::vector<Partition> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto b31 = branching_check({3, 1});
  CHECK(b31.ok);
  CHECK(sorted(b31.pieces) == sorted({{2, 1}, {3}}));
  const auto b32 = branching_check({3, 2});
  CHECK(b32.ok);
  CHECK(sorted(b32.pieces) == sorted({{2, 2}, {3, 1}}));
  for (int n = 2; n <= 7; ++n)
    for (const auto& p : partitions(n)) CHECK(branching_check(p).ok);
}

TEST_CASE("bridge operator on four boxes") {
  // i [L_(2,3), L_(3,4)] on the (3,1) irrep
  const Eigen::MatrixXd a = yy_matrix({3, 1}, 2), b = yy_matrix({3, 1}, 3);
  const Eigen::MatrixXd comm = a * b - b * a;
  Eigen::Matrix3d want;
  want << 0, std::sqrt(2.0), -std::sqrt(2.0 / 3.0), -std::sqrt(2.0), 0, std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0),
      -std::sqrt(1.0 / 3.0), 0;
  CHECK(std::abs(comm.trace()) <= 1e-12);
  CHECK(maxabs(comm - want) <= 1e-12);
}

TEST_CASE("Lie closure") {
  const Eigen::MatrixXcd g1 = cx(0, 1) * yy_matrix({2, 1}, 1).cast<cx>();
  const Eigen::MatrixXcd g2 = cx(0, 1) * yy_matrix({2, 1}, 2).cast<cx>();
  CHECK(lie_closure({g1}, 4).dimension == 1);
  const auto su2 = lie_closure({g1, g2}, 4);
  CHECK(su2.dimension == 3);
  Eigen::Matrix2cd px, py, pz;
  px << 0, 1, 1, 0;
  py << 0, cx(0, -1), cx(0, 1), 0;
  pz << 1, 0, 0, -1;
  for (const Eigen::Matrix2cd& s : {px, py, pz}) CHECK(in_real_span(su2, cx(0, 1) * s));
  // su(2) from Pauli generators is already closed
  CHECK(lie_closure({cx(0, 1) * px, cx(0, 1) * py, cx(0, 1) * pz}, 4).dimension == 3);
  // regular representation of three labels
  const auto reg = lie_closure({cx(0, 1) * regular_swap(3, 1), cx(0, 1) * regular_swap(3, 2)}, 36);
  CHECK(reg.dimension <= 6);
  CHECK_THROWS_AS(lie_closure({px.cast<cx>()}, 4), Error);
}

TEST_CASE("commutator combinations on the three-box irrep") {
  const Eigen::Matrix2d a = yy_matrix({2, 1}, 1), b = yy_matrix({2, 1}, 2);
  const Eigen::Matrix2d ab = a * b - b * a;
  const Eigen::Matrix2d aab = a * ab - ab * a;
  Eigen::Matrix2d px, pz;
  px << 0, 1, 1, 0;
  pz << 1, 0, 0, -1;
  CHECK(maxabs(aab / (2 * std::sqrt(3.0)) - px) <= 1e-12);
  // the other two point along sigma_y and sigma_z; their scale is checked by the acceptance suite
  const Eigen::Matrix2cd sy = cx(0, 1) / std::sqrt(3.0) * ab.cast<cx>();
  CHECK(std::abs(sy(0, 0)) <= 1e-12);
  CHECK(std::abs(sy(0, 1) + sy(1, 0)) <= 1e-12);
  CHECK(std::abs(sy(0, 1).real()) <= 1e-12);
  const Eigen::Matrix2d sz = (aab * ab - ab * aab) / 6.0;
  CHECK(std::abs(sz(0, 1)) + std::abs(sz(1, 0)) <= 1e-12);
  CHECK(std::abs(sz(0, 0) + sz(1, 1)) <= 1e-12);
}

TEST_CASE("path model") {
  CHECK(path_count(6, 0) == 5);
  CHECK(path_count(6, 2) == 9);
  CHECK(path_model({3, 3}).size() == 5);
  CHECK(path_model({4, 2}).size() == 9);
  const auto single = path_model({4});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::vector<int>{1, 1, 1, 1});
  for (const auto& path : path_model({4, 4})) {
    int h = 0;
    for (int step : path) {
      h += step;
      CHECK(h >= 0);
    }
    CHECK(h == 0);
  }
  for (int n = 1; n <= 8; ++n) CHECK(path_count(2 * n, 0) == catalan(n));
  CHECK(catalan(3) == 5);
}
