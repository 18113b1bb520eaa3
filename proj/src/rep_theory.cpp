#include "ballistic/rep_theory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ballistic/errors.hpp"
#include "ballistic/perm.hpp"

namespace ballistic {

void validate_partition(const Partition& shape) {
  require(!shape.empty(), "partition is empty");
  for (std::size_t r = 0; r < shape.size(); ++r) {
    require(shape[r] >= 1, "partition parts must be positive");
    if (r) require(shape[r] <= shape[r - 1], "partition parts must be non-ascending");
  }
}

namespace {

int size_of(const Partition& shape) {
  int n = 0;
  for (int p : shape) n += p;
  return n;
}

void partitions_rec(int left, int cap, Partition& cur, std::vector<Partition>& out) {
  if (left == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(left, cap); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(left - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n) {
  require(n >= 1, "partitions: n must be positive");
  std::vector<Partition> out;
  Partition cur;
  partitions_rec(n, n, cur, out);
  return out;
}

Partition dual(const Partition& shape) {
  validate_partition(shape);
  Partition d(shape[0], 0);
  for (int part : shape)
    for (int c = 0; c < part; ++c) ++d[c];
  return d;
}

std::string partition_str(const Partition& shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t r = 0; r < shape.size(); ++r) os << (r ? "," : "") << shape[r];
  os << ')';
  return os.str();
}

int StandardTableau::row_of(int entry) const {
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int v : rows[r])
      if (v == entry) return static_cast<int>(r);
  fail(ErrorKind::Input, "entry not in tableau");
}

int StandardTableau::column_of(int entry) const {
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] == entry) return static_cast<int>(c);
  fail(ErrorKind::Input, "entry not in tableau");
}

std::vector<int> StandardTableau::reading_word() const {
  std::vector<int> w;
  for (const auto& row : rows) w.insert(w.end(), row.begin(), row.end());
  return w;
}

std::uint64_t hook_dimension(const Partition& shape) {
  validate_partition(shape);
  const int n = size_of(shape);
  if (n > 20) fail(ErrorKind::Limit, "hook_dimension supports at most 20 boxes");
  const auto cols = dual(shape);
  // the hook product divides n! and so cannot overflow for n <= 20
  std::uint64_t product = 1;
  for (std::size_t r = 0; r < shape.size(); ++r)
    for (int c = 0; c < shape[r]; ++c) {
      const int arm = shape[r] - c - 1;
      const int leg = cols[static_cast<std::size_t>(c)] - static_cast<int>(r) - 1;
      product *= static_cast<std::uint64_t>(arm + leg + 1);
    }
  return factorial(n) / product;
}

namespace {

void tableaux_rec(const Partition& shape, int next, int n, StandardTableau& cur,
                  std::vector<StandardTableau>& out) {
  if (next > n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t r = 0; r < shape.size(); ++r) {
    const auto len = cur.rows[r].size();
    if (static_cast<int>(len) >= shape[r]) continue;
    if (r > 0 && cur.rows[r - 1].size() <= len) continue;
    cur.rows[r].push_back(next);
    tableaux_rec(shape, next + 1, n, cur, out);
    cur.rows[r].pop_back();
  }
}

}  // namespace

std::vector<StandardTableau> standard_tableaux(const Partition& shape) {
  validate_partition(shape);
  StandardTableau cur;
  cur.shape = shape;
  cur.rows.assign(shape.size(), {});
  std::vector<StandardTableau> out;
  tableaux_rec(shape, 1, size_of(shape), cur, out);
  std::sort(out.begin(), out.end(), [](const StandardTableau& a, const StandardTableau& b) {
    return a.reading_word() < b.reading_word();
  });
  return out;
}

int axial_distance(const StandardTableau& t, int k) {
  const int n = size_of(t.shape);
  require(k >= 1 && k <= n - 1, "axial_distance: k out of range");
  return (t.column_of(k + 1) - t.column_of(k)) - (t.row_of(k + 1) - t.row_of(k));
}

namespace {

StandardTableau swap_entries(const StandardTableau& t, int k) {
  StandardTableau s = t;
  for (auto& row : s.rows)
    for (auto& v : row) {
      if (v == k) v = k + 1;
      else if (v == k + 1) v = k;
    }
  return s;
}

}  // namespace

Eigen::MatrixXd yy_matrix(const Partition& shape, int k) {
  const auto basis = standard_tableaux(shape);
  const int n = size_of(shape);
  require(k >= 1 && k <= n - 1, "yy_matrix: k out of range");
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i].reading_word()] = static_cast<int>(i);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& t = basis[static_cast<std::size_t>(i)];
    const double d = axial_distance(t, k);
    m(i, i) = 1.0 / d;
    if (std::abs(d) > 1.0) {
      const int j = index.at(swap_entries(t, k).reading_word());
      m(j, i) = std::sqrt(1.0 - 1.0 / (d * d));
    }
  }
  return m;
}

IrrepReport verify_irrep_relations(const Partition& shape) {
  validate_partition(shape);
  const int n = size_of(shape);
  if (n > 8) fail(ErrorKind::Limit, "relation check supports at most 8 boxes");
  IrrepReport rep;
  rep.shape = shape;
  rep.dimension = hook_dimension(shape);
  std::vector<Eigen::MatrixXd> gens;
  for (int k = 1; k <= n - 1; ++k) gens.push_back(yy_matrix(shape, k));
  auto maxabs = [](const Eigen::MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; };
  for (std::size_t a = 0; a < gens.size(); ++a) {
    const auto& m = gens[a];
    const auto id = Eigen::MatrixXd::Identity(m.rows(), m.cols());
    rep.involution = std::max(rep.involution, maxabs(m * m - id));
    rep.symmetry = std::max(rep.symmetry, maxabs(m - m.transpose()));
    for (std::size_t b = a + 2; b < gens.size(); ++b)
      rep.commuting = std::max(rep.commuting, maxabs(m * gens[b] - gens[b] * m));
    if (a + 1 < gens.size()) {
      const auto& p = gens[a + 1];
      rep.braid = std::max(rep.braid, maxabs(m * p * m - p * m * p));
    }
  }
  return rep;
}

BranchingReport branching_check(const Partition& shape) {
  validate_partition(shape);
  const int n = size_of(shape);
  require(n >= 2, "branching needs at least two boxes");
  const auto basis = standard_tableaux(shape);
  // group tableaux by the row holding n
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < basis.size(); ++i) groups[basis[i].row_of(n)].push_back(static_cast<int>(i));
  BranchingReport rep;
  std::vector<int> group_of(basis.size());
  struct Piece {
    Partition sub;
    std::vector<int> members;       // indices into the big basis
    std::vector<int> sub_index;     // matching index in the sub basis
  };
  std::vector<Piece> pieces;
  for (const auto& [row, members] : groups) {
    Piece pc;
    pc.sub = shape;
    --pc.sub[static_cast<std::size_t>(row)];
    if (pc.sub.back() == 0) pc.sub.pop_back();
    const auto sub_basis = standard_tableaux(pc.sub);
    std::map<std::vector<int>, int> idx;
    for (std::size_t i = 0; i < sub_basis.size(); ++i) idx[sub_basis[i].reading_word()] = static_cast<int>(i);
    for (int m : members) {
      StandardTableau t = basis[static_cast<std::size_t>(m)];
      auto& r = t.rows[static_cast<std::size_t>(row)];
      r.pop_back();
      if (r.empty()) t.rows.pop_back();
      t.shape = pc.sub;
      pc.members.push_back(m);
      pc.sub_index.push_back(idx.at(t.reading_word()));
      group_of[static_cast<std::size_t>(m)] = static_cast<int>(pieces.size());
    }
    rep.pieces.push_back(pc.sub);
    pieces.push_back(std::move(pc));
  }
  double worst = 0.0;
  for (int k = 1; k <= n - 2; ++k) {
    const auto big = yy_matrix(shape, k);
    for (Eigen::Index i = 0; i < big.rows(); ++i)
      for (Eigen::Index j = 0; j < big.cols(); ++j)
        if (group_of[static_cast<std::size_t>(i)] != group_of[static_cast<std::size_t>(j)])
          worst = std::max(worst, std::abs(big(i, j)));
    for (const auto& pc : pieces) {
      const auto small = yy_matrix(pc.sub, k);
      for (std::size_t a = 0; a < pc.members.size(); ++a)
        for (std::size_t b = 0; b < pc.members.size(); ++b)
          worst = std::max(worst, std::abs(big(pc.members[a], pc.members[b]) -
                                           small(pc.sub_index[a], pc.sub_index[b])));
    }
  }
  rep.residual = worst;
  rep.ok = worst <= 1e-12;
  return rep;
}

namespace {

double real_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a.adjoint() * b).trace().real();
}

// Removes the components along an orthonormal basis (twice, for stability).
Eigen::MatrixXcd residual_against(const std::vector<Eigen::MatrixXcd>& basis, Eigen::MatrixXcd m) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) m -= real_inner(b, m) * b;
  return m;
}

}  // namespace

LieClosure lie_closure(const std::vector<Eigen::MatrixXcd>& generators, int max_dim) {
  require(!generators.empty(), "lie_closure needs generators");
  const auto rows = generators.front().rows();
  for (const auto& g : generators) {
    require(g.rows() == rows && g.cols() == rows, "generators must be square and equal-sized");
    require((g + g.adjoint()).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, g.cwiseAbs().maxCoeff()),
            "generators must be anti-Hermitian");
  }
  LieClosure out;
  // A candidate is new when its residual is above 1e-9 of its own size,
  // i.e. the smallest singular value of the normalized augmented set.
  auto offer = [&](const Eigen::MatrixXcd& m) {
    const double size = m.norm();
    if (size < 1e-14) return;
    const auto r = residual_against(out.basis, m);
    const double rn = r.norm();
    if (rn <= 1e-9 * size) return;
    if (static_cast<int>(out.basis.size()) >= max_dim)
      fail(ErrorKind::Limit, "Lie closure dimension exceeds the requested maximum");
    out.basis.push_back(r / rn);
  };
  for (const auto& g : generators) offer(g);
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const Eigen::MatrixXcd c = out.basis[i] * out.basis[j] - out.basis[j] * out.basis[i];
      offer(c);
    }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

bool in_real_span(const LieClosure& algebra, const Eigen::MatrixXcd& m, double tol) {
  const double size = m.norm();
  if (size == 0.0) return true;
  return residual_against(algebra.basis, m).norm() <= tol * size;
}

std::vector<std::vector<int>> path_model(const Partition& shape) {
  validate_partition(shape);
  require(shape.size() <= 2, "path model needs at most two rows");
  std::vector<std::vector<int>> paths;
  for (const auto& t : standard_tableaux(shape)) {
    std::vector<int> steps;
    const int n = size_of(shape);
    for (int j = 1; j <= n; ++j) steps.push_back(t.row_of(j) == 0 ? 1 : -1);
    paths.push_back(std::move(steps));
  }
  return paths;
}

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

std::uint64_t path_count(int length, int end_height) {
  require(length >= 0 && length <= 60, "path length out of range");
  if (end_height < 0 || end_height > length || (length - end_height) % 2) return 0;
  const int down = (length - end_height) / 2;
  return binomial(length, down) - binomial(length, down - 1);
}

std::uint64_t catalan(int n) {
  require(n >= 0 && n <= 30, "catalan: n out of range");
  return binomial(2 * n, n) / static_cast<std::uint64_t>(n + 1);
}

}  // namespace ballistic
