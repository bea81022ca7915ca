#include "hcyclic/graph_structure.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "hcyclic/error.hpp"

namespace hcyclic {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(who) + ": matrix is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + ", expected square");
  }
}

std::vector<int> bfs_levels(const Digraph& g, int root) {
  std::vector<int> level(static_cast<std::size_t>(g.vertex_count()), -1);
  std::queue<int> frontier;
  level[static_cast<std::size_t>(root)] = 0;
  frontier.push(root);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : g.successors(u)) {
      if (level[static_cast<std::size_t>(v)] < 0) {
        level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      }
    }
  }
  return level;
}

Digraph reversed(const Digraph& g) {
  Digraph r(g.vertex_count());
  for (const auto& [u, v] : g.arcs()) r.add_arc(v, u);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Digraph

Digraph::Digraph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "digraph needs at least one vertex, got " + std::to_string(vertex_count));
  }
  out_.resize(static_cast<std::size_t>(vertex_count));
}

Digraph::Digraph(int vertex_count, const std::vector<std::pair<int, int>>& arcs)
    : Digraph(vertex_count) {
  for (const auto& [u, v] : arcs) add_arc(u, v);
}

void Digraph::add_arc(int from, int to) {
  if (from < 0 || from >= n_ || to < 0 || to >= n_) {
    throw Error(ErrorKind::kInvalidArgument,
                "arc (" + std::to_string(from) + ", " + std::to_string(to) +
                    ") outside vertex range 0.." + std::to_string(n_ - 1));
  }
  auto& succ = out_[static_cast<std::size_t>(from)];
  const auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it != succ.end() && *it == to) return;
  succ.insert(it, to);
  ++arc_count_;
}

bool Digraph::has_arc(int from, int to) const {
  const auto& succ = out_[static_cast<std::size_t>(from)];
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
  std::vector<std::pair<int, int>> all;
  all.reserve(static_cast<std::size_t>(arc_count_));
  for (int u = 0; u < n_; ++u) {
    for (int v : out_[static_cast<std::size_t>(u)]) all.emplace_back(u, v);
  }
  return all;
}

// ---------------------------------------------------------------------------
// OrderedPartition

OrderedPartition::OrderedPartition(std::vector<std::vector<int>> classes)
    : classes_(std::move(classes)) {
  for (auto& c : classes_) std::sort(c.begin(), c.end());
}

OrderedPartition OrderedPartition::consecutive(const std::vector<int>& class_sizes) {
  std::vector<std::vector<int>> classes;
  int next = 0;
  for (int s : class_sizes) {
    std::vector<int> c(static_cast<std::size_t>(s));
    std::iota(c.begin(), c.end(), next);
    next += s;
    classes.push_back(std::move(c));
  }
  return OrderedPartition(std::move(classes));
}

int OrderedPartition::element_count() const {
  int total = 0;
  for (const auto& c : classes_) total += static_cast<int>(c.size());
  return total;
}

void OrderedPartition::validate(int n) const {
  std::vector<char> seen(static_cast<std::size_t>(std::max(n, 0)), 0);
  int covered = 0;
  for (std::size_t l = 0; l < classes_.size(); ++l) {
    if (classes_[l].empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "partition class " + std::to_string(l + 1) + " is empty");
    }
    for (int v : classes_[l]) {
      if (v < 0 || v >= n) {
        throw Error(ErrorKind::kInvalidArgument,
                    "partition member " + std::to_string(v) + " outside 0.." +
                        std::to_string(n - 1));
      }
      if (seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorKind::kInvalidArgument,
                    "partition member " + std::to_string(v) + " appears twice");
      }
      seen[static_cast<std::size_t>(v)] = 1;
      ++covered;
    }
  }
  if (covered != n) {
    throw Error(ErrorKind::kInvalidArgument,
                "partition covers " + std::to_string(covered) + " of " +
                    std::to_string(n) + " indices");
  }
}

std::vector<int> OrderedPartition::class_index(int n) const {
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (std::size_t l = 0; l < classes_.size(); ++l) {
    for (int v : classes_[l]) index[static_cast<std::size_t>(v)] = static_cast<int>(l);
  }
  return index;
}

bool OrderedPartition::is_consecutive() const {
  int next = 0;
  for (const auto& c : classes_) {
    for (int v : c) {
      if (v != next) return false;
      ++next;
    }
  }
  return true;
}

std::vector<int> OrderedPartition::offsets() const {
  std::vector<int> off;
  off.reserve(classes_.size());
  int next = 0;
  for (const auto& c : classes_) {
    off.push_back(next);
    next += static_cast<int>(c.size());
  }
  return off;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::identity(int n) {
  Permutation p;
  p.order.resize(static_cast<std::size_t>(n));
  std::iota(p.order.begin(), p.order.end(), 0);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.order.resize(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    inv.order[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
  }
  return inv;
}

ComplexMatrix permute_symmetric(const ComplexMatrix& a, const Permutation& p) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || p.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "permute_symmetric: size mismatch");
  }
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = a(p.order[static_cast<std::size_t>(i)], p.order[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

ComplexMatrix unpermute_symmetric(const ComplexMatrix& a, const Permutation& p) {
  return permute_symmetric(a, p.inverse());
}

ComplexVector permute_vector(const ComplexVector& v, const Permutation& p) {
  if (p.size() != v.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "permute_vector: size mismatch");
  }
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(p.order[static_cast<std::size_t>(i)]);
  return out;
}

ComplexVector unpermute_vector(const ComplexVector& v, const Permutation& p) {
  return permute_vector(v, p.inverse());
}

OrderedPartition CyclicStructure::consecutive_partition() const {
  std::vector<int> sizes;
  for (const auto& c : partition.classes()) sizes.push_back(static_cast<int>(c.size()));
  return OrderedPartition::consecutive(sizes);
}

// ---------------------------------------------------------------------------
// Structure detection

Digraph build_digraph(const ComplexMatrix& a, double zero_tol) {
  require_square(a, "build_digraph");
  if (zero_tol < 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "build_digraph: zero_tol must be >= 0");
  }
  const int n = static_cast<int>(a.rows());
  Digraph g(std::max(n, 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(a(i, j)) > zero_tol) g.add_arc(i, j);
    }
  }
  return g;
}

bool is_strongly_connected(const Digraph& g) {
  if (g.vertex_count() == 1) return true;
  const auto forward = bfs_levels(g, 0);
  if (std::find(forward.begin(), forward.end(), -1) != forward.end()) return false;
  const auto backward = bfs_levels(reversed(g), 0);
  return std::find(backward.begin(), backward.end(), -1) == backward.end();
}

int index_of_imprimitivity(const Digraph& g) {
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kNotStronglyConnected, "digraph is not strongly connected");
  }
  const auto level = bfs_levels(g, 0);
  int period = 0;
  for (const auto& [u, v] : g.arcs()) {
    const int gap = level[static_cast<std::size_t>(u)] + 1 - level[static_cast<std::size_t>(v)];
    period = std::gcd(period, std::abs(gap));
  }
  if (period == 0) {
    throw Error(ErrorKind::kAperiodicUndefined,
                "digraph has no closed walk; index of imprimitivity undefined");
  }
  return period;
}

OrderedPartition find_cyclic_partition(const Digraph& g, int h) {
  if (h < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "find_cyclic_partition: h must be >= 2, got " + std::to_string(h));
  }
  const int index = index_of_imprimitivity(g);
  if (index % h != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "find_cyclic_partition: h=" + std::to_string(h) +
                    " does not divide the index of imprimitivity " + std::to_string(index));
  }
  const auto level = bfs_levels(g, 0);
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(h));
  for (int v = 0; v < g.vertex_count(); ++v) {
    classes[static_cast<std::size_t>(level[static_cast<std::size_t>(v)] % h)].push_back(v);
  }
  return OrderedPartition(std::move(classes));
}

ComplexMatrix cyclic_characteristic_matrix(const OrderedPartition& p, int n) {
  p.validate(n);
  const int h = p.size();
  const auto cls = p.class_index(n);
  ComplexMatrix chi = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cls[static_cast<std::size_t>(j)] == (cls[static_cast<std::size_t>(i)] + 1) % h) {
        chi(i, j) = 1.0;
      }
    }
  }
  return chi;
}

bool digraph_contained_in(const ComplexMatrix& a, const ComplexMatrix& chi, double zero_tol) {
  if (a.rows() != chi.rows() || a.cols() != chi.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "digraph_contained_in: size mismatch");
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) > zero_tol && chi(i, j) != Complex(1.0, 0.0)) return false;
    }
  }
  return true;
}

Permutation consecutive_permutation(const OrderedPartition& p) {
  Permutation perm;
  for (const auto& c : p.classes()) perm.order.insert(perm.order.end(), c.begin(), c.end());
  return perm;
}

double cyclic_pattern_violation(const ComplexMatrix& a, const OrderedPartition& p) {
  const int n = static_cast<int>(a.rows());
  const auto cls = p.class_index(n);
  const int h = p.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cls[static_cast<std::size_t>(j)] != (cls[static_cast<std::size_t>(i)] + 1) % h) {
        worst = std::max(worst, std::abs(a(i, j)));
      }
    }
  }
  return worst;
}

double default_zero_tol(const ComplexMatrix& a) { return 1e-12 * max_abs(a); }

CyclicStructure detect_cyclic_structure(const ComplexMatrix& a, double zero_tol) {
  require_square(a, "detect_cyclic_structure");
  const Digraph g = build_digraph(a, zero_tol);
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kNotStronglyConnected,
                "matrix is reducible (digraph not strongly connected)");
  }
  const int n = g.vertex_count();
  CyclicStructure s;
  s.h = index_of_imprimitivity(g);
  if (s.h == 1) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    s.partition = OrderedPartition({all});
  } else {
    s.partition = find_cyclic_partition(g, s.h);
  }
  s.consecutive_permutation = consecutive_permutation(s.partition);
  s.characteristic = cyclic_characteristic_matrix(s.partition, n);
  return s;
}

}  // namespace hcyclic
