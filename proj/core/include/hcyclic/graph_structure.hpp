#pragma once

// Zero-pattern structure of a square matrix: its digraph, strong
// connectivity, the index of imprimitivity and the cyclic partition that
// realizes it.
//
// Vertices and partition members are 0-based throughout the library. Reports
// meant for people (CLI text and JSON) print them 1-based.

#include <utility>
#include <vector>

#include "hcyclic/matrix_core.hpp"

namespace hcyclic {

/// Directed graph on vertices 0..n-1 with a duplicate-free arc set.
class Digraph {
 public:
  explicit Digraph(int vertex_count);
  Digraph(int vertex_count, const std::vector<std::pair<int, int>>& arcs);

  int vertex_count() const noexcept { return n_; }
  int arc_count() const noexcept { return arc_count_; }

  /// Adds (from, to); a repeated arc is ignored.
  void add_arc(int from, int to);
  bool has_arc(int from, int to) const;

  /// Out-neighbours in ascending order.
  const std::vector<int>& successors(int v) const { return out_[static_cast<std::size_t>(v)]; }

  /// All arcs, sorted lexicographically.
  std::vector<std::pair<int, int>> arcs() const;

 private:
  int n_;
  int arc_count_ = 0;
  std::vector<std::vector<int>> out_;
};

/// Ordered list of disjoint nonempty index classes. Each class is kept in
/// ascending order.
class OrderedPartition {
 public:
  OrderedPartition() = default;
  explicit OrderedPartition(std::vector<std::vector<int>> classes);

  /// (0..s_1-1), (s_1..s_1+s_2-1), ...
  static OrderedPartition consecutive(const std::vector<int>& class_sizes);

  int size() const noexcept { return static_cast<int>(classes_.size()); }
  const std::vector<int>& operator[](int l) const { return classes_[static_cast<std::size_t>(l)]; }
  const std::vector<std::vector<int>>& classes() const noexcept { return classes_; }
  int element_count() const;

  /// Throws kInvalidArgument unless the classes partition {0..n-1}.
  void validate(int n) const;

  /// class_index()[v] is the class holding v. Requires validate(n) to hold.
  std::vector<int> class_index(int n) const;

  /// Classes are contiguous ascending intervals, in order.
  bool is_consecutive() const;

  /// Starting offset of each class; meaningful when is_consecutive().
  std::vector<int> offsets() const;

  bool operator==(const OrderedPartition&) const = default;

 private:
  std::vector<std::vector<int>> classes_;
};

/// order[p] is the original index placed at position p, so the permuted
/// matrix is M'(p, q) = M(order[p], order[q]).
struct Permutation {
  std::vector<int> order;

  static Permutation identity(int n);
  int size() const noexcept { return static_cast<int>(order.size()); }
  bool is_identity() const;
  Permutation inverse() const;
  bool operator==(const Permutation&) const = default;
};

ComplexMatrix permute_symmetric(const ComplexMatrix& a, const Permutation& p);
ComplexMatrix unpermute_symmetric(const ComplexMatrix& a, const Permutation& p);
ComplexVector permute_vector(const ComplexVector& v, const Permutation& p);
ComplexVector unpermute_vector(const ComplexVector& v, const Permutation& p);

/// Result of cyclic structure detection. h == 1 means the digraph is
/// primitive; the partition is then the single class {0..n-1}.
struct CyclicStructure {
  int h = 1;
  OrderedPartition partition;
  Permutation consecutive_permutation;
  ComplexMatrix characteristic;

  bool primitive() const noexcept { return h == 1; }

  /// Partition after applying consecutive_permutation.
  OrderedPartition consecutive_partition() const;
};

/// Arc (i, j) present iff |a_ij| > zero_tol.
Digraph build_digraph(const ComplexMatrix& a, double zero_tol);

/// Every ordered pair joined by a walk. A single vertex counts as strongly
/// connected whether or not it carries a loop.
bool is_strongly_connected(const Digraph& g);

/// gcd of closed-walk lengths, from BFS levels d as gcd over arcs (u, v)
/// of |d(u) + 1 - d(v)|. Throws kNotStronglyConnected, or
/// kAperiodicUndefined for a loop-free single vertex.
int index_of_imprimitivity(const Digraph& g);

/// Classes {v : d(v) = l (mod h)} for BFS levels from vertex 0, so vertex 0
/// always sits in the first class. h must be >= 2 and divide the index.
OrderedPartition find_cyclic_partition(const Digraph& g, int h);

/// chi_P: 1 at (i, j) iff i is in class l and j in class l+1 (mod h).
ComplexMatrix cyclic_characteristic_matrix(const OrderedPartition& p, int n);

/// Every entry with modulus > zero_tol sits on a 1 of chi.
bool digraph_contained_in(const ComplexMatrix& a, const ComplexMatrix& chi, double zero_tol);

/// Sends class 1 to the first positions (ascending inside a class), then
/// class 2, and so on.
Permutation consecutive_permutation(const OrderedPartition& p);

/// Largest modulus among entries that the cyclic pattern of p forbids.
double cyclic_pattern_violation(const ComplexMatrix& a, const OrderedPartition& p);

/// 1e-12 * max |a_ij|. Exact zeros stay zero under any nonnegative tolerance,
/// so this only matters for rounding-level noise.
double default_zero_tol(const ComplexMatrix& a);

/// Throws kNotStronglyConnected for a reducible pattern.
CyclicStructure detect_cyclic_structure(const ComplexMatrix& a, double zero_tol);

}  // namespace hcyclic
