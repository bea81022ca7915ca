#pragma once

// Random test instances shared by the unit tests, the acceptance suite, the
// CLI selftest and the benchmarks.
//
// Planted instances are A = S (K_h (x) R) S^{-1} with S = diag(S_1..S_h)
// random and R = W J_R W^{-1} carrying the planted Jordan structure. With
// nu_k = (1, omega^k, omega^2k, ...) and a Jordan chain w_1..w_r of R for
// rho, the vectors x_j = omega^{-k(j-1)} S (nu_k (x) w_j) form a Jordan
// chain of A for rho omega^k. None of this goes through the chain-rotation
// code, so the chains are an independent reference for it.
//
// Unequal class sizes n_l: R is m x m with m = min n_l, and block (l, l+1)
// is E_l R P_{l+1} with E_l the first m columns of S_l and P_l the first m
// rows of S_l^{-1}. P_l E_l = I keeps the chains above; the remaining
// n - h m eigenvalues are semisimple zeros.

#include <random>
#include <vector>

#include "hcyclic/chain_rotation.hpp"
#include "hcyclic/graph_structure.hpp"
#include "hcyclic/matrix_core.hpp"

namespace hcyclic {

struct PlantedBlock {
  Complex base{0.0, 0.0};
  int length = 1;
};

struct PlantOptions {
  int h = 2;
  int block_size = 2;  // m; the matrix has order h * m
  std::vector<int> block_sizes;  // overrides block_size when nonempty (size h)
  int max_chain_length = 3;
  bool allow_zero_eigenvalue = false;
};

struct PlantedInstance {
  int h = 0;
  ComplexMatrix matrix;
  OrderedPartition partition;  // cyclic partition in the frame of matrix
  Permutation scramble;        // identity unless scramble_instance was applied
  std::vector<PlantedBlock> plan;
  /// right_chains[b][k]: chain for plan[b].base * omega^k, unit max norm.
  std::vector<std::vector<JordanChain>> right_chains;
  /// Same layout; built from the rows u_j of W^{-1} as
  /// y_j = omega^{kj} (omega^{-kl} P_l^T u_j)_l.
  std::vector<std::vector<JordanChain>> left_chains;

  int order() const { return static_cast<int>(matrix.rows()); }
};

/// m x m complex Gaussian perturbation of the identity; condition number
/// stays modest.
ComplexMatrix random_well_conditioned(std::mt19937_64& rng, int m);

PlantedInstance random_planted_instance(std::mt19937_64& rng, const PlantOptions& options);

/// h class sizes in 1..max_n/h, not all equal in general.
std::vector<int> random_block_sizes(std::mt19937_64& rng, int h, int max_n);

/// Applies a random symmetric permutation to matrix, chains and partition.
void scramble_instance(PlantedInstance& instance, std::mt19937_64& rng);

struct NonnegativeInstance {
  int h = 0;
  ComplexMatrix matrix;
  OrderedPartition partition;
};

/// Nonnegative, irreducible, nonsingular, cyclic index exactly h, equal
/// block sizes, rows and columns randomly permuted.
NonnegativeInstance random_nonnegative_cyclic(std::mt19937_64& rng, int h, int block_size,
                                              double density = 0.7);

/// Strongly connected digraph on n vertices. The arc pattern is drawn
/// around a random period so that indices other than 1 show up often.
Digraph random_strongly_connected_digraph(std::mt19937_64& rng, int n);

}  // namespace hcyclic
