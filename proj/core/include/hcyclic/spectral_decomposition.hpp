#pragma once

// Eigenstructure of small dense h-cyclic matrices, organized into rotation
// orbits, and the component matrices A_lambda built two ways:
//
//   similarity:  A_lambda = Z diag(0, ..., J(lambda nu_h, r), ..., 0) Z^{-1}
//   blocks:      A_lambda[pi_l | pi_{l+1}] = lambda h sum_j x_{l,j} y_{j,l+1}^T
//                                          + h sum_{j<r} x_{l,j} y_{j+1,l+1}^T
//
// where x_j and y_j are the base (k = 0) right and left chains of the orbit
// restricted to the blocks of the consecutive partition.
//
// All matrices in OrbitBasis live in the consecutive frame, i.e. after the
// structure's consecutive_permutation has been applied to A.

#include <optional>
#include <string>
#include <vector>

#include "hcyclic/chain_rotation.hpp"
#include "hcyclic/graph_structure.hpp"
#include "hcyclic/matrix_core.hpp"

namespace hcyclic {

struct EigenCluster {
  Complex value{0.0, 0.0};  // mean of the clustered raw eigenvalues
  int multiplicity = 0;
};

/// Raw eigenvalues from a dense complex QR iteration.
std::vector<Complex> eigenvalues(const ComplexMatrix& a);

/// Eigenvalues grouped by single linkage at distance tol * ||A||_inf, sorted
/// by modulus (descending) then argument in [0, 2 pi).
std::vector<EigenCluster> eigendecompose(const ComplexMatrix& a, double tol);

struct RankOptions {
  /// Singular values <= rank_tol * sigma_max(A - lambda I) count as zero.
  double rank_tol = 1e-9;
  /// A singular value within this factor of the threshold (either side)
  /// makes the rank decision ambiguous, which is an error.
  double ambiguity_band = 10.0;
  /// Margins below this factor raise the ill-conditioning warning.
  double warn_margin = 1e3;
};

struct LadderDiagnostics {
  std::vector<int> nullities;  // dim ker of successive ladder steps
  double weakest_margin = 0.0;  // min distance (as a ratio) from threshold
  bool ill_conditioned = false;
};

/// Maximal set of independent right Jordan chains for lambda, longest first.
/// Each chain is scaled so its largest vector has unit infinity norm and the
/// largest entry of its eigenvector is real and positive.
std::vector<JordanChain> jordan_chains_for(const ComplexMatrix& a, Complex lambda,
                                           const RankOptions& options = {},
                                           LadderDiagnostics* diagnostics = nullptr);

struct SpectralOptions {
  double cluster_tol = 1e-4;   // eigenvalue clustering, relative to ||A||_inf
  double orbit_tol = 1e-8;     // orbit pairing and zero detection, relative
  double residual_tol = 1e-9;  // ||AZ - ZJ|| <= tol ||A|| ||Z||
  RankOptions rank;
};

struct OrbitBasis {
  int h = 0;
  Permutation permutation;     // original -> consecutive frame
  OrderedPartition partition;  // consecutive partition
  ComplexMatrix matrix;        // A in the consecutive frame
  ComplexMatrix z;
  ComplexMatrix z_inv;
  ComplexMatrix j;
  std::vector<SpectralOrbit> orbits;
  std::vector<int> orbit_offsets;  // first column of each orbit in z

  /// Chains for eigenvalue 0, stored after the orbits. Kept out of the
  /// component construction.
  std::vector<JordanChain> zero_chains;
  int zero_offset = 0;

  int jordan_block_count = 0;  // t: all Jordan blocks, zero ones included
  double basis_residual = 0.0;
  double residual_bound = 0.0;
  double z_condition = 0.0;
  std::vector<std::string> warnings;

  int orbit_count() const noexcept { return static_cast<int>(orbits.size()); }
};

/// Requires s.h >= 2. Throws kDecomposition on eigensolver failure, orbit
/// pairing failure, ambiguous rank decisions or a singular Z.
OrbitBasis build_orbit_basis(const ComplexMatrix& a, const CyclicStructure& s,
                             const SpectralOptions& options = {});

struct ComponentMatrix {
  Complex base_eigenvalue{0.0, 0.0};
  int chain_length = 0;
  ComplexMatrix matrix;
  std::vector<ComplexMatrix> blocks;  // matrix[pi_l | pi_{l+1}], l = 1..h

  /// Base right eigenvector and left eigenvector have no zero entries.
  bool eigenvectors_strictly_nonzero = false;
};

/// matrix[pi_l | pi_{l+1}] for each class l of p.
std::vector<ComplexMatrix> extract_cyclic_blocks(const ComplexMatrix& m, const OrderedPartition& p);

ComponentMatrix component_via_similarity(const OrbitBasis& basis, int orbit_index);

/// Needs right_chains[0] and left_chains[0] of equal length on a
/// consecutive partition.
ComponentMatrix component_via_blocks(const SpectralOrbit& orbit, const OrderedPartition& p);

/// Z diag(0, ..., nilpotent part) Z^{-1}; zero when A is nonsingular.
ComplexMatrix zero_eigenvalue_part(const OrbitBasis& basis);

/// Maps a consecutive-frame component back to the caller's indexing.
ComponentMatrix to_original_frame(const ComponentMatrix& c, const Permutation& perm,
                                  const OrderedPartition& original_partition);

struct ComponentCheck {
  Complex base_eigenvalue{0.0, 0.0};
  double norm = 0.0;
  bool contained = false;
  double containment_tol = 0.0;
  double commutator = 0.0;
  double commutator_tol = 0.0;
  bool commutes = false;
  /// Set when the index check applies (r = 1, strictly nonzero eigenvectors).
  std::optional<bool> cyclic_index_ok;
  int detected_h = 0;
};

struct AnnihilationCheck {
  int i = 0;
  int j = 0;
  double norm = 0.0;
  double tol = 0.0;
  bool ok = false;
};

struct ComponentReport {
  std::vector<ComponentCheck> components;
  std::vector<AnnihilationCheck> annihilation;
  double reconstruction = 0.0;
  double reconstruction_tol = 0.0;
  bool reconstruction_ok = false;
  bool all_passed = false;
};

/// Checks containment in chi_P, commutation with A, pairwise annihilation,
/// sum reconstruction (sum A_lambda + remainder = A) and, where it applies,
/// that A_lambda has cyclic index h. a, components and p must share a frame.
ComponentReport verify_component_properties(const ComplexMatrix& a,
                                            const std::vector<ComponentMatrix>& components,
                                            const OrderedPartition& p, double tol = 1e-9,
                                            const ComplexMatrix* remainder = nullptr);

}  // namespace hcyclic
