#pragma once

// Jordan chains of h-cyclic matrices and their rotation around the
// eigenvalue orbit {lambda omega^k}.
//
// For A in consecutive block-cyclic form with partition (pi_1, ..., pi_h), a
// right chain x_1..x_r for lambda becomes a right chain for lambda omega^k
// when block l of x_j is multiplied by (omega^k)^alpha(l, j), with
// alpha(i, j) = (i - j) mod h. Left chains scale block l of y_j by
// (omega^k)^alpha(j, l).

#include <vector>

#include "hcyclic/graph_structure.hpp"
#include "hcyclic/matrix_core.hpp"

namespace hcyclic {

enum class ChainSide { kRight, kLeft };

/// Right chains satisfy A x_1 = lambda x_1 and A x_j = x_{j-1} + lambda x_j.
/// Left chains are stored as columns y_j and satisfy y_r^T A = lambda y_r^T
/// and y_j^T A = lambda y_j^T + y_{j+1}^T (plain transpose, no conjugation).
struct JordanChain {
  ChainSide side = ChainSide::kRight;
  Complex eigenvalue{0.0, 0.0};
  std::vector<ComplexVector> vectors;

  int length() const noexcept { return static_cast<int>(vectors.size()); }
  int dimension() const noexcept { return vectors.empty() ? 0 : static_cast<int>(vectors.front().size()); }
};

/// (i - j) mod h with the nonnegative representative. h >= 2.
int alpha(long long i, long long j, int h);

JordanChain rotate_right_chain(const JordanChain& chain, int k, const OrderedPartition& p);
JordanChain rotate_left_chain(const JordanChain& chain, int k, const OrderedPartition& p);

/// Dispatches on chain.side.
JordanChain rotate_chain(const JordanChain& chain, int k, const OrderedPartition& p);

struct ChainResidual {
  std::vector<double> link_residuals;  // infinity norm, one per chain vector
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// 1e-9 * max(||A||_inf, 1) * max_j ||x_j||_inf.
double default_chain_tol(const ComplexMatrix& a, const JordanChain& chain);

ChainResidual verify_chain(const ComplexMatrix& a, const JordanChain& chain, double tol);
ChainResidual verify_chain(const ComplexMatrix& a, const JordanChain& chain);

/// One Jordan-chain orbit: chains k = 0..h-1 for base * omega^k.
struct SpectralOrbit {
  Complex base_eigenvalue{0.0, 0.0};
  int chain_length = 0;
  int h = 0;
  std::vector<JordanChain> right_chains;
  std::vector<JordanChain> left_chains;
};

/// All h rotations of a chain. Fills right_chains or left_chains according
/// to the chain's side.
SpectralOrbit rotate_all(const JordanChain& chain, const OrderedPartition& p);

}  // namespace hcyclic
