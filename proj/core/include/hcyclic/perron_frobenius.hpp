#pragma once

// Nonnegative irreducible (possibly imprimitive) matrices: Perron data by
// shifted power iteration, the peripheral-spectrum and rotation-invariance
// checks, and the nonnegative Perron component h [x_l y_{l+1}^T].

#include <vector>

#include "hcyclic/graph_structure.hpp"
#include "hcyclic/matrix_core.hpp"
#include "hcyclic/spectral_decomposition.hpp"

namespace hcyclic {

struct PerronData {
  double spectral_radius = 0.0;
  ComplexVector right;  // real positive, ||x||_1 = 1
  ComplexVector left;   // real positive, y^T x = 1
  int cyclic_index = 0;
  double right_residual = 0.0;  // ||A x - rho x||_inf
  double left_residual = 0.0;   // ||y^T A - rho y^T||_inf
  int iterations = 0;
};

/// Entries >= -zero_tol and strongly connected digraph. Throws
/// kInvalidArgument when an imaginary part exceeds zero_tol.
bool is_nonnegative_irreducible(const ComplexMatrix& a, double zero_tol);

struct PowerIterationOptions {
  double tol = 1e-12;  // residual bound relative to ||A||_inf ||x||_inf
  int max_iterations = 200000;
};

/// Power iteration on A + ||A||_inf I, polished by a few inverse-iteration
/// steps. Throws kDecomposition when the iteration budget runs out.
PerronData perron_data(const ComplexMatrix& a, const PowerIterationOptions& options = {});

/// Bottleneck distance between two equal-size multisets of complex numbers:
/// the smallest d admitting a perfect matching with every pair within d.
/// Infinite when the sizes differ.
double multiset_distance(const std::vector<Complex>& x, const std::vector<Complex>& y);

struct PeripheralReport {
  double spectral_radius = 0.0;
  std::vector<Complex> peripheral;
  std::vector<Complex> expected;  // rho omega^k
  double peripheral_error = 0.0;
  bool peripheral_ok = false;
  double rotation_error = 0.0;  // distance between sigma(A) and omega sigma(A)
  bool rotation_ok = false;
  double tol = 0.0;  // absolute, tol_rel * max(1, rho)
};

/// Peripheral spectrum equals {rho omega^k} and the spectrum is invariant
/// under multiplication by omega, both within tol_rel * max(1, rho).
PeripheralReport check_peripheral_rotation(const ComplexMatrix& a, int h, double tol_rel = 1e-8);

/// h [x_l y_{l+1}^T] placed on the cyclic pattern of s.partition, in the
/// frame of A. Requires rho = 1 within rho_tol.
ComponentMatrix perron_component(const ComplexMatrix& a, const PerronData& pd,
                                 const CyclicStructure& s, double rho_tol = 1e-9);

}  // namespace hcyclic
