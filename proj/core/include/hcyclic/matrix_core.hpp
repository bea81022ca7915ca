#pragma once

// Dense complex matrices plus the small catalogue of structured matrices the
// rest of the library is phrased in: roots of unity, circulants, the cyclic
// shift K_n, Hadamard products, direct sums and Jordan blocks.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hcyclic {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// The h-th roots of unity omega^0, ..., omega^{h-1} with omega = exp(2 pi i / h).
///
/// Powers are tabulated once from the exact angle 2 pi k / h, so
/// power(a) * power(b) and power(a + b) agree to rounding and power(0) is
/// exactly 1.
class RootsOfUnity {
 public:
  explicit RootsOfUnity(int h);

  int order() const noexcept { return h_; }
  Complex omega() const { return powers_[h_ > 1 ? 1 : 0]; }

  /// omega^e for any integer exponent; reduced modulo h before lookup.
  Complex power(long long e) const;

  const std::vector<Complex>& powers() const noexcept { return powers_; }

 private:
  int h_;
  std::vector<Complex> powers_;
};

/// Entrywise product.
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

/// circ(c): first row is c, each following row is the previous one shifted
/// right by one position (row 2 starts with c_n).
ComplexMatrix circulant(std::span<const Complex> c);
ComplexMatrix circulant(const ComplexVector& c);

/// K_n = circ(0, 1, 0, ..., 0). Requires n >= 2.
ComplexMatrix cycle_matrix(int n);

/// Block-diagonal assembly. Every block must be square.
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);
ComplexMatrix direct_sum(std::initializer_list<ComplexMatrix> blocks);

/// J_r(lambda).
ComplexMatrix jordan_block(Complex lambda, int r);

/// J_r(lambda) (+) J_r(lambda omega) (+) ... (+) J_r(lambda omega^{h-1}).
ComplexMatrix orbit_jordan_form(Complex lambda, int r, int h);

/// C_k = circ(omega^k, 1, (omega^k)^{h-1}, ..., (omega^k)^2), 0 <= k < h.
ComplexMatrix circulant_rotation_matrix(int k, int h);

/// Max absolute row sum.
double inf_norm(const ComplexMatrix& a);
double inf_norm(const ComplexVector& v);

/// Largest entry modulus.
double max_abs(const ComplexMatrix& a);

/// Floored modulus: result lies in [0, m) for every integer a.
inline long long floor_mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace hcyclic
