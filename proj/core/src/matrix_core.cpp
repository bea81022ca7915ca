#include "hcyclic/matrix_core.hpp"

#include <numbers>
#include <string>

#include "hcyclic/error.hpp"

namespace hcyclic {

RootsOfUnity::RootsOfUnity(int h) : h_(h) {
  if (h < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "roots of unity need h >= 1, got " + std::to_string(h));
  }
  powers_.reserve(static_cast<std::size_t>(h));
  powers_.emplace_back(1.0, 0.0);
  for (int k = 1; k < h; ++k) {
    powers_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / h));
  }
}

Complex RootsOfUnity::power(long long e) const {
  return powers_[static_cast<std::size_t>(floor_mod(e, h_))];
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "hadamard: operands are " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " and " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return a.cwiseProduct(b);
}

ComplexMatrix circulant(std::span<const Complex> c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  if (n == 0) {
    throw Error(ErrorKind::kInvalidArgument, "circulant of an empty vector");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = c[static_cast<std::size_t>(floor_mod(j - i, n))];
    }
  }
  return m;
}

ComplexMatrix circulant(const ComplexVector& c) {
  return circulant(std::span<const Complex>(c.data(), static_cast<std::size_t>(c.size())));
}

ComplexMatrix cycle_matrix(int n) {
  if (n < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "cycle_matrix: K_n is defined for n >= 2, got " + std::to_string(n));
  }
  std::vector<Complex> c(static_cast<std::size_t>(n), Complex{0.0, 0.0});
  c[1] = 1.0;
  return circulant(c);
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "direct_sum: block is " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()) + ", expected square");
    }
    n += b.rows();
  }
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    m.block(offset, offset, b.rows(), b.cols()) = b;
    offset += b.rows();
  }
  return m;
}

ComplexMatrix direct_sum(std::initializer_list<ComplexMatrix> blocks) {
  return direct_sum(std::span<const ComplexMatrix>(blocks.begin(), blocks.size()));
}

ComplexMatrix jordan_block(Complex lambda, int r) {
  if (r < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "jordan_block: size must be >= 1, got " + std::to_string(r));
  }
  ComplexMatrix j = ComplexMatrix::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    j(i, i) = lambda;
    if (i + 1 < r) j(i, i + 1) = 1.0;
  }
  return j;
}

ComplexMatrix orbit_jordan_form(Complex lambda, int r, int h) {
  if (h < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "orbit_jordan_form: h must be >= 2, got " + std::to_string(h));
  }
  const RootsOfUnity roots(h);
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(h));
  for (int k = 0; k < h; ++k) {
    blocks.push_back(jordan_block(lambda * roots.power(k), r));
  }
  return direct_sum(blocks);
}

ComplexMatrix circulant_rotation_matrix(int k, int h) {
  if (h < 2 || k < 0 || k >= h) {
    throw Error(ErrorKind::kInvalidArgument,
                "circulant_rotation_matrix: need 0 <= k < h and h >= 2, got k=" +
                    std::to_string(k) + " h=" + std::to_string(h));
  }
  const RootsOfUnity roots(h);
  // First row entry m carries exponent ((-m) mod h) + 1 of omega^k.
  std::vector<Complex> c(static_cast<std::size_t>(h));
  for (int m = 0; m < h; ++m) {
    c[static_cast<std::size_t>(m)] =
        roots.power(static_cast<long long>(k) * (floor_mod(-m, h) + 1));
  }
  return circulant(c);
}

double inf_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

double inf_norm(const ComplexVector& v) {
  if (v.size() == 0) return 0.0;
  return v.cwiseAbs().maxCoeff();
}

double max_abs(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

}  // namespace hcyclic
