#include "hcyclic/chain_rotation.hpp"

#include <algorithm>
#include <string>

#include "hcyclic/error.hpp"

namespace hcyclic {

namespace {

void check_rotation_inputs(const JordanChain& chain, int k, const OrderedPartition& p) {
  const int h = p.size();
  if (h < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "chain rotation needs a partition with h >= 2 classes");
  }
  if (k < 0 || k >= h) {
    throw Error(ErrorKind::kInvalidArgument,
                "k must lie in 0.." + std::to_string(h - 1) + ", got " + std::to_string(k));
  }
  if (!p.is_consecutive()) {
    throw Error(ErrorKind::kInvalidArgument,
                "chain rotation requires a consecutive partition; permute first");
  }
  if (chain.vectors.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "empty Jordan chain");
  }
  const int n = p.element_count();
  for (const auto& v : chain.vectors) {
    if (v.size() != n) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "chain vector has dimension " + std::to_string(v.size()) +
                      ", partition covers " + std::to_string(n));
    }
  }
}

// exponent(l, j) selects alpha(l, j) for right chains, alpha(j, l) for left.
template <typename Exponent>
JordanChain scale_blocks(const JordanChain& chain, int k, const OrderedPartition& p,
                         Exponent exponent) {
  const int h = p.size();
  const RootsOfUnity roots(h);
  JordanChain out = chain;
  out.eigenvalue = chain.eigenvalue * roots.power(k);
  if (k == 0) return out;
  const auto offsets = p.offsets();
  for (int j = 0; j < chain.length(); ++j) {
    auto& v = out.vectors[static_cast<std::size_t>(j)];
    for (int l = 0; l < h; ++l) {
      const Complex factor = roots.power(static_cast<long long>(k) * exponent(l, j));
      v.segment(offsets[static_cast<std::size_t>(l)], static_cast<Eigen::Index>(p[l].size())) *= factor;
    }
  }
  return out;
}

}  // namespace

int alpha(long long i, long long j, int h) {
  if (h < 2) {
    throw Error(ErrorKind::kInvalidArgument, "alpha: h must be >= 2, got " + std::to_string(h));
  }
#ifdef HCYCLIC_MUTATE_ALPHA
  // Deliberately wrong sign; only compiled into the mutation-testing build.
  return static_cast<int>(floor_mod(j - i, h));
#else
  return static_cast<int>(floor_mod(i - j, h));
#endif
}

JordanChain rotate_right_chain(const JordanChain& chain, int k, const OrderedPartition& p) {
  if (chain.side != ChainSide::kRight) {
    throw Error(ErrorKind::kInvalidArgument, "rotate_right_chain given a left chain");
  }
  check_rotation_inputs(chain, k, p);
  const int h = p.size();
  // Block and chain indices are 0-based here; alpha only sees differences.
  return scale_blocks(chain, k, p, [h](int l, int j) { return alpha(l, j, h); });
}

JordanChain rotate_left_chain(const JordanChain& chain, int k, const OrderedPartition& p) {
  if (chain.side != ChainSide::kLeft) {
    throw Error(ErrorKind::kInvalidArgument, "rotate_left_chain given a right chain");
  }
  check_rotation_inputs(chain, k, p);
  const int h = p.size();
  return scale_blocks(chain, k, p, [h](int l, int j) { return alpha(j, l, h); });
}

JordanChain rotate_chain(const JordanChain& chain, int k, const OrderedPartition& p) {
  return chain.side == ChainSide::kRight ? rotate_right_chain(chain, k, p)
                                         : rotate_left_chain(chain, k, p);
}

double default_chain_tol(const ComplexMatrix& a, const JordanChain& chain) {
  double vec_scale = 0.0;
  for (const auto& v : chain.vectors) vec_scale = std::max(vec_scale, inf_norm(v));
  return 1e-9 * std::max(inf_norm(a), 1.0) * std::max(vec_scale, 1e-300);
}

ChainResidual verify_chain(const ComplexMatrix& a, const JordanChain& chain, double tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "verify_chain: matrix is not square");
  }
  for (const auto& v : chain.vectors) {
    if (v.size() != a.rows()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "verify_chain: vector dimension " + std::to_string(v.size()) +
                      " vs matrix order " + std::to_string(a.rows()));
    }
  }
  ChainResidual report;
  report.tolerance = tol;
  const int r = chain.length();
  const Complex lambda = chain.eigenvalue;
  for (int j = 0; j < r; ++j) {
    const auto& v = chain.vectors[static_cast<std::size_t>(j)];
    ComplexVector res;
    if (chain.side == ChainSide::kRight) {
      res = a * v - lambda * v;
      if (j > 0) res -= chain.vectors[static_cast<std::size_t>(j - 1)];
    } else {
      res = a.transpose() * v - lambda * v;
      if (j + 1 < r) res -= chain.vectors[static_cast<std::size_t>(j + 1)];
    }
    const double norm = inf_norm(res);
    report.link_residuals.push_back(norm);
    report.max_residual = std::max(report.max_residual, norm);
  }
  report.passed = r > 0 && report.max_residual <= tol;
  return report;
}

ChainResidual verify_chain(const ComplexMatrix& a, const JordanChain& chain) {
  return verify_chain(a, chain, default_chain_tol(a, chain));
}

SpectralOrbit rotate_all(const JordanChain& chain, const OrderedPartition& p) {
  SpectralOrbit orbit;
  orbit.base_eigenvalue = chain.eigenvalue;
  orbit.chain_length = chain.length();
  orbit.h = p.size();
  auto& target = chain.side == ChainSide::kRight ? orbit.right_chains : orbit.left_chains;
  for (int k = 0; k < p.size(); ++k) target.push_back(rotate_chain(chain, k, p));
  return orbit;
}

}  // namespace hcyclic
