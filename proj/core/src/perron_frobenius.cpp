#include "hcyclic/perron_frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "hcyclic/error.hpp"

namespace hcyclic {

namespace {

struct RealEigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
  int iterations = 0;
};

double rayleigh(const Eigen::MatrixXd& a, const Eigen::VectorXd& x) {
  return x.dot(a * x) / x.squaredNorm();
}

double residual_of(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, double rho) {
  return (a * x - rho * x).cwiseAbs().maxCoeff();
}

// Dominant eigenpair of a nonnegative irreducible matrix. The shift makes
// rho + shift the unique eigenvalue of largest modulus even when the
// peripheral spectrum has h > 1 members.
RealEigenpair shifted_power_iteration(const Eigen::MatrixXd& a, const PowerIterationOptions& options) {
  const Eigen::Index n = a.rows();
  const double norm = std::max(a.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  const double shift = norm;
  RealEigenpair out;
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double rho = rayleigh(a, x);
  bool coarse = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd y = a * x + shift * x;
    x = y / y.sum();
    out.iterations = it;
    if (it % 8 == 0 || it == options.max_iterations) {
      rho = rayleigh(a, x);
      if (residual_of(a, x, rho) <= 1e-7 * norm * x.cwiseAbs().maxCoeff()) {
        coarse = true;
        break;
      }
    }
  }
  if (!coarse) {
    throw Error(ErrorKind::kDecomposition,
                "power iteration did not converge within " + std::to_string(options.max_iterations) +
                    " iterations");
  }
  // Inverse iteration just off the estimate: each step contracts by about
  // offset / (gap to the next eigenvalue).
  for (int polish = 0; polish < 4; ++polish) {
    const double offset = 1e-10 * norm;
    const Eigen::MatrixXd shifted = a - (rho + offset) * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd z = shifted.partialPivLu().solve(x);
    if (!z.allFinite() || z.sum() == 0.0) break;
    x = z / z.sum();
    rho = rayleigh(a, x);
  }
  out.value = rho;
  out.vector = x;
  out.residual = residual_of(a, x, rho);
  if (out.residual > options.tol * norm * x.cwiseAbs().maxCoeff()) {
    std::ostringstream msg;
    msg << "Perron vector residual " << out.residual << " above tolerance";
    throw Error(ErrorKind::kDecomposition, msg.str());
  }
  return out;
}

bool has_perfect_matching(const std::vector<std::vector<double>>& dist, double limit) {
  const std::size_t n = dist.size();
  std::vector<int> match(n, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[u][v] > limit || seen[v]) continue;
      seen[v] = 1;
      if (match[v] < 0 || self(self, static_cast<std::size_t>(match[v]))) {
        match[v] = static_cast<int>(u);
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    seen.assign(n, 0);
    if (!augment(augment, u)) return false;
  }
  return true;
}

}  // namespace

bool is_nonnegative_irreducible(const ComplexMatrix& a, double zero_tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "is_nonnegative_irreducible: matrix is not square");
  }
  if (a.imag().cwiseAbs().maxCoeff() > zero_tol) {
    throw Error(ErrorKind::kInvalidArgument, "matrix has complex entries; nonnegativity is undefined");
  }
  if (a.real().minCoeff() < -zero_tol) return false;
  return is_strongly_connected(build_digraph(a, zero_tol));
}

PerronData perron_data(const ComplexMatrix& a, const PowerIterationOptions& options) {
  const double zero_tol = default_zero_tol(a);
  if (!is_nonnegative_irreducible(a, zero_tol)) {
    throw Error(ErrorKind::kInvalidArgument, "perron_data requires a nonnegative irreducible matrix");
  }
  const Eigen::MatrixXd real = a.real();
  const Eigen::Index n = real.rows();
  PerronData pd;
  if (n == 1) {
    pd.spectral_radius = real(0, 0);
    pd.right = ComplexVector::Ones(1);
    pd.left = ComplexVector::Ones(1);
    pd.cyclic_index = real(0, 0) > zero_tol ? 1 : 0;
    return pd;
  }
  const auto right = shifted_power_iteration(real, options);
  const auto left = shifted_power_iteration(real.transpose(), options);
  Eigen::VectorXd x = right.vector / right.vector.sum();
  Eigen::VectorXd y = left.vector / left.vector.dot(x);
  pd.spectral_radius = right.value;
  pd.right = x.cast<Complex>();
  pd.left = y.cast<Complex>();
  pd.right_residual = residual_of(real, x, pd.spectral_radius);
  pd.left_residual = residual_of(real.transpose(), y, pd.spectral_radius);
  pd.iterations = right.iterations + left.iterations;
  pd.cyclic_index = detect_cyclic_structure(a, zero_tol).h;
  return pd;
}

double multiset_distance(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  if (x.empty()) return 0.0;
  const std::size_t n = x.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  std::vector<double> candidates;
  candidates.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = std::abs(x[i] - y[j]);
      candidates.push_back(dist[i][j]);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (has_perfect_matching(dist, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

PeripheralReport check_peripheral_rotation(const ComplexMatrix& a, int h, double tol_rel) {
  if (h < 1) {
    throw Error(ErrorKind::kInvalidArgument, "check_peripheral_rotation: h must be >= 1");
  }
  const auto spectrum = eigenvalues(a);
  PeripheralReport report;
  for (const auto& z : spectrum) report.spectral_radius = std::max(report.spectral_radius, std::abs(z));
  const double rho = report.spectral_radius;
  report.tol = tol_rel * std::max(1.0, rho);
  for (const auto& z : spectrum) {
    if (std::abs(z) >= rho - report.tol) report.peripheral.push_back(z);
  }
  const RootsOfUnity roots(h);
  for (int k = 0; k < h; ++k) report.expected.push_back(rho * roots.power(k));
  report.peripheral_error = multiset_distance(report.peripheral, report.expected);
  report.peripheral_ok = report.peripheral_error <= report.tol;

  std::vector<Complex> rotated;
  rotated.reserve(spectrum.size());
  for (const auto& z : spectrum) rotated.push_back(z * roots.omega());
  report.rotation_error = multiset_distance(spectrum, rotated);
  report.rotation_ok = report.rotation_error <= report.tol;
  return report;
}

ComponentMatrix perron_component(const ComplexMatrix& a, const PerronData& pd,
                                 const CyclicStructure& s, double rho_tol) {
  if (std::abs(pd.spectral_radius - 1.0) > rho_tol) {
    std::ostringstream msg;
    msg << "perron_component expects spectral radius 1 (scale A by 1/rho first), got "
        << pd.spectral_radius;
    throw Error(ErrorKind::kInvalidArgument, msg.str());
  }
  if (s.h < 2) {
    throw Error(ErrorKind::kInvalidArgument, "perron_component needs cyclic index h >= 2");
  }
  const int n = static_cast<int>(a.rows());
  if (pd.right.size() != n || pd.left.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "Perron vectors do not match the matrix order");
  }
  const auto cls = s.partition.class_index(n);
  const double h = static_cast<double>(s.h);
  ComponentMatrix c;
  c.base_eigenvalue = Complex{1.0, 0.0};
  c.chain_length = 1;
  c.matrix = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cls[static_cast<std::size_t>(j)] == (cls[static_cast<std::size_t>(i)] + 1) % s.h) {
        c.matrix(i, j) = h * pd.right(i) * pd.left(j);
      }
    }
  }
  c.blocks = extract_cyclic_blocks(c.matrix, s.partition);
  c.eigenvectors_strictly_nonzero = pd.right.cwiseAbs().minCoeff() > 0.0 && pd.left.cwiseAbs().minCoeff() > 0.0;
  return c;
}

}  // namespace hcyclic
