#include "hcyclic/spectral_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hcyclic/error.hpp"

namespace hcyclic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Argument in [0, 2 pi), with values a hair below 2 pi folded onto 0.
double positive_arg(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a > kTwoPi - 1e-12) a = 0.0;
  return a;
}

double safe_norm(const ComplexMatrix& a) {
  const double n = inf_norm(a);
  return n > 0.0 ? n : 1.0;
}

// Orthonormal basis for the column span, dropping directions below
// 1e-10 of the largest singular value.
ComplexMatrix orthonormal_span(const ComplexMatrix& m) {
  if (m.cols() == 0) return ComplexMatrix(m.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-10 * top) ++rank;
  return svd.matrixU().leftCols(rank);
}

void normalize_chain(JordanChain& chain) {
  double scale = 0.0;
  for (const auto& v : chain.vectors) scale = std::max(scale, inf_norm(v));
  if (scale == 0.0) return;
  const auto& eig = chain.vectors.front();
  Eigen::Index peak = 0;
  eig.cwiseAbs().maxCoeff(&peak);
  const Complex phase = std::polar(1.0, -std::arg(eig(peak)));
  for (auto& v : chain.vectors) v *= phase / scale;
}

bool strictly_nonzero(const ComplexVector& v) {
  const double scale = inf_norm(v);
  if (scale == 0.0) return false;
  return v.cwiseAbs().minCoeff() > 1e-8 * scale;
}

}  // namespace

// ---------------------------------------------------------------------------
// Eigenvalues

std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "eigenvalues: matrix is not square");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kDecomposition, "eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<EigenCluster> eigendecompose(const ComplexMatrix& a, double tol) {
  const auto raw = eigenvalues(a);
  const double radius = tol * inf_norm(a);
  const auto n = raw.size();

  // Single-linkage components via union-find.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(raw[i] - raw[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<EigenCluster> clusters;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(clusters.size());
      clusters.push_back({});
    }
    auto& c = clusters[static_cast<std::size_t>(slot[root])];
    c.value += raw[i];
    ++c.multiplicity;
  }
  for (auto& c : clusters) c.value /= static_cast<double>(c.multiplicity);
  std::sort(clusters.begin(), clusters.end(), [radius](const EigenCluster& x, const EigenCluster& y) {
    const double mx = std::abs(x.value);
    const double my = std::abs(y.value);
    if (std::abs(mx - my) > std::max(radius, 1e-14 * std::max(mx, my))) return mx > my;
    return positive_arg(x.value) < positive_arg(y.value);
  });
  return clusters;
}

// ---------------------------------------------------------------------------
// Jordan chains by the nullspace ladder
//
// N_k = ker (A - lambda I)^k is grown one step at a time as
// ker (I - Q_{k-1} Q_{k-1}^*) (A - lambda I), which keeps every rank
// decision at the conditioning of A - lambda I instead of its powers.

std::vector<JordanChain> jordan_chains_for(const ComplexMatrix& a, Complex lambda,
                                           const RankOptions& options,
                                           LadderDiagnostics* diagnostics) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "jordan_chains_for: matrix is not square");
  }
  const Eigen::Index n = a.rows();
  const ComplexMatrix b = a - lambda * ComplexMatrix::Identity(n, n);

  LadderDiagnostics diag;
  diag.weakest_margin = std::numeric_limits<double>::infinity();

  Eigen::JacobiSVD<ComplexMatrix> first(b);
  const double sigma_max = first.singularValues()(0);
  std::vector<JordanChain> chains;
  if (sigma_max == 0.0) {
    // A = lambda I: every unit vector is an eigenvector.
    for (Eigen::Index i = 0; i < n; ++i) {
      chains.push_back({ChainSide::kRight, lambda, {ComplexVector::Unit(n, i)}});
    }
    diag.nullities = {static_cast<int>(n)};
    if (diagnostics) *diagnostics = diag;
    return chains;
  }
  const double threshold = options.rank_tol * sigma_max;

  std::vector<ComplexMatrix> kernels{ComplexMatrix(n, 0)};
  std::vector<int> nullity{0};
  for (Eigen::Index step = 1; step <= n; ++step) {
    const ComplexMatrix& q = kernels.back();
    const ComplexMatrix m = b - q * (q.adjoint() * b);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int dim = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double sv = s(i);
      if (sv > threshold / options.ambiguity_band && sv <= threshold * options.ambiguity_band) {
        std::ostringstream msg;
        msg << "rank decision ambiguous at ladder step " << step << ": singular value " << sv
            << " within a factor " << options.ambiguity_band << " of threshold " << threshold;
        throw Error(ErrorKind::kDecomposition, msg.str());
      }
      if (sv <= threshold) {
        ++dim;
        if (sv > 0.0) diag.weakest_margin = std::min(diag.weakest_margin, threshold / sv);
      } else {
        diag.weakest_margin = std::min(diag.weakest_margin, sv / threshold);
      }
    }
    if (dim <= nullity.back()) break;
    kernels.push_back(svd.matrixV().rightCols(dim));
    nullity.push_back(dim);
  }
  diag.nullities.assign(nullity.begin() + 1, nullity.end());
  diag.ill_conditioned = diag.weakest_margin < options.warn_margin;
  const int levels = static_cast<int>(nullity.size()) - 1;
  if (levels == 0) {
    throw Error(ErrorKind::kDecomposition, "lambda is not an eigenvalue at the rank threshold");
  }

  struct Top {
    ComplexVector v;
    int length;
  };
  std::vector<Top> tops;
  auto b_power = [&b](ComplexVector v, int times) {
    for (int t = 0; t < times; ++t) v = b * v;
    return v;
  };
  for (int k = levels; k >= 1; --k) {
    const int here = nullity[static_cast<std::size_t>(k)] - nullity[static_cast<std::size_t>(k - 1)];
    const int above = k < levels ? nullity[static_cast<std::size_t>(k + 1)] - nullity[static_cast<std::size_t>(k)] : 0;
    const int fresh = here - above;
    if (fresh < 0) {
      throw Error(ErrorKind::kDecomposition, "nullity sequence is not concave; Jordan structure inconsistent");
    }
    if (fresh == 0) continue;
    const ComplexMatrix& lower = kernels[static_cast<std::size_t>(k - 1)];
    ComplexMatrix covered(n, lower.cols() + static_cast<Eigen::Index>(tops.size()));
    covered.leftCols(lower.cols()) = lower;
    for (std::size_t t = 0; t < tops.size(); ++t) {
      covered.col(lower.cols() + static_cast<Eigen::Index>(t)) = b_power(tops[t].v, tops[t].length - k);
    }
    const ComplexMatrix basis = orthonormal_span(covered);
    const ComplexMatrix& level = kernels[static_cast<std::size_t>(k)];
    const ComplexMatrix rest = level - basis * (basis.adjoint() * level);
    Eigen::JacobiSVD<ComplexMatrix> pick(rest, Eigen::ComputeThinU);
    for (int f = 0; f < fresh; ++f) {
      if (pick.singularValues()(f) < 1e-6) diag.ill_conditioned = true;
      tops.push_back({pick.matrixU().col(f), k});
    }
  }

  for (const auto& top : tops) {
    JordanChain chain{ChainSide::kRight, lambda, {}};
    chain.vectors.resize(static_cast<std::size_t>(top.length));
    ComplexVector v = top.v;
    for (int j = top.length - 1; j >= 0; --j) {
      chain.vectors[static_cast<std::size_t>(j)] = v;
      v = b * v;
    }
    normalize_chain(chain);
    chains.push_back(std::move(chain));
  }
  if (diagnostics) *diagnostics = diag;
  return chains;
}

// ---------------------------------------------------------------------------
// Orbit basis

OrbitBasis build_orbit_basis(const ComplexMatrix& a, const CyclicStructure& s,
                             const SpectralOptions& options) {
  if (s.h < 2) {
    throw Error(ErrorKind::kInvalidArgument, "build_orbit_basis needs an h-cyclic structure with h >= 2");
  }
  OrbitBasis basis;
  basis.h = s.h;
  basis.permutation = s.consecutive_permutation;
  basis.partition = s.consecutive_partition();
  basis.matrix = permute_symmetric(a, basis.permutation);
  const ComplexMatrix& ac = basis.matrix;
  const int h = s.h;
  const Eigen::Index n = ac.rows();
  const double norm = safe_norm(ac);
  const RootsOfUnity roots(h);

  const auto clusters = eigendecompose(ac, options.cluster_tol);
  const double pair_radius = options.orbit_tol * norm;

  int zero_multiplicity = 0;
  std::vector<char> used(clusters.size(), 0);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (std::abs(clusters[c].value) <= pair_radius) {
      zero_multiplicity += clusters[c].multiplicity;
      used[c] = 1;
    }
  }

  struct OrbitSeed {
    Complex base;
    int multiplicity;
  };
  std::vector<OrbitSeed> seeds;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (used[c]) continue;
    used[c] = 1;
    const Complex anchor = clusters[c].value;
    std::vector<Complex> members{anchor};
    for (int k = 1; k < h; ++k) {
      const Complex target = anchor * roots.power(k);
      std::size_t best = clusters.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t d = 0; d < clusters.size(); ++d) {
        if (used[d]) continue;
        const double dist = std::abs(clusters[d].value - target);
        if (dist < best_dist) {
          best_dist = dist;
          best = d;
        }
      }
      if (best == clusters.size() || best_dist > pair_radius) {
        std::ostringstream msg;
        msg << "orbit pairing failure: eigenvalue (" << anchor.real() << ", " << anchor.imag()
            << ") has no partner near omega^" << k << " times it (closest distance " << best_dist
            << ", tolerance " << pair_radius << ")";
        throw Error(ErrorKind::kDecomposition, msg.str());
      }
      if (clusters[best].multiplicity != clusters[c].multiplicity) {
        throw Error(ErrorKind::kDecomposition,
                    "orbit pairing failure: multiplicities differ inside an eigenvalue orbit");
      }
      used[best] = 1;
      members.push_back(clusters[best].value);
    }
    // Representative: smallest argument in [0, 2 pi / h). Refined as the
    // average of the h members rotated back onto it.
    std::size_t base_k = 0;
    for (std::size_t k = 1; k < members.size(); ++k) {
      if (positive_arg(members[k]) < positive_arg(members[base_k])) base_k = k;
    }
    Complex refined{0.0, 0.0};
    for (std::size_t k = 0; k < members.size(); ++k) {
      refined += members[k] * roots.power(static_cast<long long>(base_k) - static_cast<long long>(k));
    }
    seeds.push_back({refined / static_cast<double>(h), clusters[c].multiplicity});
  }
  std::stable_sort(seeds.begin(), seeds.end(), [pair_radius](const OrbitSeed& x, const OrbitSeed& y) {
    const double mx = std::abs(x.base);
    const double my = std::abs(y.base);
    if (std::abs(mx - my) > pair_radius) return mx > my;
    return positive_arg(x.base) < positive_arg(y.base);
  });

  for (const auto& seed : seeds) {
    LadderDiagnostics diag;
    auto chains = jordan_chains_for(ac, seed.base, options.rank, &diag);
    int total = 0;
    for (const auto& ch : chains) total += ch.length();
    if (total != seed.multiplicity) {
      std::ostringstream msg;
      msg << "generalized eigenspace of (" << seed.base.real() << ", " << seed.base.imag()
          << ") has dimension " << total << " but algebraic multiplicity " << seed.multiplicity;
      throw Error(ErrorKind::kDecomposition, msg.str());
    }
    if (diag.ill_conditioned) {
      std::ostringstream msg;
      msg << "weak singular-value gap (" << diag.weakest_margin
          << "x threshold) in Jordan chains for (" << seed.base.real() << ", " << seed.base.imag() << ")";
      basis.warnings.push_back(msg.str());
    }
    for (const auto& ch : chains) {
      SpectralOrbit orbit = rotate_all(ch, basis.partition);
      orbit.base_eigenvalue = seed.base;
      basis.orbits.push_back(std::move(orbit));
    }
  }

  if (zero_multiplicity > 0) {
    basis.zero_chains = jordan_chains_for(ac, Complex{0.0, 0.0}, options.rank);
    int total = 0;
    for (const auto& ch : basis.zero_chains) total += ch.length();
    if (total != zero_multiplicity) {
      throw Error(ErrorKind::kDecomposition,
                  "zero eigenvalue: generalized eigenspace dimension " + std::to_string(total) +
                      " differs from algebraic multiplicity " + std::to_string(zero_multiplicity));
    }
    basis.warnings.push_back("matrix is singular: eigenvalue 0 (algebraic multiplicity " +
                             std::to_string(zero_multiplicity) +
                             ") lies outside the nonsingular setting and gets no component");
  }

  // Assemble Z and J.
  basis.z = ComplexMatrix(n, n);
  std::vector<ComplexMatrix> jordan;
  Eigen::Index col = 0;
  for (const auto& orbit : basis.orbits) {
    basis.orbit_offsets.push_back(static_cast<int>(col));
    for (const auto& ch : orbit.right_chains) {
      for (const auto& v : ch.vectors) basis.z.col(col++) = v;
    }
    jordan.push_back(orbit_jordan_form(orbit.base_eigenvalue, orbit.chain_length, h));
    basis.jordan_block_count += h;
  }
  basis.zero_offset = static_cast<int>(col);
  for (const auto& ch : basis.zero_chains) {
    for (const auto& v : ch.vectors) basis.z.col(col++) = v;
    jordan.push_back(jordan_block(Complex{0.0, 0.0}, ch.length()));
    ++basis.jordan_block_count;
  }
  if (col != n) {
    throw Error(ErrorKind::kDecomposition, "collected " + std::to_string(col) +
                                               " chain vectors for a matrix of order " + std::to_string(n));
  }
  basis.j = direct_sum(jordan);

  Eigen::JacobiSVD<ComplexMatrix> zsvd(basis.z);
  const auto& zs = zsvd.singularValues();
  const double smin = zs(zs.size() - 1);
  basis.z_condition = smin > 0.0 ? zs(0) / smin : std::numeric_limits<double>::infinity();
  if (!(basis.z_condition < 1e14)) {
    throw Error(ErrorKind::kDecomposition, "Z is numerically singular (condition number " +
                                               std::to_string(basis.z_condition) + ")");
  }
  if (basis.z_condition > 1.0 / options.rank.rank_tol) {
    basis.warnings.push_back("Z is ill-conditioned (condition number " +
                             std::to_string(basis.z_condition) + ")");
  }
  basis.z_inv = basis.z.fullPivLu().inverse();

  // Left chains are the matching rows of Z^{-1}.
  for (std::size_t i = 0; i < basis.orbits.size(); ++i) {
    auto& orbit = basis.orbits[i];
    const int r = orbit.chain_length;
    orbit.left_chains.clear();
    for (int k = 0; k < h; ++k) {
      JordanChain left{ChainSide::kLeft, orbit.base_eigenvalue * roots.power(k), {}};
      for (int jj = 0; jj < r; ++jj) {
        left.vectors.push_back(basis.z_inv.row(basis.orbit_offsets[i] + k * r + jj).transpose());
      }
      orbit.left_chains.push_back(std::move(left));
    }
  }

  basis.basis_residual = inf_norm(ComplexMatrix(ac * basis.z - basis.z * basis.j));
  basis.residual_bound = options.residual_tol * norm * inf_norm(basis.z);
  if (basis.basis_residual > basis.residual_bound) {
    std::ostringstream msg;
    msg << "||AZ - ZJ|| = " << basis.basis_residual << " exceeds " << basis.residual_bound;
    throw Error(ErrorKind::kDecomposition, msg.str());
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Components

std::vector<ComplexMatrix> extract_cyclic_blocks(const ComplexMatrix& m, const OrderedPartition& p) {
  const int h = p.size();
  std::vector<ComplexMatrix> blocks;
  for (int l = 0; l < h; ++l) {
    const auto& rows = p[l];
    const auto& cols = p[(l + 1) % h];
    ComplexMatrix blk(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t jj = 0; jj < cols.size(); ++jj) {
        blk(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jj)) = m(rows[i], cols[jj]);
      }
    }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

ComponentMatrix component_via_similarity(const OrbitBasis& basis, int orbit_index) {
  if (orbit_index < 0 || orbit_index >= basis.orbit_count()) {
    throw Error(ErrorKind::kInvalidArgument,
                "orbit index " + std::to_string(orbit_index) + " outside 0.." +
                    std::to_string(basis.orbit_count() - 1));
  }
  const auto& orbit = basis.orbits[static_cast<std::size_t>(orbit_index)];
  const Eigen::Index offset = basis.orbit_offsets[static_cast<std::size_t>(orbit_index)];
  const Eigen::Index width = static_cast<Eigen::Index>(orbit.chain_length) * basis.h;
  // Z diag(0, ..., J_i, ..., 0) Z^{-1} only touches the orbit's columns of Z
  // and rows of Z^{-1}.
  ComponentMatrix c;
  c.base_eigenvalue = orbit.base_eigenvalue;
  c.chain_length = orbit.chain_length;
  c.matrix = basis.z.middleCols(offset, width) * basis.j.block(offset, offset, width, width) *
             basis.z_inv.middleRows(offset, width);
  c.blocks = extract_cyclic_blocks(c.matrix, basis.partition);
  c.eigenvectors_strictly_nonzero =
      strictly_nonzero(orbit.right_chains.front().vectors.front()) &&
      strictly_nonzero(orbit.left_chains.front().vectors.back());
  return c;
}

ComponentMatrix component_via_blocks(const SpectralOrbit& orbit, const OrderedPartition& p) {
  if (orbit.right_chains.empty() || orbit.left_chains.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "component_via_blocks needs base right and left chains");
  }
  const JordanChain& right = orbit.right_chains.front();
  const JordanChain& left = orbit.left_chains.front();
  if (right.length() != left.length()) {
    throw Error(ErrorKind::kInvalidArgument,
                "left and right base chains have lengths " + std::to_string(left.length()) + " and " +
                    std::to_string(right.length()));
  }
  if (!p.is_consecutive()) {
    throw Error(ErrorKind::kInvalidArgument, "component_via_blocks requires a consecutive partition");
  }
  const int h = p.size();
  const int n = p.element_count();
  if (right.dimension() != n || left.dimension() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "chain dimension does not match the partition");
  }
  const int r = right.length();
  const Complex lambda = orbit.base_eigenvalue;
  const auto offsets = p.offsets();
  auto seg = [&](const ComplexVector& v, int l) {
    return v.segment(offsets[static_cast<std::size_t>(l)], static_cast<Eigen::Index>(p[l].size()));
  };

  ComponentMatrix c;
  c.base_eigenvalue = lambda;
  c.chain_length = r;
  c.matrix = ComplexMatrix::Zero(n, n);
  for (int l = 0; l < h; ++l) {
    const int next = (l + 1) % h;
    ComplexMatrix blk = ComplexMatrix::Zero(static_cast<Eigen::Index>(p[l].size()),
                                            static_cast<Eigen::Index>(p[next].size()));
    for (int jj = 0; jj < r; ++jj) {
      const auto& x = right.vectors[static_cast<std::size_t>(jj)];
      blk += (lambda * static_cast<double>(h)) * seg(x, l) *
             seg(left.vectors[static_cast<std::size_t>(jj)], next).transpose();
      if (jj + 1 < r) {
        blk += static_cast<double>(h) * seg(x, l) *
               seg(left.vectors[static_cast<std::size_t>(jj + 1)], next).transpose();
      }
    }
    c.matrix.block(offsets[static_cast<std::size_t>(l)], offsets[static_cast<std::size_t>(next)],
                   blk.rows(), blk.cols()) = blk;
    c.blocks.push_back(std::move(blk));
  }
  c.eigenvectors_strictly_nonzero =
      strictly_nonzero(right.vectors.front()) && strictly_nonzero(left.vectors.back());
  return c;
}

ComplexMatrix zero_eigenvalue_part(const OrbitBasis& basis) {
  const Eigen::Index n = basis.z.rows();
  const Eigen::Index width = n - basis.zero_offset;
  if (width == 0) return ComplexMatrix::Zero(n, n);
  return basis.z.rightCols(width) * basis.j.bottomRightCorner(width, width) *
         basis.z_inv.bottomRows(width);
}

ComponentMatrix to_original_frame(const ComponentMatrix& c, const Permutation& perm,
                                  const OrderedPartition& original_partition) {
  ComponentMatrix out = c;
  out.matrix = unpermute_symmetric(c.matrix, perm);
  out.blocks = extract_cyclic_blocks(out.matrix, original_partition);
  return out;
}

// ---------------------------------------------------------------------------
// Verification

ComponentReport verify_component_properties(const ComplexMatrix& a,
                                            const std::vector<ComponentMatrix>& components,
                                            const OrderedPartition& p, double tol,
                                            const ComplexMatrix* remainder) {
  const int n = static_cast<int>(a.rows());
  const int h = p.size();
  const double norm_a = inf_norm(a);
  const ComplexMatrix chi = cyclic_characteristic_matrix(p, n);
  ComponentReport report;
  report.all_passed = true;

  for (const auto& c : components) {
    if (c.matrix.rows() != n || c.matrix.cols() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "component size differs from A");
    }
    ComponentCheck check;
    check.base_eigenvalue = c.base_eigenvalue;
    check.norm = inf_norm(c.matrix);
    check.containment_tol = 0.1 * tol * check.norm;
    check.contained = digraph_contained_in(c.matrix, chi, check.containment_tol);
    check.commutator = inf_norm(ComplexMatrix(a * c.matrix - c.matrix * a));
    check.commutator_tol = tol * norm_a * check.norm;
    check.commutes = check.commutator <= check.commutator_tol;
    if (c.chain_length == 1 && c.eigenvectors_strictly_nonzero) {
      bool ok = false;
      try {
        const auto s = detect_cyclic_structure(c.matrix, check.containment_tol);
        check.detected_h = s.h;
        const Digraph got = build_digraph(c.matrix, check.containment_tol);
        const Digraph want = build_digraph(chi, 0.0);
        ok = s.h == h && got.arcs() == want.arcs();
      } catch (const Error&) {
        ok = false;
      }
      check.cyclic_index_ok = ok;
      report.all_passed = report.all_passed && ok;
    }
    report.all_passed = report.all_passed && check.contained && check.commutes;
    report.components.push_back(check);
  }

  for (std::size_t i = 0; i < components.size(); ++i) {
    for (std::size_t j = 0; j < components.size(); ++j) {
      if (i == j) continue;
      AnnihilationCheck pair;
      pair.i = static_cast<int>(i);
      pair.j = static_cast<int>(j);
      pair.norm = inf_norm(ComplexMatrix(components[i].matrix * components[j].matrix));
      pair.tol = tol * report.components[i].norm * report.components[j].norm;
      pair.ok = pair.norm <= pair.tol;
      report.all_passed = report.all_passed && pair.ok;
      report.annihilation.push_back(pair);
    }
  }

  ComplexMatrix sum = remainder ? *remainder : ComplexMatrix::Zero(n, n);
  for (const auto& c : components) sum += c.matrix;
  report.reconstruction = inf_norm(ComplexMatrix(sum - a));
  report.reconstruction_tol = tol * norm_a;
  report.reconstruction_ok = report.reconstruction <= report.reconstruction_tol;
  report.all_passed = report.all_passed && report.reconstruction_ok;
  return report;
}

}  // namespace hcyclic
