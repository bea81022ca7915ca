#include "hcyclic/random_instances.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "hcyclic/error.hpp"

namespace hcyclic {

namespace {

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

Permutation random_permutation(std::mt19937_64& rng, int n) {
  Permutation p = Permutation::identity(n);
  std::shuffle(p.order.begin(), p.order.end(), rng);
  return p;
}

std::vector<int> random_composition(std::mt19937_64& rng, int total, int max_part) {
  std::vector<int> parts;
  while (total > 0) {
    std::uniform_int_distribution<int> pick(1, std::min(total, max_part));
    const int part = pick(rng);
    parts.push_back(part);
    total -= part;
  }
  return parts;
}

// Original-frame partition after permutation p (position -> original index).
OrderedPartition permuted_partition(const OrderedPartition& part, const Permutation& p) {
  const Permutation inv = p.inverse();
  std::vector<std::vector<int>> classes;
  for (const auto& c : part.classes()) {
    std::vector<int> mapped;
    for (int v : c) mapped.push_back(inv.order[static_cast<std::size_t>(v)]);
    classes.push_back(std::move(mapped));
  }
  return OrderedPartition(std::move(classes));
}

}  // namespace

ComplexMatrix random_well_conditioned(std::mt19937_64& rng, int m) {
  ComplexMatrix g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) g(i, j) = gaussian(rng);
  }
  return ComplexMatrix::Identity(m, m) + (0.5 / std::sqrt(static_cast<double>(m))) * g;
}

std::vector<int> random_block_sizes(std::mt19937_64& rng, int h, int max_n) {
  std::uniform_int_distribution<int> pick(1, std::max(1, max_n / h));
  std::vector<int> sizes(static_cast<std::size_t>(h));
  for (auto& s : sizes) s = pick(rng);
  return sizes;
}

PlantedInstance random_planted_instance(std::mt19937_64& rng, const PlantOptions& options) {
  const int h = options.h;
  std::vector<int> sizes = options.block_sizes;
  if (sizes.empty()) sizes.assign(static_cast<std::size_t>(std::max(h, 0)), options.block_size);
  if (h < 2 || static_cast<int>(sizes.size()) != h || options.max_chain_length < 1 ||
      *std::min_element(sizes.begin(), sizes.end()) < 1) {
    throw Error(ErrorKind::kInvalidArgument, "random_planted_instance: need h >= 2 and h positive block sizes");
  }
  const int m = *std::min_element(sizes.begin(), sizes.end());
  PlantedInstance inst;
  inst.h = h;
  const RootsOfUnity roots(h);

  // Jordan plan: chain lengths summing to m, one distinct base per chain.
  // Bases live in disjoint modulus bands so orbits never collide.
  const auto lengths = random_composition(rng, m, options.max_chain_length);
  std::vector<int> band(lengths.size());
  std::iota(band.begin(), band.end(), 0);
  std::shuffle(band.begin(), band.end(), rng);
  std::uniform_real_distribution<double> jitter(0.0, 0.2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi / h);
  std::bernoulli_distribution zero_coin(0.3);
  // With m = 1 a zero base makes R = 0 and the matrix reducible.
  const bool plant_zero = options.allow_zero_eigenvalue && zero_coin(rng) && m >= 2;
  for (std::size_t b = 0; b < lengths.size(); ++b) {
    PlantedBlock blk;
    blk.length = lengths[b];
    if (plant_zero && b == 0) {
      blk.base = 0.0;
    } else {
      blk.base = std::polar(1.0 + 0.5 * band[b] + jitter(rng), angle(rng));
    }
    inst.plan.push_back(blk);
  }

  std::vector<ComplexMatrix> jordan;
  for (const auto& blk : inst.plan) jordan.push_back(jordan_block(blk.base, blk.length));
  const ComplexMatrix jr = direct_sum(jordan);
  const ComplexMatrix w = random_well_conditioned(rng, m);
  const ComplexMatrix w_inv = w.fullPivLu().inverse();
  const ComplexMatrix r = w * jr * w_inv;

  std::vector<ComplexMatrix> embed;    // E_l, n_l x m
  std::vector<ComplexMatrix> project;  // P_l, m x n_l
  for (int l = 0; l < h; ++l) {
    const int nl = sizes[static_cast<std::size_t>(l)];
    const ComplexMatrix s = random_well_conditioned(rng, nl);
    const ComplexMatrix s_inv = s.fullPivLu().inverse();
    embed.push_back(s.leftCols(m));
    project.push_back(s_inv.topRows(m));
  }

  inst.partition = OrderedPartition::consecutive(sizes);
  const auto offsets = inst.partition.offsets();
  const int n = inst.partition.element_count();
  inst.matrix = ComplexMatrix::Zero(n, n);
  for (int l = 0; l < h; ++l) {
    const int next = (l + 1) % h;
    const auto ul = static_cast<std::size_t>(l);
    const auto un = static_cast<std::size_t>(next);
    inst.matrix.block(offsets[ul], offsets[un], sizes[ul], sizes[un]) = embed[ul] * r * project[un];
  }
  inst.scramble = Permutation::identity(n);

  auto unit_scale = [](JordanChain& chain) {
    double scale = 0.0;
    for (const auto& v : chain.vectors) scale = std::max(scale, inf_norm(v));
    for (auto& v : chain.vectors) v /= scale;
  };
  int offset = 0;
  for (const auto& blk : inst.plan) {
    std::vector<JordanChain> orbit;
    std::vector<JordanChain> left_orbit;
    for (int k = 0; k < h; ++k) {
      JordanChain chain{ChainSide::kRight, blk.base * roots.power(k), {}};
      for (int j = 0; j < blk.length; ++j) {
        const ComplexVector wj = w.col(offset + j);
        ComplexVector x(n);
        for (int l = 0; l < h; ++l) {
          const auto ul = static_cast<std::size_t>(l);
          x.segment(offsets[ul], sizes[ul]) = roots.power(static_cast<long long>(k) * l) * (embed[ul] * wj);
        }
        chain.vectors.push_back(roots.power(-static_cast<long long>(k) * j) * x);
      }
      unit_scale(chain);
      orbit.push_back(std::move(chain));

      JordanChain left{ChainSide::kLeft, blk.base * roots.power(k), {}};
      for (int j = 0; j < blk.length; ++j) {
        const ComplexVector uj = w_inv.row(offset + j).transpose();
        ComplexVector y(n);
        for (int l = 0; l < h; ++l) {
          const auto ul = static_cast<std::size_t>(l);
          y.segment(offsets[ul], sizes[ul]) =
              roots.power(-static_cast<long long>(k) * l) * (project[ul].transpose() * uj);
        }
        left.vectors.push_back(roots.power(static_cast<long long>(k) * j) * y);
      }
      unit_scale(left);
      left_orbit.push_back(std::move(left));
    }
    inst.right_chains.push_back(std::move(orbit));
    inst.left_chains.push_back(std::move(left_orbit));
    offset += blk.length;
  }
  return inst;
}

void scramble_instance(PlantedInstance& instance, std::mt19937_64& rng) {
  const Permutation p = random_permutation(rng, instance.order());
  instance.matrix = permute_symmetric(instance.matrix, p);
  for (auto* side : {&instance.right_chains, &instance.left_chains}) {
    for (auto& orbit : *side) {
      for (auto& chain : orbit) {
        for (auto& v : chain.vectors) v = permute_vector(v, p);
      }
    }
  }
  instance.partition = permuted_partition(instance.partition, p);
  Permutation composed;
  composed.order.resize(p.order.size());
  for (std::size_t i = 0; i < p.order.size(); ++i) {
    composed.order[i] = instance.scramble.order[static_cast<std::size_t>(p.order[i])];
  }
  instance.scramble = composed;
}

NonnegativeInstance random_nonnegative_cyclic(std::mt19937_64& rng, int h, int block_size, double density) {
  if (h < 2 || block_size < 1) {
    throw Error(ErrorKind::kInvalidArgument, "random_nonnegative_cyclic: need h >= 2, block_size >= 1");
  }
  const int m = block_size;
  const int n = h * m;
  std::uniform_real_distribution<double> value(0.05, 1.0);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> any(0, m - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (int l = 0; l < h; ++l) {
      const int next = (l + 1) % h;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if (keep(rng)) a(l * m + i, next * m + j) = value(rng);
        }
        // Every row of every block gets at least one arc.
        if (a.block(l * m + i, next * m, 1, m).cwiseAbs().maxCoeff() == 0.0) {
          a(l * m + i, next * m + any(rng)) = value(rng);
        }
      }
    }
    const auto g = build_digraph(a, 0.0);
    if (!is_strongly_connected(g) || index_of_imprimitivity(g) != h) continue;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-6 * sv(0)) continue;

    const Permutation p = random_permutation(rng, n);
    NonnegativeInstance inst;
    inst.h = h;
    inst.matrix = permute_symmetric(a, p);
    inst.partition = permuted_partition(
        OrderedPartition::consecutive(std::vector<int>(static_cast<std::size_t>(h), m)), p);
    return inst;
  }
  throw Error(ErrorKind::kInvalidArgument, "random_nonnegative_cyclic: no valid instance after 1000 draws");
}

Digraph random_strongly_connected_digraph(std::mt19937_64& rng, int n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "digraph needs n >= 1");
  std::uniform_int_distribution<int> period_pick(1, n);
  std::uniform_real_distribution<double> prob_pick(0.15, 0.7);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int period = period_pick(rng);
    const double q = prob_pick(rng);
    std::bernoulli_distribution arc(q);
    // Class labels with every class used at least once.
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) label[static_cast<std::size_t>(v)] = v % period;
    std::uniform_int_distribution<int> cls(0, period - 1);
    for (int v = period; v < n; ++v) label[static_cast<std::size_t>(v)] = cls(rng);
    std::shuffle(label.begin(), label.end(), rng);

    Digraph g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        const bool allowed = label[static_cast<std::size_t>(v)] == (label[static_cast<std::size_t>(u)] + 1) % period;
        if (allowed && arc(rng)) g.add_arc(u, v);
      }
    }
    if (n == 1 && g.arc_count() == 0) g.add_arc(0, 0);
    if (is_strongly_connected(g)) return g;
  }
  throw Error(ErrorKind::kInvalidArgument, "random_strongly_connected_digraph: gave up");
}

}  // namespace hcyclic
