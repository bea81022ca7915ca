// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "test_support.hpp"

using namespace hcyclic;
using hcyclic::testing::cyclic6;
using hcyclic::testing::from_rows;
using hcyclic::testing::max_diff;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

std::vector<ComponentMatrix> similarity_components(const ComplexMatrix& a, const CyclicStructure& s,
                                                   const OrbitBasis& basis) {
  std::vector<ComponentMatrix> out;
  for (int i = 0; i < basis.orbit_count(); ++i) {
    out.push_back(to_original_frame(component_via_similarity(basis, i), basis.permutation, s.partition));
  }
  return out;
}

int orbit_containing(const OrbitBasis& basis, Complex value, double tol) {
  const RootsOfUnity r(basis.h);
  for (int i = 0; i < basis.orbit_count(); ++i) {
    for (int k = 0; k < basis.h; ++k) {
      if (std::abs(basis.orbits[static_cast<std::size_t>(i)].base_eigenvalue * r.power(k) - value) < tol) return i;
    }
  }
  return -1;
}

// Equal class sizes and no zero eigenvalue: the components alone sum to A.
std::vector<PlantedInstance> reconstruction_instances() {
  std::mt19937_64 rng(2024);
  std::vector<PlantedInstance> out;
  std::uniform_int_distribution<int> pick_h(2, 4);
  for (int i = 0; i < 200; ++i) {
    PlantOptions po;
    po.h = pick_h(rng);
    std::uniform_int_distribution<int> pick_m(1, 24 / po.h);
    po.block_size = pick_m(rng);
    auto inst = random_planted_instance(rng, po);
    scramble_instance(inst, rng);
    out.push_back(std::move(inst));
  }
  return out;
}

// 1: the 6x6 worked example.
void cyclic6_criterion(Outcome& o) {
  const ComplexMatrix a = cyclic6();
  const auto s = detect_cyclic_structure(a, 0.0);
  o.check(s.h == 3, "h != 3; ");
  o.check(s.partition == OrderedPartition({{0, 1}, {2, 3}, {4, 5}}), "partition differs; ");

  const RootsOfUnity r(3);
  const std::vector<Complex> want{1.0, r.omega(), r.power(2), -1.0 / 3.0, -r.omega() / 3.0, -r.power(2) / 3.0};
  const double spec = multiset_distance(eigenvalues(a), want);
  o.check(spec <= 1e-10, "spectrum off by " + std::to_string(spec) + "; ");

  const auto basis = build_orbit_basis(a, s);
  const auto comps = similarity_components(a, s, basis);
  const int i1 = orbit_containing(basis, 1.0, 1e-10);
  const int i3 = orbit_containing(basis, -1.0 / 3.0, 1e-10);
  if (i1 < 0 || i3 < 0 || basis.orbit_count() != 2) {
    o.check(false, "orbits not found; ");
    return;
  }
  ComplexMatrix a1 = ComplexMatrix::Zero(6, 6);
  a1.block(0, 2, 2, 2).setConstant(0.5);
  a1.block(2, 4, 2, 2).setConstant(0.5);
  a1.block(4, 0, 2, 2).setConstant(0.5);
  const ComplexMatrix a3 = from_rows({{0, 0, -1, 1, 0, 0},
                                      {0, 0, 1, -1, 0, 0},
                                      {0, 0, 0, 0, -1, 1},
                                      {0, 0, 0, 0, 1, -1},
                                      {-1, 1, 0, 0, 0, 0},
                                      {1, -1, 0, 0, 0, 0}}) /
                           6.0;
  ComplexMatrix aa1 = ComplexMatrix::Zero(6, 6);
  aa1.block(0, 4, 2, 2).setConstant(0.5);
  aa1.block(2, 0, 2, 2).setConstant(0.5);
  aa1.block(4, 2, 2, 2).setConstant(0.5);
  const ComplexMatrix aa3 = from_rows({{0, 0, 0, 0, 1, -1},
                                       {0, 0, 0, 0, -1, 1},
                                       {1, -1, 0, 0, 0, 0},
                                       {-1, 1, 0, 0, 0, 0},
                                       {0, 0, 1, -1, 0, 0},
                                       {0, 0, -1, 1, 0, 0}}) /
                            18.0;
  const ComplexMatrix& c1 = comps[static_cast<std::size_t>(i1)].matrix;
  const ComplexMatrix& c3 = comps[static_cast<std::size_t>(i3)].matrix;
  const double d = std::max({max_diff(c1, a1), max_diff(c3, a3), max_diff(ComplexMatrix(a * c1), aa1),
                             max_diff(ComplexMatrix(a * c3), aa3)});
  o.check(d <= 1e-10, "component entries off by " + std::to_string(d) + "; ");
  o.detail << "max entry error " << d << ", spectrum error " << spec;
}

// 2 and 4 share the planted instances.
void reconstruction_criterion(Outcome& o, const std::vector<PlantedInstance>& instances) {
  const ComplexMatrix a = cyclic6();
  const auto s = detect_cyclic_structure(a, 0.0);
  const auto basis = build_orbit_basis(a, s);
  ComplexMatrix sum = ComplexMatrix::Zero(6, 6);
  for (const auto& c : similarity_components(a, s, basis)) sum += c.matrix;
  const double ex = max_diff(sum, a);
  o.check(ex <= 1e-12, "example residual " + std::to_string(ex) + "; ");

  double worst = 0.0;
  int failed = 0;
  for (const auto& inst : instances) {
    try {
      const auto si = detect_cyclic_structure(inst.matrix, default_zero_tol(inst.matrix));
      const auto bi = build_orbit_basis(inst.matrix, si);
      ComplexMatrix total = ComplexMatrix::Zero(inst.matrix.rows(), inst.matrix.cols());
      for (const auto& c : similarity_components(inst.matrix, si, bi)) total += c.matrix;
      const double rel = (total - inst.matrix).cwiseAbs().maxCoeff() / inf_norm(inst.matrix);
      worst = std::max(worst, rel);
      if (si.h != inst.h || rel > 1e-9) ++failed;
    } catch (const Error&) {
      ++failed;
    }
  }
  o.check(failed == 0, std::to_string(failed) + " planted instances failed; ");
  o.detail << "example residual " << ex << ", worst planted residual/||A|| " << worst << " over "
           << instances.size();
}

void routes_criterion(Outcome& o, const std::vector<PlantedInstance>& instances) {
  double worst = 0.0;
  int failed = 0;
  int orbits = 0;
  for (const auto& inst : instances) {
    try {
      const auto si = detect_cyclic_structure(inst.matrix, default_zero_tol(inst.matrix));
      const auto bi = build_orbit_basis(inst.matrix, si);
      for (int i = 0; i < bi.orbit_count(); ++i) {
        const auto sim = component_via_similarity(bi, i);
        const auto blk = component_via_blocks(bi.orbits[static_cast<std::size_t>(i)], bi.partition);
        const double rel = (sim.matrix - blk.matrix).cwiseAbs().maxCoeff() / inf_norm(inst.matrix);
        worst = std::max(worst, rel);
        if (rel > 1e-8) ++failed;
        ++orbits;
      }
    } catch (const Error&) {
      ++failed;
    }
  }
  o.check(failed == 0, std::to_string(failed) + " orbits disagree; ");
  o.detail << "worst route difference/||A|| " << worst << " over " << orbits << " orbits";
}

// 3: rotated planted chains.
void rotation_criterion(Outcome& o) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pick_h(2, 5);
  int failed = 0;
  int chains = 0;
  double worst = 0.0;
  double worst_gauge = 0.0;
  for (int i = 0; i < 500; ++i) {
    PlantOptions po;
    po.h = pick_h(rng);
    po.block_sizes = random_block_sizes(rng, po.h, 24);
    po.allow_zero_eigenvalue = true;
    const auto inst = random_planted_instance(rng, po);
    const double scale = std::max(inf_norm(inst.matrix), 1.0);
    std::uniform_int_distribution<int> pick_k(0, po.h - 1);
    bool ok = true;
    for (std::size_t b = 0; b < inst.plan.size(); ++b) {
      for (const auto* family : {&inst.right_chains[b], &inst.left_chains[b]}) {
        const JordanChain& base = family->front();
        for (int k = 0; k < po.h; ++k) {
          const auto rotated = rotate_chain(base, k, inst.partition);
          const auto res = verify_chain(inst.matrix, rotated, 1e-9 * scale);
          worst = std::max(worst, res.max_residual / scale);
          ok = ok && res.passed;
          // The planted chain for the rotated eigenvalue is the same chain up to scale.
          const double g = hcyclic::testing::chain_gauge_distance(rotated, (*family)[static_cast<std::size_t>(k)]);
          worst_gauge = std::max(worst_gauge, g);
          ok = ok && g <= 1e-9;
          ++chains;
        }
        const auto same = rotate_chain(base, 0, inst.partition);
        for (int j = 0; j < base.length(); ++j) {
          ok = ok && same.vectors[static_cast<std::size_t>(j)] == base.vectors[static_cast<std::size_t>(j)];
        }
        const int k1 = pick_k(rng);
        const int k2 = pick_k(rng);
        const auto twice = rotate_chain(rotate_chain(base, k1, inst.partition), k2, inst.partition);
        const auto once = rotate_chain(base, (k1 + k2) % po.h, inst.partition);
        for (int j = 0; j < base.length(); ++j) {
          ok = ok && max_diff(twice.vectors[static_cast<std::size_t>(j)], once.vectors[static_cast<std::size_t>(j)]) <= 1e-12;
        }
      }
    }
    if (!ok) ++failed;
  }
  o.check(failed == 0, std::to_string(failed) + " instances failed; ");
  o.detail << chains << " rotated chains, worst residual/max(||A||,1) " << worst << ", worst gauge distance "
           << worst_gauge;
}

// 5: circulant rotation matrices.
void circulant_criterion(Outcome& o) {
  double worst = 0.0;
  for (int h = 2; h <= 8; ++h) {
    const RootsOfUnity r(h);
    ComplexMatrix sum = ComplexMatrix::Zero(h, h);
    for (int k = 0; k < h; ++k) {
      const ComplexMatrix ck = circulant_rotation_matrix(k, h);
      sum += ck;
      ComplexMatrix direct(h, h);
      for (int i = 1; i <= h; ++i) {
        for (int j = 1; j <= h; ++j) {
          direct(i - 1, j - 1) = std::exp(Complex(0.0, 2.0 * M_PI * k * (alpha(i, j, h) + 1) / h));
        }
      }
      worst = std::max(worst, max_diff(ck, direct));
      for (int l = 1; l <= 4; ++l) {
        ComplexVector col(h), row1(h), row2(h);
        for (int i = 1; i <= h; ++i) {
          col(i - 1) = r.power(static_cast<long long>(k) * alpha(i, l, h));
          row1(i - 1) = r.power(static_cast<long long>(k) * alpha(l, i, h));
          row2(i - 1) = r.power(static_cast<long long>(k) * alpha(l + 1, i, h));
        }
        worst = std::max(worst, max_diff(ComplexMatrix(r.power(k) * col * row1.transpose()), ck));
        worst = std::max(worst, max_diff(ComplexMatrix(col * row2.transpose()), ck));
      }
    }
    worst = std::max(worst, max_diff(sum, ComplexMatrix(static_cast<double>(h) * cycle_matrix(h))));
  }
  o.check(worst <= 1e-12, "identity residual too large; ");
  o.detail << "worst identity residual " << worst;
}

// 6: nonnegative irreducible imprimitive matrices.
void perron_criterion(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick_h(2, 4);
  std::uniform_int_distribution<int> pick_m(1, 6);
  int failed = 0;
  double worst_route = 0.0;
  double most_negative = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int h = pick_h(rng);
    const auto inst = random_nonnegative_cyclic(rng, h, pick_m(rng));
    const ComplexMatrix& a = inst.matrix;
    bool ok = true;
    try {
      const auto pd = perron_data(a);
      const double rho = pd.spectral_radius;
      ok = ok && rho > 0.0 && pd.right.real().minCoeff() > 0.0 && pd.left.real().minCoeff() > 0.0;
      const auto s = detect_cyclic_structure(a, default_zero_tol(a));
      ok = ok && s.h == h;
      const auto per = check_peripheral_rotation(a, s.h, 1e-8);
      ok = ok && per.peripheral_ok && per.rotation_ok;

      const ComplexMatrix scaled = a / rho;
      const auto pc = perron_component(scaled, perron_data(scaled), s);
      most_negative = std::min(most_negative, pc.matrix.real().minCoeff());
      ok = ok && pc.matrix.real().minCoeff() >= -1e-10;
      ComplexMatrix power = ComplexMatrix::Identity(a.rows(), a.cols());
      for (int k = 0; k < s.h; ++k) power = power * pc.matrix;
      const auto cls = s.partition.class_index(static_cast<int>(a.rows()));
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
          if (cls[static_cast<std::size_t>(r)] != cls[static_cast<std::size_t>(c)]) ok = ok && std::abs(power(r, c)) <= 1e-8;
        }
      }

      const auto basis = build_orbit_basis(a, s);
      const int io = orbit_containing(basis, rho, 1e-8 * std::max(1.0, rho));
      ok = ok && io >= 0;
      if (io >= 0) {
        const auto sim = to_original_frame(component_via_similarity(basis, io), basis.permutation, s.partition);
        const double d = max_diff(sim.matrix, ComplexMatrix(rho * pc.matrix)) / inf_norm(a);
        worst_route = std::max(worst_route, d);
        ok = ok && d <= 1e-8;
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++failed;
  }
  o.check(failed == 0, std::to_string(failed) + " instances failed; ");
  o.detail << "most negative Perron component entry " << most_negative << ", worst route difference/||A|| "
           << worst_route;
}

// 7: index of imprimitivity against closed-walk lengths.
void period_criterion(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick_n(1, 8);
  int failed = 0;
  std::vector<int> histogram(9, 0);
  for (int i = 0; i < 500; ++i) {
    const Digraph g = random_strongly_connected_digraph(rng, pick_n(rng));
    const int want = hcyclic::testing::closed_walk_gcd(g);
    int got = -1;
    try {
      got = index_of_imprimitivity(g);
    } catch (const Error& e) {
      // A loop-free single vertex has no closed walks.
      got = e.kind() == ErrorKind::kAperiodicUndefined ? 0 : -1;
    }
    if (got != want) ++failed;
    if (want >= 0 && want <= 8) ++histogram[static_cast<std::size_t>(want)];
  }
  o.check(failed == 0, std::to_string(failed) + " mismatches; ");
  o.detail << "index histogram";
  for (int h = 0; h <= 8; ++h) {
    if (histogram[static_cast<std::size_t>(h)] > 0) o.detail << " " << h << ":" << histogram[static_cast<std::size_t>(h)];
  }
}

bool run(int id, const char* name, double budget_s, const std::function<void(Outcome&)>& fn) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what() + "; ");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0.0) o.check(secs <= budget_s, "over time budget; ");
  std::printf("criterion %d %-28s %s  (%.2f s) %s\n", id, name, o.ok ? "PASS" : "FAIL", secs, o.detail.str().c_str());
  std::fflush(stdout);
  return o.ok;
}

}  // namespace

int main() {
  const auto instances = reconstruction_instances();
  bool ok = true;
  ok &= run(1, "cyclic6-components", 1.0, cyclic6_criterion);
  ok &= run(2, "reconstruction", 30.0, [&](Outcome& o) { reconstruction_criterion(o, instances); });
  ok &= run(3, "chain-rotation", 60.0, rotation_criterion);
  ok &= run(4, "route-equivalence", 0.0, [&](Outcome& o) { routes_criterion(o, instances); });
  ok &= run(5, "circulant-identities", 1.0, circulant_criterion);
  ok &= run(6, "perron-frobenius", 30.0, perron_criterion);
  ok &= run(7, "index-of-imprimitivity", 10.0, period_criterion);
  std::printf("acceptance %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
