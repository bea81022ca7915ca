#include "selftest.hpp"

#include "report.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace hcyclic::cli {

namespace {

// Outcome of one random instance; params describe it for replay.
struct Trial {
  bool ok = true;
  std::string params;
  std::string reason;

  void fail(const std::string& why) {
    if (ok) reason = why;
    ok = false;
  }
};

using TrialFn = std::function<void(std::mt19937_64&, int max_n, Trial&)>;

std::string describe(int h, int n) {
  return "h=" + std::to_string(h) + " n=" + std::to_string(n);
}

void rotation_trial(std::mt19937_64& rng, int max_n, Trial& t) {
  std::uniform_int_distribution<int> pick_h(2, 5);
  PlantOptions po;
  po.h = pick_h(rng);
  po.block_sizes = random_block_sizes(rng, po.h, max_n);
  po.allow_zero_eigenvalue = true;
  const auto inst = random_planted_instance(rng, po);
  const int h = po.h;
  t.params = describe(h, inst.order());
  const ComplexMatrix& a = inst.matrix;
  const double tol = 1e-9 * std::max(inf_norm(a), 1.0);

  std::uniform_int_distribution<int> pick_k(0, h - 1);
  for (std::size_t b = 0; b < inst.right_chains.size(); ++b) {
    for (const JordanChain* base : {&inst.right_chains[b].front(), &inst.left_chains[b].front()}) {
      for (int k = 0; k < h; ++k) {
        const auto rotated = rotate_chain(*base, k, inst.partition);
        const auto res = verify_chain(a, rotated, tol);
        if (!res.passed) {
          std::ostringstream why;
          why << (base->side == ChainSide::kRight ? "right" : "left") << " chain for orbit " << b << " rotated by k="
              << k << " has residual " << res.max_residual << " > " << tol;
          t.fail(why.str());
        }
      }
      const JordanChain same = rotate_chain(*base, 0, inst.partition);
      for (int j = 0; j < base->length(); ++j) {
        if (same.vectors[static_cast<std::size_t>(j)] != base->vectors[static_cast<std::size_t>(j)]) {
          t.fail("k=0 rotation is not the identity");
        }
      }
      const int k1 = pick_k(rng);
      const int k2 = pick_k(rng);
      const auto twice = rotate_chain(rotate_chain(*base, k1, inst.partition), k2, inst.partition);
      const auto once = rotate_chain(*base, (k1 + k2) % h, inst.partition);
      for (int j = 0; j < base->length(); ++j) {
        const double d = inf_norm(ComplexVector(twice.vectors[static_cast<std::size_t>(j)] -
                                                once.vectors[static_cast<std::size_t>(j)]));
        if (d > 1e-12) t.fail("rotation composition differs by " + std::to_string(d));
      }
    }
  }
}

struct PipelineRun {
  PlantedInstance inst;
  CyclicStructure s;
  OrbitBasis basis;
};

PipelineRun planted_pipeline(std::mt19937_64& rng, int max_n, Trial& t) {
  std::uniform_int_distribution<int> pick_h(2, 4);
  const int h = pick_h(rng);
  PlantOptions po;
  po.h = h;
  po.block_sizes = random_block_sizes(rng, h, max_n);
  PipelineRun run;
  run.inst = random_planted_instance(rng, po);
  scramble_instance(run.inst, rng);
  t.params = describe(h, run.inst.order());
  run.s = detect_cyclic_structure(run.inst.matrix, default_zero_tol(run.inst.matrix));
  if (run.s.h != h) t.fail("detected h=" + std::to_string(run.s.h));
  run.basis = build_orbit_basis(run.inst.matrix, run.s);
  return run;
}

void routes_trial(std::mt19937_64& rng, int max_n, Trial& t) {
  const auto run = planted_pipeline(rng, max_n, t);
  if (!t.ok) return;
  const double tol = kRouteTol * inf_norm(run.inst.matrix);
  for (int i = 0; i < run.basis.orbit_count(); ++i) {
    const auto sim = component_via_similarity(run.basis, i);
    const auto blk = component_via_blocks(run.basis.orbits[static_cast<std::size_t>(i)], run.basis.partition);
    const double d = ComplexMatrix(sim.matrix - blk.matrix).cwiseAbs().maxCoeff();
    if (d > tol) {
      std::ostringstream why;
      why << "routes differ by " << d << " > " << tol << " on orbit " << i;
      t.fail(why.str());
    }
  }
  return;
}

void components_trial(std::mt19937_64& rng, int max_n, Trial& t) {
  const auto run = planted_pipeline(rng, max_n, t);
  if (!t.ok) return;
  std::vector<ComponentMatrix> comps;
  for (int i = 0; i < run.basis.orbit_count(); ++i) {
    comps.push_back(to_original_frame(component_via_similarity(run.basis, i), run.basis.permutation, run.s.partition));
  }
  const auto report = verify_component_properties(run.inst.matrix, comps, run.s.partition);
  if (!report.reconstruction_ok) {
    t.fail("reconstruction residual " + std::to_string(report.reconstruction));
  }
  for (const auto& c : report.components) {
    if (!c.contained) t.fail("component pattern leaves the cyclic positions");
    if (!c.commutes) t.fail("component does not commute with A");
    if (c.cyclic_index_ok && !*c.cyclic_index_ok) t.fail("component has the wrong cyclic index");
  }
  for (const auto& p : report.annihilation) {
    if (!p.ok) t.fail("A_i A_j nonzero for orbits " + std::to_string(p.i) + "," + std::to_string(p.j));
  }
  return;
}

void perron_trial(std::mt19937_64& rng, int max_n, Trial& t) {
  std::uniform_int_distribution<int> pick_h(2, 4);
  const int h = pick_h(rng);
  std::uniform_int_distribution<int> pick_m(1, std::max(1, max_n / h));
  const auto inst = random_nonnegative_cyclic(rng, h, pick_m(rng));
  t.params = describe(h, static_cast<int>(inst.matrix.rows()));
  const auto s = detect_cyclic_structure(inst.matrix, default_zero_tol(inst.matrix));
  const auto basis = build_orbit_basis(inst.matrix, s);
  std::ostringstream sink;
  const auto sec = perron_section(inst.matrix, s, &basis, sink, false);
  if (!sec.ok) t.fail("Perron checks failed: " + sink.str());
  return;
}

void period_trial(std::mt19937_64& rng, int /*max_n*/, Trial& t) {
  std::uniform_int_distribution<int> pick_n(1, 8);
  const int n = pick_n(rng);
  const Digraph g = random_strongly_connected_digraph(rng, n);
  t.params = "n=" + std::to_string(n) + " arcs=" + std::to_string(g.arc_count());
  // Closed walks of length L exist iff trace(M^L) > 0; boolean powers.
  std::vector<std::vector<char>> m(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const auto& [u, v] : g.arcs()) m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
  auto p = m;
  int expected = 0;
  for (int len = 1; len <= 2 * n; ++len) {
    bool closed = false;
    for (int i = 0; i < n; ++i) closed = closed || p[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (closed) expected = std::gcd(expected, len);
    std::vector<std::vector<char>> next(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (!p[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) continue;
        for (int j = 0; j < n; ++j) {
          if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        }
      }
    }
    p = std::move(next);
  }
  const int got = index_of_imprimitivity(g);
  if (got != expected) t.fail("index " + std::to_string(got) + " but closed walks give " + std::to_string(expected));
  return;
}

struct Property {
  const char* name;
  TrialFn fn;
};

}  // namespace

int cmd_selftest(const SelftestOptions& options, const GlobalOptions& global) {
  const std::vector<Property> properties = {
      {"rotation", rotation_trial}, {"routes", routes_trial}, {"components", components_trial},
      {"perron", perron_trial},     {"period", period_trial},
  };
  if (!options.property.empty()) {
    bool known = false;
    for (const auto& p : properties) known = known || options.property == p.name;
    if (!known) throw Error(ErrorKind::kInvalidArgument, "unknown property '" + options.property + "'");
  }
  if (options.instances < 1 || options.max_n < 2) {
    throw Error(ErrorKind::kInvalidArgument, "need --instances >= 1 and --max-n >= 2");
  }

  std::cout << "selftest seed=" << global.seed << " instances=" << options.instances << " max-n=" << options.max_n
            << "\n";
  bool all_ok = true;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t pi = 0; pi < properties.size(); ++pi) {
    const auto& prop = properties[pi];
    if (!options.property.empty() && options.property != prop.name) continue;
    int passed = 0;
    int run = 0;
    std::vector<std::string> failures;
    for (int i = 0; i < options.instances; ++i) {
      if (options.instance >= 0 && i != options.instance) continue;
      std::seed_seq seq{static_cast<std::uint32_t>(global.seed), static_cast<std::uint32_t>(global.seed >> 32),
                        static_cast<std::uint32_t>(pi), static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      Trial t;
      try {
        prop.fn(rng, options.max_n, t);
      } catch (const Error& e) {
        t.fail(std::string(to_string(e.kind())) + ": " + e.what());
      }
      ++run;
      if (t.ok) {
        ++passed;
      } else {
        std::ostringstream line;
        line << "    instance " << i << " (" << t.params << "): " << t.reason << "\n"
             << "    replay: hcyclic selftest --seed " << global.seed << " --property " << prop.name
             << " --instance " << i << " --instances " << options.instances << " --max-n " << options.max_n;
        failures.push_back(line.str());
      }
    }
    const bool ok = passed == run;
    all_ok = all_ok && ok;
    std::cout << "  " << prop.name << ": " << passed << "/" << run << " " << (ok ? "PASS" : "FAIL") << "\n";
    for (const auto& f : failures) std::cout << f << "\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "selftest " << (all_ok ? "PASS" : "FAIL") << " (" << secs << " s)\n";
  return all_ok ? kExitOk : kExitVerification;
}

}  // namespace hcyclic::cli
