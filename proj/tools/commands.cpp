#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "report.hpp"

namespace hcyclic::cli {

namespace {

const char* yes_no(bool b) { return b ? "ok" : "FAIL"; }

ComplexMatrix load_square(const std::string& path, const GlobalOptions& options) {
  ComplexMatrix a = read_matrix(path, options.format);
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kParse, path + ": matrix is " + std::to_string(a.rows()) + "x" +
                                       std::to_string(a.cols()) + ", expected square");
  }
  return a;
}

double zero_tol_for(const ComplexMatrix& a, const GlobalOptions& options) {
  return options.zero_tol ? *options.zero_tol : default_zero_tol(a);
}

json tolerances_json(const ComplexMatrix& a, const GlobalOptions& options) {
  const SpectralOptions defaults;
  return {{"zero_tol", zero_tol_for(a, options)},
          {"chain_tol_relative", options.chain_tol},
          {"orbit_tol_relative", options.orbit_tol},
          {"cluster_tol_relative", defaults.cluster_tol},
          {"residual_tol_relative", defaults.residual_tol},
          {"rank_tol", defaults.rank.rank_tol},
          {"component_tol", options.component_tol},
          {"route_tol_relative", kRouteTol},
          {"perron_tol", kPerronTol},
          {"nonnegative_floor", kNonnegativeFloor}};
}

bool is_real_nonnegative(const ComplexMatrix& a, double zero_tol) {
  return a.imag().cwiseAbs().maxCoeff() <= zero_tol && a.real().minCoeff() >= -zero_tol;
}

double max_entry(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Section perron_section(const ComplexMatrix& a, const CyclicStructure& s, const OrbitBasis* basis,
                       std::ostream& out, bool print_component) {
  Section sec;
  const PerronData pd = perron_data(a);
  const double rho = pd.spectral_radius;
  const double norm = inf_norm(a);
  const bool positive = pd.right.real().minCoeff() > 0.0 && pd.left.real().minCoeff() > 0.0;

  int near_rho = 0;
  for (const auto& z : eigenvalues(a)) {
    if (std::abs(z - rho) <= 1e-6 * std::max(1.0, rho)) ++near_rho;
  }
  const bool simple = near_rho == 1;
  const auto peri = check_peripheral_rotation(a, s.h, kPerronTol);

  sec.j = {{"spectral_radius", rho},
           {"cyclic_index", pd.cyclic_index},
           {"right", vector_json(pd.right)},
           {"left", vector_json(pd.left)},
           {"right_residual", pd.right_residual},
           {"left_residual", pd.left_residual},
           {"iterations", pd.iterations},
           {"positive", positive},
           {"simple", simple},
           {"peripheral", {{"values", json::array()},
                           {"error", peri.peripheral_error},
                           {"tol", peri.tol},
                           {"ok", peri.peripheral_ok}}},
           {"rotation_invariance", {{"error", peri.rotation_error}, {"tol", peri.tol}, {"ok", peri.rotation_ok}}}};
  for (const auto& z : peri.peripheral) sec.j["peripheral"]["values"].push_back(complex_json(z));
  sec.ok = rho > 0.0 && positive && simple && peri.peripheral_ok && peri.rotation_ok;

  out << "perron: rho = " << rho << ", x > 0 and y > 0: " << yes_no(positive)
      << ", simple: " << yes_no(simple) << "\n";
  out << "  peripheral spectrum = rho * roots of unity: " << yes_no(peri.peripheral_ok) << " (error "
      << peri.peripheral_error << ", tol " << peri.tol << ")\n";
  out << "  spectrum invariant under omega: " << yes_no(peri.rotation_ok) << " (error " << peri.rotation_error
      << ")\n";

  if (s.h >= 2) {
    PerronData unit = pd;
    unit.spectral_radius = 1.0;
    const ComponentMatrix p = perron_component(a / rho, unit, s);
    const double min_entry = p.matrix.real().minCoeff();
    const bool nonneg = min_entry >= kNonnegativeFloor && p.matrix.imag().cwiseAbs().maxCoeff() == 0.0;

    // (A_1)^h keeps its arcs inside the classes.
    ComplexMatrix power = ComplexMatrix::Identity(a.rows(), a.cols());
    for (int i = 0; i < s.h; ++i) power = power * p.matrix;
    const auto cls = s.partition.class_index(static_cast<int>(a.rows()));
    double leak = 0.0;
    for (Eigen::Index i = 0; i < power.rows(); ++i) {
      for (Eigen::Index jj = 0; jj < power.cols(); ++jj) {
        if (cls[static_cast<std::size_t>(i)] != cls[static_cast<std::size_t>(jj)]) {
          leak = std::max(leak, std::abs(power(i, jj)));
        }
      }
    }
    const double leak_tol = kPerronTol * std::max(1.0, max_entry(power));
    const bool diagonal = leak <= leak_tol;

    json comp = {{"matrix", matrix_json(p.matrix)},
                 {"min_entry", min_entry},
                 {"nonnegative", nonneg},
                 {"power_h_block_diagonal", diagonal},
                 {"power_h_leak", leak},
                 {"power_h_tol", leak_tol}};
    bool match_ok = true;
    if (basis) {
      int which = -1;
      for (int i = 0; i < basis->orbit_count(); ++i) {
        if (std::abs(basis->orbits[static_cast<std::size_t>(i)].base_eigenvalue - rho) <= 1e-6 * rho) which = i;
      }
      if (which < 0) {
        match_ok = false;
        comp["similarity_difference"] = nullptr;
      } else {
        const auto sim = to_original_frame(component_via_similarity(*basis, which), basis->permutation, s.partition);
        const double diff = max_entry(ComplexMatrix(rho * p.matrix - sim.matrix));
        match_ok = diff <= kPerronTol * norm;
        comp["similarity_difference"] = diff;
        comp["similarity_tol"] = kPerronTol * norm;
      }
      comp["matches_similarity"] = match_ok;
    }
    sec.j["component"] = std::move(comp);
    sec.ok = sec.ok && nonneg && diagonal && match_ok;

    out << "  Perron component of A/rho: nonnegative " << yes_no(nonneg) << " (min entry " << min_entry
        << "), (A_1)^h block diagonal " << yes_no(diagonal);
    if (basis) out << ", equals similarity route " << yes_no(match_ok);
    out << "\n";
    if (print_component) print_matrix(out, p.matrix);
  }
  return sec;
}

double chain_tolerance(const ComplexMatrix& a, const JordanChain& chain, double relative) {
  double scale = 0.0;
  for (const auto& v : chain.vectors) scale = std::max(scale, inf_norm(v));
  return relative * std::max(inf_norm(a), 1.0) * scale;
}

int cmd_analyze(const std::string& matrix_path, const GlobalOptions& options, bool print_components) {
  const ComplexMatrix a = load_square(matrix_path, options);
  const double zero_tol = zero_tol_for(a, options);
  const double norm = inf_norm(a);
  std::ostream& out = std::cout;

  json report = {{"schema", kReportSchema},
                 {"command", print_components ? "components" : "analyze"},
                 {"input", {{"path", matrix_path}, {"rows", a.rows()}, {"cols", a.cols()}, {"inf_norm", norm}}},
                 {"tolerances", tolerances_json(a, options)}};
  out << "matrix: " << matrix_path << " (" << a.rows() << "x" << a.cols() << ", ||A||_inf = " << norm << ")\n";

  const CyclicStructure s = detect_cyclic_structure(a, zero_tol);
  report["structure"] = {{"h", s.h}, {"partition", partition_json(s.partition)}, {"primitive", s.primitive()}};
  out << "cyclic index h = " << s.h << "\n";

  if (s.primitive()) {
    if (!options.allow_primitive) {
      out << "primitive: no h >= 2 cyclic structure (use --allow-primitive for an informational report)\n";
      report["passed"] = false;
      report["exit_code"] = kExitReducible;
      if (!options.json_path.empty()) write_json(options.json_path, report);
      return kExitReducible;
    }
    out << "primitive (h = 1): informational mode\n";
    json spectrum = json::array();
    for (const auto& c : eigendecompose(a, SpectralOptions{}.cluster_tol)) {
      spectrum.push_back({{"value", complex_json(c.value)}, {"multiplicity", c.multiplicity}});
      out << "  eigenvalue " << format_complex(c.value) << " (multiplicity " << c.multiplicity << ")\n";
    }
    report["spectrum"] = {{"clusters", std::move(spectrum)}};
    bool ok = true;
    if (is_real_nonnegative(a, zero_tol)) {
      auto sec = perron_section(a, s, nullptr, out, false);
      report["perron"] = std::move(sec.j);
      ok = sec.ok;
    } else {
      report["perron"] = nullptr;
    }
    report["passed"] = ok;
    report["exit_code"] = ok ? kExitOk : kExitVerification;
    out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
    if (!options.json_path.empty()) write_json(options.json_path, report);
    return ok ? kExitOk : kExitVerification;
  }

  out << "partition: " << format_partition(s.partition) << "\n";

  SpectralOptions spec;
  spec.orbit_tol = options.orbit_tol;
  const OrbitBasis basis = build_orbit_basis(a, s, spec);
  const RootsOfUnity roots(s.h);

  // Spectrum by orbit.
  json orbits = json::array();
  int zero_mult = 0;
  for (const auto& ch : basis.zero_chains) zero_mult += ch.length();
  const int t_prime = basis.orbit_count();
  const int t = basis.jordan_block_count;
  out << "orbits: " << t_prime << ", Jordan blocks: " << t << "\n";
  for (int i = 0; i < t_prime; ++i) {
    const auto& orbit = basis.orbits[static_cast<std::size_t>(i)];
    json members = json::array();
    out << "  [" << i + 1 << "] base " << format_complex(orbit.base_eigenvalue) << ", chain length "
        << orbit.chain_length << ", members:";
    for (int k = 0; k < s.h; ++k) {
      const Complex z = orbit.base_eigenvalue * roots.power(k);
      members.push_back(complex_json(z));
      out << (k ? "," : "") << " " << format_complex(z);
    }
    out << "\n";
    orbits.push_back({{"base", complex_json(orbit.base_eigenvalue)},
                      {"chain_length", orbit.chain_length},
                      {"members", std::move(members)}});
  }
  if (zero_mult > 0) out << "  eigenvalue 0 with algebraic multiplicity " << zero_mult << " (no component)\n";
  report["spectrum"] = {{"orbits", std::move(orbits)},
                        {"zero_multiplicity", zero_mult},
                        {"orbit_count", t_prime},
                        {"jordan_block_count", t},
                        {"orbit_count_divides_block_count", t_prime > 0 && t % t_prime == 0}};
  report["basis"] = {{"residual", basis.basis_residual},
                     {"residual_bound", basis.residual_bound},
                     {"z_condition", basis.z_condition}};

  // Chains.
  json chains = json::array();
  int chain_total = 0;
  int chain_ok = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < t_prime; ++i) {
    const auto& orbit = basis.orbits[static_cast<std::size_t>(i)];
    for (int k = 0; k < s.h; ++k) {
      for (const JordanChain* ch : {&orbit.right_chains[static_cast<std::size_t>(k)],
                                    &orbit.left_chains[static_cast<std::size_t>(k)]}) {
        const double tol = chain_tolerance(basis.matrix, *ch, options.chain_tol);
        const auto res = verify_chain(basis.matrix, *ch, tol);
        ++chain_total;
        chain_ok += res.passed ? 1 : 0;
        if (tol > 0.0) worst_ratio = std::max(worst_ratio, res.max_residual / tol);
        chains.push_back({{"orbit", i + 1},
                          {"k", k},
                          {"side", ch->side == ChainSide::kRight ? "right" : "left"},
                          {"eigenvalue", complex_json(ch->eigenvalue)},
                          {"max_residual", res.max_residual},
                          {"tol", tol},
                          {"passed", res.passed}});
      }
    }
  }
  const bool chains_pass = chain_ok == chain_total;
  report["chains"] = std::move(chains);
  out << "chains: " << chain_ok << "/" << chain_total << " verified (worst residual/tol " << worst_ratio << ")\n";

  // Components by both routes, then the property checks in A's own frame.
  std::vector<ComponentMatrix> comps;
  json comp_json = json::array();
  bool routes_pass = true;
  for (int i = 0; i < t_prime; ++i) {
    const auto sim = component_via_similarity(basis, i);
    const auto blk = component_via_blocks(basis.orbits[static_cast<std::size_t>(i)], basis.partition);
    const double diff = max_entry(ComplexMatrix(sim.matrix - blk.matrix));
    const double route_tol = kRouteTol * norm;
    routes_pass = routes_pass && diff <= route_tol;
    comps.push_back(to_original_frame(sim, basis.permutation, s.partition));
    comp_json.push_back({{"base", complex_json(sim.base_eigenvalue)},
                         {"chain_length", sim.chain_length},
                         {"route_difference", diff},
                         {"route_tol", route_tol},
                         {"routes_agree", diff <= route_tol},
                         {"matrix", matrix_json(comps.back().matrix)}});
  }
  ComplexMatrix remainder;
  const bool singular = zero_mult > 0;
  if (singular) remainder = unpermute_symmetric(zero_eigenvalue_part(basis), basis.permutation);
  const auto props = verify_component_properties(a, comps, s.partition, options.component_tol,
                                                 singular ? &remainder : nullptr);
  for (std::size_t i = 0; i < props.components.size(); ++i) {
    const auto& c = props.components[i];
    auto& j = comp_json[i];
    j["norm"] = c.norm;
    j["contained"] = c.contained;
    j["containment_tol"] = c.containment_tol;
    j["commutator"] = c.commutator;
    j["commutator_tol"] = c.commutator_tol;
    j["commutes"] = c.commutes;
    j["cyclic_index_ok"] = c.cyclic_index_ok ? json(*c.cyclic_index_ok) : json(nullptr);
  }
  report["components"] = std::move(comp_json);
  json ann = json::array();
  double worst_ann = 0.0;
  int ann_ok = 0;
  for (const auto& p : props.annihilation) {
    ann.push_back({{"i", p.i + 1}, {"j", p.j + 1}, {"norm", p.norm}, {"tol", p.tol}, {"ok", p.ok}});
    worst_ann = std::max(worst_ann, p.norm);
    ann_ok += p.ok ? 1 : 0;
  }
  report["annihilation"] = std::move(ann);
  report["reconstruction"] = {{"residual", props.reconstruction},
                              {"tol", props.reconstruction_tol},
                              {"ok", props.reconstruction_ok},
                              {"includes_zero_eigenvalue_part", singular}};

  out << "components:\n";
  for (std::size_t i = 0; i < props.components.size(); ++i) {
    const auto& c = props.components[i];
    const auto& rj = report["components"][i];
    out << "  A_{" << format_complex(c.base_eigenvalue) << "}: routes agree "
        << yes_no(rj["routes_agree"].get<bool>()) << " (diff " << rj["route_difference"].get<double>()
        << "), pattern contained " << yes_no(c.contained) << ", commutes " << yes_no(c.commutes);
    if (c.cyclic_index_ok) out << ", cyclic index " << yes_no(*c.cyclic_index_ok);
    out << "\n";
    if (print_components) print_matrix(out, comps[i].matrix);
  }
  out << "annihilation: " << ann_ok << "/" << props.annihilation.size() << " pairs (max norm " << worst_ann
      << ")\n";
  out << "reconstruction: ||sum A_lambda - A|| = " << props.reconstruction << " (tol " << props.reconstruction_tol
      << ") " << yes_no(props.reconstruction_ok) << "\n";
  for (const auto& w : basis.warnings) out << "warning: " << w << "\n";
  report["warnings"] = basis.warnings;

  bool perron_pass = true;
  if (is_real_nonnegative(a, zero_tol)) {
    auto sec = perron_section(a, s, &basis, out, print_components);
    report["perron"] = std::move(sec.j);
    perron_pass = sec.ok;
  } else {
    report["perron"] = nullptr;
  }

  const bool passed = chains_pass && routes_pass && props.all_passed && perron_pass;
  report["passed"] = passed;
  report["exit_code"] = passed ? kExitOk : kExitVerification;
  out << "result: " << (passed ? "PASS" : "FAIL") << "\n";
  if (!options.json_path.empty()) write_json(options.json_path, report);
  return passed ? kExitOk : kExitVerification;
}

int cmd_perron(const std::string& matrix_path, const GlobalOptions& options) {
  const ComplexMatrix a = load_square(matrix_path, options);
  const double zero_tol = zero_tol_for(a, options);
  if (!is_real_nonnegative(a, zero_tol)) {
    throw Error(ErrorKind::kInvalidArgument, "perron needs a real nonnegative matrix");
  }
  const CyclicStructure s = detect_cyclic_structure(a, zero_tol);
  std::ostream& out = std::cout;
  out << "matrix: " << matrix_path << " (" << a.rows() << "x" << a.cols() << ")\n";
  out << "cyclic index h = " << s.h << ", partition: " << format_partition(s.partition) << "\n";
  std::optional<OrbitBasis> basis;
  if (s.h >= 2) {
    SpectralOptions spec;
    spec.orbit_tol = options.orbit_tol;
    basis = build_orbit_basis(a, s, spec);
  }
  auto sec = perron_section(a, s, basis ? &*basis : nullptr, out, true);
  json report = {{"schema", kReportSchema},
                 {"command", "perron"},
                 {"input", {{"path", matrix_path}, {"rows", a.rows()}, {"cols", a.cols()}}},
                 {"tolerances", tolerances_json(a, options)},
                 {"structure", {{"h", s.h}, {"partition", partition_json(s.partition)}}},
                 {"perron", sec.j},
                 {"passed", sec.ok},
                 {"exit_code", sec.ok ? kExitOk : kExitVerification}};
  out << "result: " << (sec.ok ? "PASS" : "FAIL") << "\n";
  if (!options.json_path.empty()) write_json(options.json_path, report);
  return sec.ok ? kExitOk : kExitVerification;
}

int cmd_rotate(const std::string& matrix_path, const std::string& chain_path, int k,
               const GlobalOptions& options) {
  const ComplexMatrix a = load_square(matrix_path, options);
  const JordanChain chain = read_chain(chain_path);
  if (chain.dimension() != a.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "chain dimension " + std::to_string(chain.dimension()) +
                                                   " differs from matrix order " + std::to_string(a.rows()));
  }
  const CyclicStructure s = detect_cyclic_structure(a, zero_tol_for(a, options));
  if (s.primitive()) {
    std::cerr << "error: primitive matrix (h = 1), nothing to rotate\n";
    return kExitReducible;
  }
  if (k < 0 || k >= s.h) {
    throw Error(ErrorKind::kInvalidArgument,
                "k must lie in 0.." + std::to_string(s.h - 1) + " (got " + std::to_string(k) + ")");
  }
  const double tol_in = chain_tolerance(a, chain, options.chain_tol);
  const auto res_in = verify_chain(a, chain, tol_in);
  json report = {{"schema", kReportSchema},
                 {"command", "rotate"},
                 {"h", s.h},
                 {"k", k},
                 {"partition", partition_json(s.partition)},
                 {"input_verification", {{"max_residual", res_in.max_residual}, {"tol", tol_in}, {"passed", res_in.passed}}}};
  if (!res_in.passed) {
    report["passed"] = false;
    report["exit_code"] = kExitVerification;
    std::cout << report.dump(2) << "\n";
    std::cerr << "error: input chain fails verification (residual " << res_in.max_residual << ", tol " << tol_in
              << ")\n";
    if (!options.json_path.empty()) write_json(options.json_path, report);
    return kExitVerification;
  }

  // Rotation works on the consecutive frame; map there and back.
  const Permutation& perm = s.consecutive_permutation;
  JordanChain local = chain;
  for (auto& v : local.vectors) v = permute_vector(v, perm);
  JordanChain rotated = rotate_chain(local, k, s.consecutive_partition());
  for (auto& v : rotated.vectors) v = unpermute_vector(v, perm);

  const double tol_out = chain_tolerance(a, rotated, options.chain_tol);
  const auto res_out = verify_chain(a, rotated, tol_out);
  report["chain"] = chain_json(rotated);
  report["verification"] = {{"link_residuals", res_out.link_residuals},
                            {"max_residual", res_out.max_residual},
                            {"tol", tol_out},
                            {"passed", res_out.passed}};
  report["passed"] = res_out.passed;
  report["exit_code"] = res_out.passed ? kExitOk : kExitVerification;
  std::cout << report.dump(2) << "\n";
  if (!options.json_path.empty()) write_json(options.json_path, report);
  return res_out.passed ? kExitOk : kExitVerification;
}

}  // namespace hcyclic::cli
