// hcyclic: cyclic structure, chain rotation and spectral components of
// h-cyclic matrices.

#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "commands.hpp"
#include "report.hpp"
#include "selftest.hpp"

using namespace hcyclic;
using namespace hcyclic::cli;

int main(int argc, char** argv) {
  CLI::App app{"Cyclic structure, Jordan chain rotation and spectral components of h-cyclic matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  std::string format = "auto";
  double zero_tol = -1.0;
  app.add_option("--format", format, "Input matrix format")
      ->check(CLI::IsMember({"auto", "mtx", "json"}))
      ->capture_default_str();
  app.add_option("--json", global.json_path, "Write the JSON report to this path ('-' for stdout)");
  app.add_option("--zero-tol", zero_tol, "Entries with |a| <= tol are structural zeros (default 1e-12 max|a|)");
  app.add_option("--chain-tol", global.chain_tol, "Chain residual tolerance, relative to max(||A||,1) ||x||")
      ->capture_default_str();
  app.add_option("--orbit-tol", global.orbit_tol, "Orbit pairing tolerance, relative to ||A||")
      ->capture_default_str();
  app.add_flag("--allow-primitive", global.allow_primitive, "Report on primitive (h = 1) input instead of failing");
  app.add_option("--seed", global.seed, "Seed for randomized suites")->capture_default_str();

  std::string matrix_path;
  std::string chain_path;
  int k = 0;

  auto* analyze = app.add_subcommand("analyze", "Detect structure, decompose, build and verify components");
  analyze->add_option("matrix", matrix_path, "Matrix file")->required();
  auto* components = app.add_subcommand("components", "Like analyze, and print the component matrices");
  components->add_option("matrix", matrix_path, "Matrix file")->required();
  auto* perron = app.add_subcommand("perron", "Perron-Frobenius checks for a nonnegative irreducible matrix");
  perron->add_option("matrix", matrix_path, "Matrix file")->required();
  auto* rotate = app.add_subcommand("rotate", "Rotate a Jordan chain from lambda to lambda omega^k");
  rotate->add_option("matrix", matrix_path, "Matrix file")->required();
  rotate->add_option("chain", chain_path, "Chain JSON file")->required();
  rotate->add_option("-k,--k", k, "Rotation index in 0..h-1")->required();
  SelftestOptions st;
  auto* selftest = app.add_subcommand("selftest", "Randomized property suites");
  selftest->add_option("--instances", st.instances, "Instances per property")->capture_default_str();
  selftest->add_option("--max-n", st.max_n, "Largest matrix order")->capture_default_str();
  selftest->add_option("--property", st.property, "Run one property: rotation, routes, components, perron, period");
  selftest->add_option("--instance", st.instance, "Run one instance index (replay)");

  CLI11_PARSE(app, argc, argv);

  static const std::map<std::string, MatrixFormat> formats = {
      {"auto", MatrixFormat::kAuto}, {"mtx", MatrixFormat::kMatrixMarket}, {"json", MatrixFormat::kJson}};
  global.format = formats.at(format);
  if (zero_tol >= 0.0) global.zero_tol = zero_tol;

  try {
    if (analyze->parsed()) return cmd_analyze(matrix_path, global, false);
    if (components->parsed()) return cmd_analyze(matrix_path, global, true);
    if (perron->parsed()) return cmd_perron(matrix_path, global);
    if (rotate->parsed()) return cmd_rotate(matrix_path, chain_path, k, global);
    if (selftest->parsed()) return cmd_selftest(st, global);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    if (e.kind() == ErrorKind::kNotStronglyConnected || e.kind() == ErrorKind::kAperiodicUndefined) {
      std::cerr << "reducible input: no cyclic structure\n";
    }
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
