#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hcyclic/hcyclic.hpp"
#include "json.hpp"

namespace hcyclic::cli {

struct GlobalOptions {
  MatrixFormat format = MatrixFormat::kAuto;
  std::string json_path;  // empty: no JSON file
  std::optional<double> zero_tol;
  double chain_tol = 1e-9;   // relative, see chain_tolerance
  double orbit_tol = 1e-8;   // relative to ||A||_inf
  double component_tol = 1e-9;
  bool allow_primitive = false;
  std::uint64_t seed = 20140601;
};

inline constexpr double kRouteTol = 1e-8;
inline constexpr double kPerronTol = 1e-8;
inline constexpr double kNonnegativeFloor = -1e-10;

struct Section {
  nlohmann::json j;
  bool ok = true;
};

/// Perron checks for a nonnegative irreducible matrix. With a basis, the
/// Perron component is also compared with the similarity route.
Section perron_section(const ComplexMatrix& a, const CyclicStructure& s, const OrbitBasis* basis,
                       std::ostream& out, bool print_component);

/// chain_tol * max(||A||_inf, 1) * max_j ||x_j||_inf
double chain_tolerance(const ComplexMatrix& a, const JordanChain& chain, double relative);

int cmd_analyze(const std::string& matrix_path, const GlobalOptions& options, bool print_components);
int cmd_perron(const std::string& matrix_path, const GlobalOptions& options);
int cmd_rotate(const std::string& matrix_path, const std::string& chain_path, int k,
               const GlobalOptions& options);

}  // namespace hcyclic::cli
