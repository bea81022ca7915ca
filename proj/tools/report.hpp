#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcyclic/hcyclic.hpp"

namespace hcyclic::cli {

using nlohmann::json;

inline constexpr int kReportSchema = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitReducible = 3,
  kExitDecomposition = 4,
  kExitVerification = 5,
};

int exit_code_for(ErrorKind kind);

json complex_json(Complex z);
json matrix_json(const ComplexMatrix& m);
json vector_json(const ComplexVector& v);
/// 1-based classes, as printed everywhere for users.
json partition_json(const OrderedPartition& p);
json chain_json(const JordanChain& chain);

std::string format_complex(Complex z, int precision = 6);
std::string format_partition(const OrderedPartition& p);
void print_matrix(std::ostream& out, const ComplexMatrix& m, int precision = 6);

/// Writes "report" to path; "-" means stdout.
void write_json(const std::string& path, const json& report);

}  // namespace hcyclic::cli
