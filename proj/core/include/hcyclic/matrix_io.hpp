#pragma once

// Matrix and chain files.
//
// Matrix Market: "array" and "coordinate" layouts, real / integer / complex
// fields, general symmetry only.
// JSON: {"rows": n, "cols": n, "entries": [[re, im], ...]} in row-major order.
// Chains: {"side": "right"|"left", "eigenvalue": [re, im],
//          "vectors": [[[re, im], ...], ...]}.
//
// Parse failures throw Error(kParse) with "source:line:column: message".

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hcyclic/chain_rotation.hpp"
#include "hcyclic/matrix_core.hpp"

namespace hcyclic {

enum class MatrixFormat { kAuto, kMatrixMarket, kJson };

/// kAuto picks JSON for a .json extension or a leading '{', else Matrix Market.
ComplexMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format = MatrixFormat::kAuto);

ComplexMatrix parse_matrix_market(std::istream& in, const std::string& source = "<input>");
ComplexMatrix parse_matrix_json(const std::string& text, const std::string& source = "<input>");

/// Array layout, 17 significant digits. Uses the real field when every
/// imaginary part is zero.
void write_matrix_market(std::ostream& out, const ComplexMatrix& a);
std::string matrix_to_json(const ComplexMatrix& a, int indent = -1);

JordanChain parse_chain_json(const std::string& text, const std::string& source = "<input>");
JordanChain read_chain(const std::filesystem::path& path);
std::string chain_to_json(const JordanChain& chain, int indent = -1);

}  // namespace hcyclic
