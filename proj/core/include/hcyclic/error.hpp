#pragma once

#include <stdexcept>
#include <string>

namespace hcyclic {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kInvalidArgument,
  kDimensionMismatch,
  kParse,
  kNotStronglyConnected,
  kAperiodicUndefined,
  kDecomposition,
  kVerification,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kNotStronglyConnected: return "not-strongly-connected";
    case ErrorKind::kAperiodicUndefined: return "aperiodic-undefined";
    case ErrorKind::kDecomposition: return "decomposition";
    case ErrorKind::kVerification: return "verification";
  }
  return "unknown";
}

}  // namespace hcyclic
