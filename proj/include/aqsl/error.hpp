#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aqsl {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  NotPSD,
  DimensionMismatch,
  NotAState,
  ZeroVector,
  BadProbabilities,
  NotQubitPartyA,
  NotTwoQubit,
  NegativeTime,
  StencilOutOfDomain,
  ModeMismatch,
  DegenerateBound,
  InvalidConfig,
  IoFailure,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::BadProbabilities: return "BadProbabilities";
    case ErrorKind::NotQubitPartyA: return "NotQubitPartyA";
    case ErrorKind::NotTwoQubit: return "NotTwoQubit";
    case ErrorKind::NegativeTime: return "NegativeTime";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::DegenerateBound: return "DegenerateBound";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aqsl
