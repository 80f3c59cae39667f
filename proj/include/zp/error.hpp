#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zp {

enum class ErrorCode {
  ParseError,
  DimensionMismatch,
  NonIntegral,
  RankDeficient,
  NotSimilitude,
  NegativeSimilitude,
  UnsupportedGenus,
  NotPrimitive,
  Precondition,
  OrbitBudgetExceeded,
  ClosureBudgetExceeded,
  DisconnectedGraph,
  NonConvergence,
};

/// Stable machine-readable spelling used by the CLI and in diagnostics.
constexpr std::string_view code_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NonIntegral: return "NON_INTEGRAL";
    case ErrorCode::RankDeficient: return "RANK_DEFICIENT";
    case ErrorCode::NotSimilitude: return "NOT_SIMILITUDE";
    case ErrorCode::NegativeSimilitude: return "NEGATIVE_SIMILITUDE";
    case ErrorCode::UnsupportedGenus: return "UNSUPPORTED_GENUS";
    case ErrorCode::NotPrimitive: return "NOT_PRIMITIVE";
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::OrbitBudgetExceeded: return "ORBIT_BUDGET_EXCEEDED";
    case ErrorCode::ClosureBudgetExceeded: return "CLOSURE_BUDGET_EXCEEDED";
    case ErrorCode::DisconnectedGraph: return "DISCONNECTED_GRAPH";
    case ErrorCode::NonConvergence: return "NON_CONVERGENCE";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zp
