#pragma once

#include <stdexcept>
#include <string>

namespace bifib {

enum class ErrorKind {
  NonComposable,
  IllFormed,
  SquareNotCommuting,
  FPViolation,
  BudgetExceeded,
  NotStrictlyAlternating,
  NotFP,
  BoundaryMismatch,
  NotAWalk,
  TargetDivisionFailed,
  UndecidableConfiguration,
  Parse,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonComposable: return "NonComposable";
    case ErrorKind::IllFormed: return "IllFormed";
    case ErrorKind::SquareNotCommuting: return "SquareNotCommuting";
    case ErrorKind::FPViolation: return "FPViolation";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotStrictlyAlternating: return "NotStrictlyAlternating";
    case ErrorKind::NotFP: return "NotFP";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::NotAWalk: return "NotAWalk";
    case ErrorKind::TargetDivisionFailed: return "TargetDivisionFailed";
    case ErrorKind::UndecidableConfiguration: return "UndecidableConfiguration";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace bifib
