#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace periodet {

enum class ErrorKind {
  InvalidParameter,
  NoRoots,
  SolverFailure,
  DegenerateInput,
  UnsupportedChart,
  NongenericInput,
  RangeError,
  PoleError,
  InvalidInput,
  ProximityError,
  TrackingFailure,
  HomotopyFailure,
  InvalidHomotopy,
  AccuracyFailure,
  SyntaxError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::NoRoots: return "no-roots";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::UnsupportedChart: return "unsupported-chart";
    case ErrorKind::NongenericInput: return "nongeneric-input";
    case ErrorKind::RangeError: return "range-error";
    case ErrorKind::PoleError: return "pole-error";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ProximityError: return "proximity-error";
    case ErrorKind::TrackingFailure: return "tracking-failure";
    case ErrorKind::HomotopyFailure: return "homotopy-failure";
    case ErrorKind::InvalidHomotopy: return "invalid-homotopy";
    case ErrorKind::AccuracyFailure: return "accuracy-failure";
    case ErrorKind::SyntaxError: return "syntax-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace periodet
