#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dwpf {

enum class ErrorKind {
  DimensionTooLarge,
  NonFiniteEntry,
  PoleAtEvaluationPoint,
  InsufficientDerivatives,
  CardinalityMismatch,
  DegenerateEpsilons,
  CostGuard,
  NoConvergence,
  SingularMatrix,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the Bethe solvers; remembers how far the coupling homotopy got.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& detail, std::complex<double> g_reached)
      : Error(ErrorKind::NoConvergence, detail), g_reached_(g_reached) {}

  std::complex<double> g_reached() const noexcept { return g_reached_; }

 private:
  std::complex<double> g_reached_;
};

}  // namespace dwpf
