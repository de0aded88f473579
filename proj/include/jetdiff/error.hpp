#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jetdiff {

enum class ErrorKind {
  // exact_poly
  MismatchedTables,
  NotDivisible,
  NonNilpotentArgument,
  NotSymmetric,
  ParseError,
  InvalidArgument,
  // invariant_jets / schur_filtration
  UnsupportedOrder,
  BadIndex,
  NotHomogeneous,
  BadPartition,
  ConstraintViolation,
  // riemann_roch
  UnsupportedAmbient,
  UnsupportedCase,
  InternalInconsistency,
  PeriodUndetermined,
  // thresholds
  NoThresholdFound,
  MissingParam,
  // universal_vf
  IndexOutOfRange,
  NoSolution,
  SingularSystem,
  PointNotOnVariety,
  PointInSigma,
  // cli
  UnknownCommand,
  IoFailure,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace jetdiff
