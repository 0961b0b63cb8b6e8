#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cremona {

enum class ErrorKind {
  ParseError,
  DegreeMismatch,
  ZeroTriple,
  SingularMatrix,
  NotLinear,
  IndeterminacyPoint,
  NoInverseRecipe,
  NotQuadratic,
  IrrationalBasePoints,
  TowerTooDeep,
  IsBasePoint,
  MultiplicityUndefined,
  NotDeJonquieres,
  NotBirational,
  DegreeTooHigh,
  UnsupportedBasePointConfiguration,
  NotTorusPerm,
  NotSigma3Adjacent,
  PatternMismatch,
  HypothesisViolation,
  GenericityFailure,
  NotIdentity,
  GenericityExhausted,
  InvalidLetter,
  InvariantViolation,
};

std::string_view error_name(ErrorKind kind);

/// Domain error raised by every library operation. `name()` is the stable
/// identifier printed by the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) +
                           (detail.empty() ? "" : ": " + detail)),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

// Internal consistency check that stays on in release builds.
#define CREMONA_CHECK(cond, msg)                                              \
  do {                                                                        \
    if (!(cond))                                                              \
      throw ::cremona::Error(::cremona::ErrorKind::InvariantViolation, (msg)); \
  } while (0)

}  // namespace cremona
