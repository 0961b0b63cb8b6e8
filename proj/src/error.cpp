#include "cremona/error.hpp"

namespace cremona {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::ZeroTriple: return "ZeroTriple";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::IndeterminacyPoint: return "IndeterminacyPoint";
    case ErrorKind::NoInverseRecipe: return "NoInverseRecipe";
    case ErrorKind::NotQuadratic: return "NotQuadratic";
    case ErrorKind::IrrationalBasePoints: return "IrrationalBasePoints";
    case ErrorKind::TowerTooDeep: return "TowerTooDeep";
    case ErrorKind::IsBasePoint: return "IsBasePoint";
    case ErrorKind::MultiplicityUndefined: return "MultiplicityUndefined";
    case ErrorKind::NotDeJonquieres: return "NotDeJonquieres";
    case ErrorKind::NotBirational: return "NotBirational";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::UnsupportedBasePointConfiguration:
      return "UnsupportedBasePointConfiguration";
    case ErrorKind::NotTorusPerm: return "NotTorusPerm";
    case ErrorKind::NotSigma3Adjacent: return "NotSigma3Adjacent";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::NotIdentity: return "NotIdentity";
    case ErrorKind::GenericityExhausted: return "GenericityExhausted";
    case ErrorKind::InvalidLetter: return "InvalidLetter";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "UnknownError";
}

}  // namespace cremona
