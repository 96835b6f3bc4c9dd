#include "mgcat/error.hpp"

namespace mgcat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedFeature: return "MalformedFeature";
    case ErrorKind::RegexViolation: return "RegexViolation";
    case ErrorKind::FeatureMismatch: return "FeatureMismatch";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NoMover: return "NoMover";
    case ErrorKind::SMCViolation: return "SMCViolation";
    case ErrorKind::UnknownWord: return "UnknownWord";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GrammarViolation: return "GrammarViolation";
    case ErrorKind::NotInLexicon: return "NotInLexicon";
    case ErrorKind::TypeClash: return "TypeClash";
    case ErrorKind::VariableCollision: return "VariableCollision";
    case ErrorKind::MissingHypotheses: return "MissingHypotheses";
    case ErrorKind::UnclassifiedFeature: return "UnclassifiedFeature";
    case ErrorKind::UnknownBase: return "UnknownBase";
    case ErrorKind::IllTyped: return "IllTyped";
    case ErrorKind::VariableNotFree: return "VariableNotFree";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NoHost: return "NoHost";
    case ErrorKind::AmbiguousHost: return "AmbiguousHost";
    case ErrorKind::UnresolvedFusion: return "UnresolvedFusion";
    case ErrorKind::LexiconError: return "LexiconError";
    case ErrorKind::NoParse: return "NoParse";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mgcat
