#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgcat {

// Every failure raised by the library carries one of these kinds so callers
// (and tests) can dispatch on the category without parsing messages.
enum class ErrorKind {
  // Minimalist grammar side.
  MalformedFeature,
  RegexViolation,
  FeatureMismatch,
  NotApplicable,
  NoMover,
  SMCViolation,
  UnknownWord,
  // Categorial side.
  ParseError,
  GrammarViolation,
  NotInLexicon,
  TypeClash,
  VariableCollision,
  MissingHypotheses,
  UnclassifiedFeature,
  // Semantics.
  UnknownBase,
  IllTyped,
  VariableNotFree,
  BoundExceeded,
  NoHost,
  AmbiguousHost,
  UnresolvedFusion,
  // Front end.
  LexiconError,
  NoParse,
  IoError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace mgcat
