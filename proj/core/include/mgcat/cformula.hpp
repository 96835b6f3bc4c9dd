#pragma once

// Formulae of the restricted partially commutative calculus used by
// categorial minimalist grammars:
//
//   top ::= x / b | x /^ b | c
//   x   ::= b \ x | b \^ x | m \ x | c
//   c   ::= m * c | b
//
// with b ranging over base categories and m over movement features.

#include <memory>
#include <string>
#include <string_view>

#include "mgcat/alphabet.hpp"

namespace mgcat::cmg {

enum class Conn {
  Atom,
  Over,      // A / B
  OverHdr,   // A /^ B
  Under,     // B \ A
  UnderHdr,  // B \^ A
  Tensor,    // A * B
};

class CFormula;
using CFormulaPtr = std::shared_ptr<const CFormula>;

class CFormula {
 public:
  static CFormulaPtr atom(std::string name);
  // `result` / `arg`
  static CFormulaPtr over(CFormulaPtr result, CFormulaPtr arg, bool hdr = false);
  // `arg` \ `result`
  static CFormulaPtr under(CFormulaPtr arg, CFormulaPtr result, bool hdr = false);
  static CFormulaPtr tensor(CFormulaPtr left, CFormulaPtr right);

  Conn conn() const { return conn_; }
  bool is_atom() const { return conn_ == Conn::Atom; }
  bool is_implication() const { return conn_ != Conn::Atom && conn_ != Conn::Tensor; }
  bool is_hdr() const { return conn_ == Conn::OverHdr || conn_ == Conn::UnderHdr; }
  const std::string& name() const { return name_; }

  // Implications only.
  const CFormulaPtr& argument() const { return arg_; }
  const CFormulaPtr& result() const { return res_; }
  // Tensors only.
  const CFormulaPtr& left() const { return arg_; }
  const CFormulaPtr& right() const { return res_; }

  bool operator==(const CFormula& other) const;

 private:
  Conn conn_ = Conn::Atom;
  std::string name_;
  CFormulaPtr arg_;
  CFormulaPtr res_;
};

inline bool same(const CFormulaPtr& a, const CFormulaPtr& b) {
  return a && b && *a == *b;
}

// Parses the connective syntax `/`, `/^`, `\`, `\^`, `*` (also `⊗`, `/↑`,
// `\↑`) with parentheses. `*` binds tightest, `\` associates to the right and
// `/` to the left. Throws ParseError on malformed text and GrammarViolation
// when the formula falls outside the restricted grammar. With a non-empty
// alphabet, base and movement positions are also checked against it.
CFormulaPtr parse_cformula(std::string_view text, const Alphabet& alphabet = {});

// Syntax only, for formulae of intermediate sequents such as "k \\ t".
CFormulaPtr parse_any_cformula(std::string_view text);

void validate_cformula(const CFormula& f, const Alphabet& alphabet = {});

// Canonical ASCII rendering, e.g. "(k * d) / n" or "(k \ (d \ v)) /^ V".
std::string to_string(const CFormula& f);

// For a c-layer formula m1 * (m2 * ... * b): the base name b.
const std::string& innermost_base(const CFormula& f);

}  // namespace mgcat::cmg
