#pragma once

// Labelled natural deduction for categorial minimalist grammars: elimination
// rules only, contexts as multisets, and labels (spec | head | comp) that
// record word order alongside the proof.

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mgcat/alphabet.hpp"
#include "mgcat/cformula.hpp"

namespace mgcat::cmg {

// A label symbol is either a hypothesis variable or a phonological form.
struct Symbol {
  std::string text;
  bool is_var = false;

  bool operator==(const Symbol&) const = default;
};

using SymbolString = std::vector<Symbol>;

struct Label {
  SymbolString spec;
  SymbolString head;
  SymbolString comp;

  SymbolString flatten() const;
  bool operator==(const Label&) const = default;
};

struct Hypothesis {
  std::string var;
  CFormulaPtr formula;
};

struct LSequent {
  std::vector<Hypothesis> context;  // multiset; order carries no meaning
  Label label;
  CFormulaPtr formula;
};

enum class CMGRule { Lex, Axiom, Mg, MgHdr, Mv };
std::string_view to_string(CMGRule rule);

struct CMGDerivation;
using CMGDerivationPtr = std::shared_ptr<const CMGDerivation>;

struct CMGDerivation {
  LSequent conclusion;
  CMGRule rule = CMGRule::Lex;
  // Mg/MgHdr: {major, minor}. Mv: {tensor premise, body}.
  std::vector<CMGDerivationPtr> premises;
  std::string word;                 // Lex: lexical key
  std::size_t entry = kNoEntry;     // Lex: index of the lexical entry
  std::string var;                  // Axiom: the variable; Mv: hypothesis of the movement feature
  std::string var2;                 // Mv: hypothesis of the remaining formula

  static constexpr std::size_t kNoEntry = static_cast<std::size_t>(-1);
};

struct CMGEntry {
  std::string word;  // lexical key; "_" or "_tag" for empty phonology
  std::vector<std::string> phon;
  CFormulaPtr formula;
};

struct CMGLexicon {
  Alphabet alphabet;
  std::string start = "c";
  std::vector<CMGEntry> entries;
};

// ⊢ (ε | word | ε) : f, for a pair listed in the lexicon.
CMGDerivationPtr lex_axiom(const CMGLexicon& lexicon, std::string_view word, const CFormulaPtr& f);
// x : f ⊢ (ε | x | ε) : f
CMGDerivationPtr var_axiom(std::string var, CFormulaPtr f);

// Elimination of / or \ (plain merge). Argument order is (function, argument)
// regardless of the slash direction.
CMGDerivationPtr rule_mg(const CMGDerivationPtr& major, const CMGDerivationPtr& minor);
// Elimination of /^ or \^ (head movement with right adjunction).
CMGDerivationPtr rule_hdr(const CMGDerivationPtr& major, const CMGDerivationPtr& minor);
// Tensor elimination: the tensor premise's string replaces `x` (typed by the
// tensor's left formula) and the empty string replaces `y`.
CMGDerivationPtr rule_mv(const CMGDerivationPtr& tensor_prem, const CMGDerivationPtr& body_prem,
                         const std::string& x, const std::string& y);

// Throws MissingHypotheses unless the label's variables are exactly the
// context's domain (as multisets).
void check_label_discipline(const LSequent& s);

std::size_t rule_count(const CMGDerivation& d);
std::vector<std::string> yield(const Label& label);  // throws if a variable remains

std::string to_string(const SymbolString& s);
std::string to_string(const Label& label);
std::string to_string(const LSequent& s);
// Indented proof tree, conclusion first.
std::string render(const CMGDerivation& d);

// Complete derivations (empty context, formula `start`) of the sentence with
// at most `step_bound` rule applications. Hypotheses for movement are
// introduced when a selector consumes a constituent that still has to move,
// and each tensor elimination fires as soon as the matching licensor is
// consumed. A second pending constituent waiting for the same licensee
// aborts the branch (shortest move).
std::vector<CMGDerivationPtr> cmg_derive(const CMGLexicon& lexicon, const std::vector<std::string>& sentence,
                                         std::size_t step_bound);

std::set<std::vector<std::string>> cmg_generate(const CMGLexicon& lexicon, std::size_t max_words,
                                                std::size_t step_bound);

}  // namespace mgcat::cmg
