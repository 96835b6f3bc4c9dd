#pragma once

// Translations between Stabler-style feature sequences and categorial
// formulae, lifted to whole lexicons, plus a bounded check that the two
// engines generate the same strings.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "mgcat/cformula.hpp"
#include "mgcat/cmg.hpp"
#include "mgcat/mg.hpp"

namespace mgcat::translate {

// Classifies names found left of `\`: p1 are selectable categories (become
// =f), p2 are movement features (become +f).
struct LicensorPartition {
  std::set<std::string> p1;
  std::set<std::string> p2;

  static LicensorPartition from(const Alphabet& alphabet);
};

// Throws RegexViolation unless the sequence is a legal lexical entry.
cmg::CFormulaPtr to_categorial(const std::vector<mg::Feature>& entry);
cmg::CFormulaPtr to_categorial(const mg::FeatureSeq& entry);

// Throws GrammarViolation for formulae outside the restricted grammar and
// UnclassifiedFeature for a name in neither p1 nor p2.
std::vector<mg::Feature> to_stabler(const cmg::CFormula& f, const LicensorPartition& part);

cmg::CMGLexicon to_categorial(const mg::MGLexicon& lexicon);
mg::MGLexicon to_stabler(const cmg::CMGLexicon& lexicon, const LicensorPartition& part);
mg::MGLexicon to_stabler(const cmg::CMGLexicon& lexicon);  // partition from the alphabet

struct EquivalenceReport {
  std::size_t max_words = 0;
  std::set<std::vector<std::string>> mg_strings;
  std::set<std::vector<std::string>> cmg_strings;
  std::set<std::vector<std::string>> mg_only;
  std::set<std::vector<std::string>> cmg_only;

  bool equivalent() const { return mg_only.empty() && cmg_only.empty(); }
  // Text diff: "< words" for strings only the MG side derives, "> words" for
  // strings only the categorial side derives, then a summary line.
  std::string to_text() const;
};

// Generates every string of at most `max_words` words with both engines.
// `step_bound` caps MG rule applications; the categorial search gets twice
// as many, since each movement there costs a hypothesis merge and a tensor
// elimination.
EquivalenceReport check_equivalence(const mg::MGLexicon& mg_lex, const cmg::CMGLexicon& cmg_lex,
                                    std::size_t max_words, std::size_t step_bound);

}  // namespace mgcat::translate
