#pragma once

// DRS structure: polarity of sub-DRSs, internalization of fusions, and the
// first-order rendering of readings.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mgcat/term.hpp"

namespace mgcat::sem {

// Child indices from the root: 0 for Term::a(), 1 for Term::b().
using Position = std::vector<int>;

enum class Polarity { Positive, Negative };

// Sub-DRSs reachable through boxes, conjunctions, fusions and implications:
// the whole term is positive, boxes and conjunctions pass their polarity
// down, an implication flips it for its antecedent only.
std::vector<std::pair<Position, Polarity>> subdrs_polarity(const Term& d);

const Term& subterm_at(const Term& t, const Position& p);

// Resolves every fusion D && F, innermost first, by conjoining F into the
// largest positive box inside D whose accessible referents cover the free
// referents of F. Application and abstraction nodes inside D are looked
// through. Throws NoHost, AmbiguousHost, or UnresolvedFusion when F is not a
// plain formula.
TermPtr internalize(const TermPtr& d);

// First-order formulae over referent names.
struct Fol {
  enum class Kind { Atom, Eq, And, Implies, Exists, Forall };

  Kind kind = Kind::Atom;
  std::string name;               // predicate, or the quantified variable
  std::vector<std::string> args;  // Atom arguments, or the two sides of Eq
  std::vector<Fol> kids;          // And: two or more; Implies: two; quantifiers: one

  bool operator==(const Fol&) const = default;
};

// [x | F] becomes exists x. F and [x | A] => B becomes forall x. (A => B).
// Throws IllTyped on λ/μ material and UnresolvedFusion on a leftover fusion.
Fol to_fol(const Term& drs);

// ASCII by default ("exists", "forall", "&", "=>"), or ∃ ∀ ∧ ⇒.
std::string to_string(const Fol& f, bool unicode = false);

// Accepts either notation; a quantifier's scope extends as far right as
// possible, the dot after the variable is optional, `=>` is weaker than `&`.
Fol parse_fol(std::string_view text);

// Flattens conjunctions, sorts conjuncts by a key that ignores bound-variable
// names, then renames bound variables v1, v2, ... in order of appearance.
Fol normalize(const Fol& f);

// Inverse of to_fol up to canonical_drs. Predicates get referent arguments of
// type e.
TermPtr from_fol(const Fol& f);

// Drops boxes without referents and merges directly nested boxes.
TermPtr canonical_drs(const TermPtr& drs);

// Box diagram of a DRS, one string per line.
std::vector<std::string> render_boxes(const Term& drs);

}  // namespace mgcat::sem
