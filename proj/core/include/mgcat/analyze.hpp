#pragma once

// From a sentence to its readings: categorial parse, semantic term assembled
// along the proof, β-normalization, internalization of fusions and
// enumeration of normal forms.

#include <cstddef>
#include <string>
#include <vector>

#include "mgcat/cmg.hpp"
#include "mgcat/lexicon.hpp"
#include "mgcat/term.hpp"

namespace mgcat {

// Semantic counterpart of plain merge: (fun arg), checked for types.
sem::TermPtr sem_merge(const sem::TermPtr& fun, const sem::TermPtr& arg);

// Semantic counterpart of tensor elimination: body[u := s, v := ds], where u
// stands for the moved constituent and v for its movement feature. u must be
// free in body; v may be absent.
sem::TermPtr sem_move(const sem::TermPtr& s, const sem::TermPtr& ds, const sem::TermPtr& body,
                      const std::string& u, const std::string& v);

struct SemanticTerm {
  sem::TermPtr term;
  sem::TermPtr dvar;  // distinguished referent, null if none
};

// Term of a categorial derivation under the lexicon's semantics. Box
// referents are renamed apart for each lexical occurrence.
SemanticTerm semantic_term(const Lexicon& lexicon, const cmg::CMGDerivation& d);

struct Reading {
  sem::TermPtr drs;
  std::string fol;
};

struct Analysis {
  cmg::CMGDerivationPtr derivation;
  sem::TermPtr raw;            // assembled term
  sem::TermPtr beta;           // its β-normal form
  sem::TermPtr internalized;   // fusions resolved
  std::vector<Reading> readings;
  std::size_t explored = 0;    // terms visited while enumerating
};

struct AnalyzeOptions {
  std::size_t max_steps = 10000;
};

// One analysis per parse. Throws NoParse when there is none.
std::vector<Analysis> analyze(const Lexicon& lexicon, const std::vector<std::string>& sentence,
                              const AnalyzeOptions& options = {});

// Readings of a term that is already a λμ-DRS.
std::vector<Reading> readings_of(const sem::TermPtr& term, std::size_t max_steps, std::size_t* explored = nullptr);

}  // namespace mgcat
