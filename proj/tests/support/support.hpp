#pragma once

// Helpers shared by the unit tests, the acceptance runner and the
// benchmarks: file locations and seeded random generators.

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mgcat/cmg.hpp"
#include "mgcat/error.hpp"
#include "mgcat/mg.hpp"
#include "mgcat/term.hpp"

namespace mgcat::testing {

// Kind of the Error thrown by f, or nullopt when it returns normally.
inline std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

std::string data_path(const std::string& name);    // bundled lexicons
std::string golden_path(const std::string& name);  // frozen oracle output

std::vector<std::string> read_lines(const std::string& path);
std::string read_file(const std::string& path);
std::string join(const std::vector<std::string>& words, const std::string& sep = " ");
std::vector<std::string> words(const std::string& sentence);

// Names used by the generators; the two pools are disjoint.
inline const std::vector<std::string> kBaseNames{"a", "b", "c", "d", "v"};
inline const std::vector<std::string> kMoveNames{"k", "wh", "f"};
Alphabet random_alphabet();

// A feature list matching the lexical-entry shape.
std::vector<mg::Feature> random_entry(std::mt19937_64& rng);
// A feature list of arbitrary shape, legal or not.
std::vector<mg::Feature> random_feature_list(std::mt19937_64& rng);
// A formula of the restricted categorial grammar.
cmg::CFormulaPtr random_formula(std::mt19937_64& rng);

// A closed, well-typed λμ-DRS term of the given type, rich in redexes.
sem::TermPtr random_term(std::mt19937_64& rng, const sem::TypePtr& type, int depth = 4);

// Derivations assembled by applying the elimination rules to random
// premises drawn from the lexicon and fresh hypotheses. Only successful rule
// applications are returned, partial and complete alike.
std::vector<cmg::CMGDerivationPtr> random_derivations(std::mt19937_64& rng, const cmg::CMGLexicon& lex,
                                                      std::size_t count);

// Every complete derivation of every string the lexicon generates.
std::vector<cmg::CMGDerivationPtr> all_derivations(const cmg::CMGLexicon& lex, std::size_t max_words);

}  // namespace mgcat::testing
