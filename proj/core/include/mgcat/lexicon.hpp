#pragma once

// Lexicon files. Header lines:
//
//   #base: c t v V d n        base categories
//   #move: k wh               movement features
//   #start: c                 start category (default c)
//   #pred: eat : ev -> e -> e -> t
//   #H: v = ev -> t           semantic type of a base category
//
// Any other line starting with '#' is a comment. Sections [mg], [cmg] and
// [semantics] hold rows `word :: features`, `word :: formula` and
// `word :: term [:: dvar=name]`. The word `_` (or `_tag`) has no phonology.
// A missing [cmg] section is computed from [mg] and vice versa. Semantic rows
// pair with categorial rows of the same word in order of appearance.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgcat/alphabet.hpp"
#include "mgcat/cmg.hpp"
#include "mgcat/mg.hpp"
#include "mgcat/semtype.hpp"
#include "mgcat/term.hpp"

namespace mgcat {

struct SemEntry {
  sem::TermPtr term;
  std::optional<std::string> dvar;  // distinguished discourse referent
};

struct Lexicon {
  Alphabet alphabet;
  std::string start = "c";
  sem::HTable htable = sem::HTable::defaults();
  std::map<std::string, sem::TypePtr> preds;

  bool has_mg = false;   // [mg] given in the file
  bool has_cmg = false;  // [cmg] given in the file
  bool has_sem = false;

  mg::MGLexicon mg;
  cmg::CMGLexicon cmg;
  std::vector<std::optional<SemEntry>> sem;  // parallel to cmg.entries

  sem::ParseEnv parse_env() const;
  bool empty() const { return mg.entries.empty() && cmg.entries.empty(); }
};

// Errors keep their kind and gain an "origin:line:" prefix.
Lexicon parse_lexicon(std::string_view text, const std::string& origin = "<input>");
// Throws IoError when the file cannot be read.
Lexicon load_lexicon(const std::string& path);

std::string format_headers(const Lexicon& lex);
std::string format_mg_section(const mg::MGLexicon& lex);
std::string format_cmg_section(const cmg::CMGLexicon& lex);

}  // namespace mgcat
