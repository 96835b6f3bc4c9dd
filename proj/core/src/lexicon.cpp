#include "mgcat/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "mgcat/error.hpp"
#include "mgcat/translate.hpp"
#include "text_util.hpp"

namespace mgcat {

sem::ParseEnv Lexicon::parse_env() const {
  sem::ParseEnv env;
  env.constants = preds;
  return env;
}

namespace {

enum class Section { None, Mg, Cmg, Sem };

struct Row {
  std::size_t line;
  std::string word;
  std::string body;
  std::string extra;  // third field of a semantic row
};

[[noreturn]] void fail_at(const std::string& origin, std::size_t line, ErrorKind kind, const std::string& why) {
  throw Error(kind, origin + ":" + std::to_string(line) + ": " + why);
}

template <typename F>
auto at_line(const std::string& origin, std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    fail_at(origin, line, e.kind(), e.detail());
  }
}

std::vector<std::string> phon_of(const std::string& word) {
  if (mg::is_empty_word(word)) return {};
  return {word};
}

void infer_from_mg(const std::vector<Row>& rows, Alphabet& inferred, const std::string& origin) {
  for (const auto& r : rows) {
    auto feats = at_line(origin, r.line, [&] { return mg::parse_features(r.body); });
    for (const auto& f : feats) {
      bool move = f.kind == mg::FeatureKind::Licensee || f.kind == mg::FeatureKind::Licensor;
      (move ? inferred.move : inferred.base).insert(f.name);
    }
  }
}

void infer_from_formula(const cmg::CFormula& f, Alphabet& inferred) {
  using cmg::Conn;
  switch (f.conn()) {
    case Conn::Atom: inferred.base.insert(f.name()); return;
    case Conn::Tensor:
      inferred.move.insert(f.left()->name());
      infer_from_formula(*f.right(), inferred);
      return;
    case Conn::Under: infer_from_formula(*f.result(), inferred); return;  // left of \ is ambiguous
    default:
      inferred.base.insert(f.argument()->name());
      infer_from_formula(*f.result(), inferred);
  }
}

}  // namespace

Lexicon parse_lexicon(std::string_view text, const std::string& origin) {
  Lexicon lex;
  std::optional<std::set<std::string>> declared_base;
  std::optional<std::set<std::string>> declared_move;
  std::vector<Row> mg_rows;
  std::vector<Row> cmg_rows;
  std::vector<Row> sem_rows;
  Section section = Section::None;

  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_on(text, "\n")) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto colon = line.find(':');
      std::string key(detail::trim(line.substr(1, colon == std::string_view::npos ? 0 : colon - 1)));
      std::string_view value = colon == std::string_view::npos ? std::string_view() : detail::trim(line.substr(colon + 1));
      if (colon == std::string_view::npos) continue;
      if (key == "base") {
        auto names = detail::split_ws(value);
        declared_base.emplace(names.begin(), names.end());
      } else if (key == "move") {
        auto names = detail::split_ws(value);
        declared_move.emplace(names.begin(), names.end());
      } else if (key == "start") {
        lex.start = std::string(value);
      } else if (key == "pred") {
        auto sep = value.find(':');
        if (sep == std::string_view::npos) fail_at(origin, line_no, ErrorKind::LexiconError, "expected '#pred: name : type'");
        std::string name(detail::trim(value.substr(0, sep)));
        lex.preds[name] = at_line(origin, line_no, [&] { return sem::parse_type(value.substr(sep + 1)); });
      } else if (key == "H") {
        auto sep = value.find('=');
        if (sep == std::string_view::npos) fail_at(origin, line_no, ErrorKind::LexiconError, "expected '#H: category = type'");
        std::string name(detail::trim(value.substr(0, sep)));
        lex.htable.base[name] = at_line(origin, line_no, [&] { return sem::parse_type(value.substr(sep + 1)); });
      }
      continue;
    }
    if (line.front() == '[') {
      if (line == "[mg]") {
        section = Section::Mg;
        lex.has_mg = true;
      } else if (line == "[cmg]") {
        section = Section::Cmg;
        lex.has_cmg = true;
      } else if (line == "[semantics]") {
        section = Section::Sem;
        lex.has_sem = true;
      } else {
        fail_at(origin, line_no, ErrorKind::LexiconError, "unknown section " + std::string(line));
      }
      continue;
    }
    if (section == Section::None) fail_at(origin, line_no, ErrorKind::LexiconError, "row outside of any section");
    auto parts = detail::split_on(line, "::");
    if (parts.size() < 2 || (section != Section::Sem && parts.size() > 2) || parts.size() > 3) {
      fail_at(origin, line_no, ErrorKind::LexiconError, "expected 'word :: ...'");
    }
    Row row{line_no, std::string(detail::trim(parts[0])), std::string(detail::trim(parts[1])),
            parts.size() == 3 ? std::string(detail::trim(parts[2])) : std::string()};
    if (row.word.empty() || detail::split_ws(row.word).size() != 1) {
      fail_at(origin, line_no, ErrorKind::LexiconError, "the word must be a single token");
    }
    (section == Section::Mg ? mg_rows : section == Section::Cmg ? cmg_rows : sem_rows).push_back(std::move(row));
  }

  // Alphabet: declared headers win, otherwise read off the rows.
  Alphabet inferred;
  infer_from_mg(mg_rows, inferred, origin);
  for (const auto& r : cmg_rows) {
    auto f = at_line(origin, r.line, [&] { return cmg::parse_cformula(r.body); });
    infer_from_formula(*f, inferred);
  }
  lex.alphabet.move = declared_move.value_or(inferred.move);
  if (declared_base) {
    lex.alphabet.base = *declared_base;
  } else {
    for (const auto& b : inferred.base) {
      if (lex.alphabet.move.count(b) == 0) lex.alphabet.base.insert(b);
    }
  }
  for (const auto& b : lex.alphabet.base) {
    if (lex.alphabet.move.count(b) > 0) {
      throw Error(ErrorKind::LexiconError, origin + ": '" + b + "' is both a base category and a movement feature");
    }
  }

  lex.mg.alphabet = lex.cmg.alphabet = lex.alphabet;
  lex.mg.start = lex.cmg.start = lex.start;
  for (const auto& r : mg_rows) {
    at_line(origin, r.line, [&] {
      auto feats = mg::parse_features(r.body);
      mg::check_declared(feats, lex.alphabet);
      lex.mg.entries.push_back({r.word, {feats, phon_of(r.word)}});
    });
  }
  const Alphabet checked = declared_base && declared_move ? lex.alphabet : Alphabet{};
  for (const auto& r : cmg_rows) {
    at_line(origin, r.line, [&] {
      // Names are checked only against declared headers; otherwise an
      // unknown name surfaces when the other section is computed.
      lex.cmg.entries.push_back({r.word, phon_of(r.word), cmg::parse_cformula(r.body, checked)});
    });
  }
  if (!lex.has_cmg && lex.has_mg) lex.cmg = translate::to_categorial(lex.mg);
  if (!lex.has_mg && lex.has_cmg) {
    try {
      lex.mg = translate::to_stabler(lex.cmg);
    } catch (const Error& e) {
      throw Error(e.kind(), origin + ": " + e.detail());
    }
  }

  // Semantic rows pair with categorial rows by word and occurrence.
  lex.sem.assign(lex.cmg.entries.size(), std::nullopt);
  std::map<std::string, std::size_t> seen;
  for (const auto& r : sem_rows) {
    std::size_t want = seen[r.word]++;
    std::size_t found = lex.cmg.entries.size();
    for (std::size_t i = 0, k = 0; i < lex.cmg.entries.size(); ++i) {
      if (lex.cmg.entries[i].word != r.word) continue;
      if (k++ == want) {
        found = i;
        break;
      }
    }
    if (found == lex.cmg.entries.size()) {
      fail_at(origin, r.line, ErrorKind::LexiconError, "semantic row for '" + r.word + "' has no categorial row");
    }
    SemEntry entry;
    if (!r.extra.empty()) {
      std::string_view extra = r.extra;
      if (extra.substr(0, 5) != "dvar=") fail_at(origin, r.line, ErrorKind::LexiconError, "expected 'dvar=name'");
      entry.dvar = std::string(detail::trim(extra.substr(5)));
    }
    at_line(origin, r.line, [&] {
      sem::TypePtr want_type = sem::h_type(*lex.cmg.entries[found].formula, lex.htable, lex.alphabet);
      entry.term = sem::parse_term(r.body, lex.parse_env(), want_type);
      sem::TypePtr got = sem::typecheck(*entry.term);
      if (!sem::same(got, want_type)) {
        throw Error(ErrorKind::IllTyped, "term of type " + sem::to_string(*got) + " for a word of category " +
                                             cmg::to_string(*lex.cmg.entries[found].formula) + ", expected " +
                                             sem::to_string(*want_type));
      }
    });
    lex.sem[found] = std::move(entry);
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str(), path);
}

std::string format_headers(const Lexicon& lex) {
  std::string out;
  out += "#base: " + detail::join(lex.alphabet.base, " ") + "\n";
  out += "#move: " + detail::join(lex.alphabet.move, " ") + "\n";
  if (lex.start != "c") out += "#start: " + lex.start + "\n";
  return out;
}

std::string format_mg_section(const mg::MGLexicon& lex) {
  std::string out = "[mg]\n";
  for (const auto& e : lex.entries) out += e.word + " :: " + mg::features_to_string(e.seq.features) + "\n";
  return out;
}

std::string format_cmg_section(const cmg::CMGLexicon& lex) {
  std::string out = "[cmg]\n";
  for (const auto& e : lex.entries) out += e.word + " :: " + cmg::to_string(*e.formula) + "\n";
  return out;
}

}  // namespace mgcat
