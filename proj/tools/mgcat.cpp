// mgcat: analyze sentences, translate lexicons, compare the two grammar
// engines and explore term reductions.
//
// Exit codes: 0 success, 1 error, 2 no parse, 3 engines differ.

#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgcat/analyze.hpp"
#include "mgcat/drs.hpp"
#include "mgcat/error.hpp"
#include "mgcat/json_io.hpp"
#include "mgcat/lexicon.hpp"
#include "mgcat/reduce.hpp"
#include "mgcat/translate.hpp"

namespace {

using namespace mgcat;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNoParse = 2;
constexpr int kDifferent = 3;

std::size_t default_steps() {
  const char* env = std::getenv("MGCAT_MAX_STEPS");
  if (env == nullptr || *env == '\0') return 10000;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || env[used] != '\0') throw Error(ErrorKind::LexiconError, std::string("MGCAT_MAX_STEPS is not a number: ") + env);
  return static_cast<std::size_t>(v);
}

std::vector<std::string> words(const std::string& sentence) {
  std::istringstream in(sentence);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string indent(const std::string& text, const std::string& pad) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += pad + line + "\n";
  return out;
}

std::string render_mg(const mg::MGDerivation& d) {
  std::string out;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    out += std::to_string(i + 1) + ". " + std::string(to_string(s.rule));
    if (s.rule == mg::MGRule::Lex) {
      out += " " + s.word + " :: " + mg::features_to_string(s.entry.features);
    } else {
      out += "(";
      for (std::size_t k = 0; k < s.operands.size(); ++k) out += (k ? ", " : "") + std::to_string(s.operands[k] + 1);
      out += ") " + mg::to_string(*s.result);
    }
    out += "\n";
  }
  return out;
}

std::string render_reading(const Reading& r, std::size_t n, const std::string& format) {
  std::string out = "reading " + std::to_string(n) + "\n";
  if (format == "boxes") {
    for (const auto& line : sem::render_boxes(*sem::canonical_drs(r.drs))) out += "  " + line + "\n";
  } else {
    out += "  drs: " + sem::to_string(*r.drs) + "\n";
  }
  out += "  fol: " + r.fol + "\n";
  return out;
}

struct AnalyzeArgs {
  std::string lexicon;
  std::string sentence;
  std::string format = "text";
  std::string engine = "cmg";
  std::size_t max_steps = 0;
};

int cmd_analyze(const AnalyzeArgs& args, bool syntax_only) {
  Lexicon lex = load_lexicon(args.lexicon);
  auto sentence = words(args.sentence);
  json_io::json doc{{"sentence", args.sentence}, {"engine", args.engine}};
  std::ostringstream text;

  std::vector<mg::MGDerivation> mg_parses;
  if (args.engine == "mg") {
    mg_parses = mg::mg_derive(lex.mg, sentence, args.max_steps);
    if (mg_parses.empty()) {
      std::cerr << "no parse\n";
      return kNoParse;
    }
    doc["mg_derivations"] = json_io::json::array();
    for (std::size_t i = 0; i < mg_parses.size(); ++i) {
      doc["mg_derivations"].push_back(json_io::to_json(mg_parses[i]));
      text << "mg derivation " << i + 1 << " of " << mg_parses.size() << "\n" << indent(render_mg(mg_parses[i]), "  ");
    }
  }

  if (syntax_only) {
    if (args.engine == "cmg") {
      auto parses = cmg::cmg_derive(lex.cmg, sentence, args.max_steps);
      if (parses.empty()) {
        std::cerr << "no parse\n";
        return kNoParse;
      }
      doc["derivations"] = json_io::json::array();
      for (std::size_t i = 0; i < parses.size(); ++i) {
        doc["derivations"].push_back(json_io::to_json(*parses[i]));
        text << "derivation " << i + 1 << " of " << parses.size() << " (" << cmg::rule_count(*parses[i])
             << " rule applications)\n"
             << indent(cmg::render(*parses[i]), "  ");
      }
    }
  } else {
    std::vector<Analysis> analyses;
    try {
      analyses = analyze(lex, sentence, {args.max_steps});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoParse) throw;
      std::cerr << "no parse\n";
      return kNoParse;
    }
    doc["analyses"] = json_io::json::array();
    for (std::size_t i = 0; i < analyses.size(); ++i) {
      const Analysis& a = analyses[i];
      doc["analyses"].push_back(json_io::to_json(a));
      if (args.engine == "cmg") {
        text << "derivation " << i + 1 << " of " << analyses.size() << " (" << cmg::rule_count(*a.derivation)
             << " rule applications)\n"
             << indent(cmg::render(*a.derivation), "  ");
      } else {
        text << "analysis " << i + 1 << " of " << analyses.size() << "\n";
      }
      text << "raw: " << sem::to_string(*a.raw) << "\n";
      text << "beta: " << sem::to_string(*a.beta) << "\n";
      text << "internalized: " << sem::to_string(*a.internalized) << "\n";
      text << "readings: " << a.readings.size() << "\n";
      for (std::size_t k = 0; k < a.readings.size(); ++k) text << render_reading(a.readings[k], k + 1, args.format);
    }
  }

  if (args.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return kOk;
}

int cmd_translate(const std::string& path, const std::string& to) {
  Lexicon lex = load_lexicon(path);
  if (lex.empty()) return kOk;
  if (to == "mg") {
    auto out = translate::to_stabler(lex.cmg, translate::LicensorPartition::from(lex.alphabet));
    std::cout << format_headers(lex) << format_mg_section(out);
  } else {
    std::cout << format_headers(lex) << format_cmg_section(translate::to_categorial(lex.mg));
  }
  return kOk;
}

int cmd_check_equiv(const std::string& path, std::size_t max_words, std::size_t max_steps) {
  Lexicon lex = load_lexicon(path);
  auto report = translate::check_equivalence(lex.mg, lex.cmg, max_words, max_steps);
  std::cout << report.to_text();
  return report.equivalent() ? kOk : kDifferent;
}

// A term file holds optional `#pred:` headers followed by one term.
int cmd_reduce(const std::string& path, const std::string& lexicon_path, std::size_t max_steps, bool json) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  Lexicon decls;
  if (!lexicon_path.empty()) decls = load_lexicon(lexicon_path);
  std::string headers;
  std::string body;
  for (std::string line; std::getline(in, line);) {
    (line.rfind("#", 0) == 0 ? headers : body) += line + "\n";
  }
  Lexicon local = parse_lexicon(headers, path);
  sem::ParseEnv env = decls.parse_env();
  for (const auto& [name, type] : local.preds) env.constants[name] = type;
  auto term = sem::parse_term(body, env);
  sem::typecheck(*term);

  // Breadth-first exploration with α-deduplication, keeping every edge.
  std::vector<sem::TermPtr> nodes{term};
  std::map<std::string, std::size_t> index{{sem::alpha_key(*term), 0}};
  struct Edge {
    std::size_t from;
    std::string rule;
    std::size_t to;
  };
  std::vector<Edge> edges;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t n = queue.front();
    queue.pop_front();
    for (const auto& r : sem::reduce_step(nodes[n])) {
      auto key = sem::alpha_key(*r.term);
      auto [it, added] = index.emplace(key, nodes.size());
      if (added) {
        if (nodes.size() >= max_steps) throw Error(ErrorKind::BoundExceeded, "more than " + std::to_string(max_steps) + " terms");
        nodes.push_back(r.term);
        queue.push_back(it->second);
      }
      edges.push_back({n, std::string(sem::to_string(r.rule)), it->second});
    }
  }
  std::vector<bool> has_out(nodes.size(), false);
  for (const auto& e : edges) has_out[e.from] = true;

  if (json) {
    json_io::json doc{{"nodes", json_io::json::array()}, {"edges", json_io::json::array()}, {"normal_forms", json_io::json::array()}};
    for (std::size_t i = 0; i < nodes.size(); ++i) doc["nodes"].push_back(sem::to_string(*nodes[i]));
    for (const auto& e : edges) doc["edges"].push_back({{"from", e.from}, {"rule", e.rule}, {"to", e.to}});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!has_out[i]) doc["normal_forms"].push_back(i);
    }
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << "terms: " << nodes.size() << "\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::cout << "[" << i << "]" << (has_out[i] ? " " : " normal ") << sem::to_string(*nodes[i]) << "\n";
  }
  std::cout << "reductions: " << edges.size() << "\n";
  for (const auto& e : edges) std::cout << "[" << e.from << "] --" << e.rule << "--> [" << e.to << "]\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimalist and categorial minimalist grammars with λμ-DRS semantics"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  std::size_t max_steps = 0;
  auto add_common = [&](CLI::App* cmd, AnalyzeArgs& a) {
    cmd->add_option("lexicon", a.lexicon, "Lexicon file")->required();
    cmd->add_option("sentence", a.sentence, "Sentence, words separated by spaces")->required();
    cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json", "boxes"}));
    cmd->add_option("--max-steps", a.max_steps, "Bound on rule applications and explored terms");
    cmd->add_option("--engine", a.engine, "Parsing engine")->check(CLI::IsMember({"mg", "cmg"}));
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "Parse a sentence and print its readings");
  add_common(analyze_cmd, analyze_args);
  AnalyzeArgs derive_args;
  auto* derive_cmd = app.add_subcommand("derive", "Parse a sentence without semantics");
  add_common(derive_cmd, derive_args);

  std::string translate_path;
  std::string translate_to;
  auto* translate_cmd = app.add_subcommand("translate", "Translate between feature sequences and formulas");
  translate_cmd->add_option("lexicon", translate_path, "Lexicon file")->required();
  translate_cmd->add_option("--to", translate_to, "Target notation")->required()->check(CLI::IsMember({"mg", "cmg"}));

  std::string equiv_path;
  std::size_t max_words = 5;
  auto* equiv_cmd = app.add_subcommand("check-equiv", "Compare the strings generated by both engines");
  equiv_cmd->add_option("lexicon", equiv_path, "Lexicon file")->required();
  equiv_cmd->add_option("--max-words", max_words, "Longest sentence compared");
  equiv_cmd->add_option("--max-steps", max_steps, "Bound on rule applications");

  std::string term_path;
  std::string term_lexicon;
  bool reduce_json = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "List the reduction graph of a term");
  reduce_cmd->add_option("termfile", term_path, "File with #pred: headers and a term")->required();
  reduce_cmd->add_option("--lexicon", term_lexicon, "Take predicate declarations from a lexicon");
  reduce_cmd->add_option("--max-steps", max_steps, "Bound on explored terms");
  reduce_cmd->add_flag("--json", reduce_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    std::size_t bound = default_steps();
    auto pick = [&](std::size_t flag) { return flag > 0 ? flag : bound; };
    if (*analyze_cmd) {
      analyze_args.max_steps = pick(analyze_args.max_steps);
      return cmd_analyze(analyze_args, false);
    }
    if (*derive_cmd) {
      derive_args.max_steps = pick(derive_args.max_steps);
      return cmd_analyze(derive_args, true);
    }
    if (*translate_cmd) return cmd_translate(translate_path, translate_to);
    if (*equiv_cmd) return cmd_check_equiv(equiv_path, max_words, pick(max_steps));
    if (*reduce_cmd) return cmd_reduce(term_path, term_lexicon, pick(max_steps), reduce_json);
  } catch (const std::exception& e) {
    std::cerr << "mgcat: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
