#include <doctest.h>

#include "mgcat/analyze.hpp"
#include "mgcat/drs.hpp"
#include "mgcat/json_io.hpp"
#include "mgcat/lexicon.hpp"
#include "mgcat/reduce.hpp"
#include "support.hpp"

using namespace mgcat;
using mgcat::testing::data_path;
using mgcat::testing::kind_of;

namespace {

const Lexicon& pizza() {
  static const Lexicon lex = load_lexicon(data_path("pizza.lex"));
  return lex;
}

sem::TermPtr P(const std::string& text, sem::ParseEnv env = pizza().parse_env()) { return sem::parse_term(text, env); }

bool alpha_eq(const sem::TermPtr& a, const sem::TermPtr& b) { return sem::alpha_equivalent(*a, *b); }

sem::Fol canon(const std::string& fol) { return sem::normalize(sem::parse_fol(fol)); }

std::string error_text(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

// Tensor eliminations of a proof, innermost first.
void collect_moves(const cmg::CMGDerivationPtr& d, std::vector<cmg::CMGDerivationPtr>& out) {
  for (const auto& p : d->premises) collect_moves(p, out);
  if (d->rule == cmg::CMGRule::Mv) out.push_back(d);
}

const char* kShared =
    "exists e. past(e) & (exists p. pizz(p) & patient(e,p) & (forall d. child(d) => eat(e,p,d) & agent(e,d)))";
const char* kDistributive =
    "exists e. past(e) & (forall d. child(d) => agent(e,d) & (exists p. pizz(p) & eat(e,p,d) & patient(e,p)))";

}  // namespace

TEST_SUITE("lexicon") {
  TEST_CASE("headers and sections") {
    const Lexicon& lex = pizza();
    CHECK(lex.alphabet.base == std::set<std::string>{"c", "t", "v", "V", "d", "n"});
    CHECK(lex.alphabet.move == std::set<std::string>{"k"});
    CHECK(lex.has_cmg);
    CHECK_FALSE(lex.has_mg);
    CHECK(lex.has_sem);
    REQUIRE(lex.mg.entries.size() == 8);
    CHECK(mg::features_to_string(lex.mg.entries[0].seq.features) == "=n d -k");
    CHECK(lex.preds.count("eat") == 1);
    CHECK(lex.sem.size() == lex.cmg.entries.size());
    for (const auto& s : lex.sem) CHECK(s.has_value());
    CHECK(lex.sem[0]->dvar == std::optional<std::string>("d"));
    CHECK(lex.cmg.entries[5].phon.empty());
  }

  TEST_CASE("a feature section yields the formula section") {
    auto lex = parse_lexicon("[mg]\nthe :: =n d -k\ndog :: n\n");
    CHECK(lex.alphabet.base == std::set<std::string>{"d", "n"});
    CHECK(lex.alphabet.move == std::set<std::string>{"k"});
    REQUIRE(lex.cmg.entries.size() == 2);
    CHECK(cmg::to_string(*lex.cmg.entries[0].formula) == "(k * d) / n");
  }

  TEST_CASE("type overrides") {
    auto lex = parse_lexicon("#H: d = e -> t\n[cmg]\nx :: d\n");
    CHECK(sem::to_string(*lex.htable.base.at("d")) == "e -> t");
  }

  TEST_CASE("errors carry line numbers") {
    CHECK(error_text([] { parse_lexicon("#base: d\n\n[mg]\nx :: -k d\n", "g.lex"); }) ==
          "RegexViolation: g.lex:4: '-k d' is not a lexical feature sequence");
    CHECK(kind_of([] { parse_lexicon("x :: d\n"); }) == ErrorKind::LexiconError);
    CHECK(kind_of([] { parse_lexicon("[words]\n"); }) == ErrorKind::LexiconError);
    CHECK(kind_of([] { parse_lexicon("[mg]\nthe dog :: d\n"); }) == ErrorKind::LexiconError);
    CHECK(kind_of([] { parse_lexicon("#base: d n\n#move: k\n[cmg]\nx :: (k * d) / q\n"); }) ==
          ErrorKind::GrammarViolation);
    CHECK(kind_of([] { load_lexicon("/nonexistent/file.lex"); }) == ErrorKind::IoError);
  }

  TEST_CASE("semantic rows must match a categorial row") {
    CHECK(kind_of([] { parse_lexicon("[mg]\nx :: d\n[semantics]\ny :: j\n"); }) == ErrorKind::LexiconError);
  }

  TEST_CASE("semantic terms must have the category's type") {
    std::string text = "#pred: A : e -> t\n[cmg]\nx :: n\n[semantics]\nx :: \\z. \\w. A(z)\n";
    auto msg = error_text([&] { parse_lexicon(text, "h.lex"); });
    CHECK(msg.rfind("IllTyped: h.lex:5:", 0) == 0);
  }

  TEST_CASE("an unclassified name stops the translation") {
    CHECK(kind_of([] { parse_lexicon("[cmg]\nx :: (y \\ c) / d\n"); }) == ErrorKind::UnclassifiedFeature);
  }

  TEST_CASE("repeated words pair by order") {
    auto lex = parse_lexicon("#pred: A : e -> t\n#pred: B : e -> t\n[mg]\nw :: n\nw :: n\n[semantics]\nw :: \\z. A(z)\nw :: \\z. B(z)\n");
    REQUIRE(lex.sem.size() == 2);
    CHECK(sem::to_string(*lex.sem[0]->term) == "\\z. A(z)");
    CHECK(sem::to_string(*lex.sem[1]->term) == "\\z. B(z)");
  }

  TEST_CASE("section printing") {
    auto lex = pizza();
    auto text = format_headers(lex) + format_mg_section(lex.mg);
    auto again = parse_lexicon(text);
    CHECK(again.mg.entries.size() == lex.mg.entries.size());
    CHECK(text.find("the :: =n d -k\n") != std::string::npos);
    CHECK(format_cmg_section(lex.cmg).find("_v :: (k \\ (d \\ v)) /^ V\n") != std::string::npos);
  }
}

TEST_SUITE("analyze") {
  TEST_CASE("semantic merge") {
    auto ate = P("\\x. \\y. \\e. eat(e, x, y)");
    auto u = sem::Term::var("u", sem::SemType::e());
    auto applied = sem_merge(ate, u);
    CHECK(applied->kind() == sem::TermKind::App);
    sem::ParseEnv env = pizza().parse_env();
    env.free_vars["u"] = sem::SemType::e();
    CHECK(alpha_eq(sem::beta_normalize(applied), P("\\y. \\e. eat(e, u, y)", env)));

    auto id = P("\\z. z");
    CHECK(alpha_eq(sem::beta_normalize(sem_merge(id, P("j"))), P("j")));
    CHECK(kind_of([&] { sem_merge(ate, P("[| past(s)]")); }) == ErrorKind::IllTyped);
  }

  TEST_CASE("semantic move") {
    sem::ParseEnv env = pizza().parse_env();
    env.free_vars = {{"u", sem::SemType::e()}, {"v", sem::SemType::e()}};
    auto body = P("\\y. \\e. eat(e, u, y) && patient(e, v)", env);
    auto a_pizza = P("mu gamma. [p | pizz(p) & gamma(p)]");
    auto p = sem::Term::dref("p", sem::SemType::e());
    auto out = sem_move(a_pizza, p, body, "u", "v");
    CHECK(alpha_eq(out, P("\\y. \\e. eat(e, mu gamma. [p | pizz(p) & gamma(p)], y) && patient(e, p)")));

    auto only_u = sem_move(a_pizza, p, P("\\y. \\e. eat(e, u, y)", env), "u", "v");
    CHECK(alpha_eq(only_u, P("\\y. \\e. eat(e, mu gamma. [p | pizz(p) & gamma(p)], y)")));

    CHECK(kind_of([&] { sem_move(a_pizza, p, P("\\y. \\e. patient(e, v)", env), "u", "v"); }) ==
          ErrorKind::VariableNotFree);
    CHECK(kind_of([&] { sem_move(P("[| past(s)]"), p, body, "u", "v"); }) == ErrorKind::IllTyped);
  }

  TEST_CASE("terms along the proof") {
    auto ds = cmg::cmg_derive(pizza().cmg, {"the", "children", "ate", "a", "pizza"}, 40);
    REQUIRE(ds.size() == 1);
    std::vector<cmg::CMGDerivationPtr> moves;
    collect_moves(ds[0], moves);
    REQUIRE(moves.size() == 2);

    // The object move: the DP replaces u, its referent p replaces v.
    auto object = semantic_term(pizza(), *moves[0]);
    CHECK(alpha_eq(sem::beta_normalize(object.term),
                   P("\\y. \\e. eat(e, mu gamma. [p | pizz(p) & gamma(p)], y) && patient(e, p)")));
    // The subject move: the DP replaces w, its referent d replaces y.
    auto subject = semantic_term(pizza(), *moves[1]);
    CHECK(alpha_eq(sem::beta_normalize(subject.term),
                   P("\\e. eat(e, mu gamma. [p | pizz(p) & gamma(p)], mu delta. [| [d | child(d)] => [| delta(d)]]) "
                     "&& patient(e, p) & past(e) && agent(e, d)")));
  }

  TEST_CASE("the golden sentence") {
    auto as = analyze(pizza(), {"the", "children", "ate", "a", "pizza"});
    REQUIRE(as.size() == 1);
    const Analysis& a = as[0];
    CHECK(alpha_eq(a.beta, P("[e | eat(e, mu gamma. [p | pizz(p) & gamma(p)], mu delta. [| [d | child(d)] => [| delta(d)]]) "
                             "&& patient(e, p) & past(e) && agent(e, d)]")));
    CHECK(alpha_eq(a.internalized, P("[e | eat(e, mu gamma. [p | pizz(p) & gamma(p) & patient(e, p)], "
                                     "mu delta. [| [d | child(d)] => [| delta(d) & agent(e, d)]]) & past(e)]")));
    REQUIRE(a.readings.size() == 2);
    std::vector<sem::Fol> got{canon(a.readings[0].fol), canon(a.readings[1].fol)};
    CHECK(((got[0] == canon(kShared) && got[1] == canon(kDistributive)) ||
           (got[1] == canon(kShared) && got[0] == canon(kDistributive))));
  }

  TEST_CASE("swapping the noun phrases swaps the roles") {
    auto as = analyze(pizza(), {"a", "pizza", "ate", "the", "children"});
    REQUIRE(as.size() == 1);
    REQUIRE(as[0].readings.size() == 2);
    auto one = canon("exists e. past(e) & (exists p. pizz(p) & agent(e,p) & (forall d. child(d) => eat(e,d,p) & patient(e,d)))");
    auto two = canon("exists e. past(e) & (forall d. child(d) => patient(e,d) & (exists p. pizz(p) & eat(e,d,p) & agent(e,p)))");
    std::vector<sem::Fol> got{canon(as[0].readings[0].fol), canon(as[0].readings[1].fol)};
    CHECK(((got[0] == one && got[1] == two) || (got[0] == two && got[1] == one)));
  }

  TEST_CASE("a one-word clause") {
    auto lex = parse_lexicon("#pred: rain : ev -> t\n[cmg]\nw :: c\n[semantics]\nw :: [s | rain(s)]\n");
    auto as = analyze(lex, {"w"});
    REQUIRE(as.size() == 1);
    REQUIRE(as[0].readings.size() == 1);
    CHECK(as[0].readings[0].fol == "exists s. rain(s)");
  }

  TEST_CASE("no parse") {
    CHECK(kind_of([] { analyze(pizza(), {"pizza", "the"}); }) == ErrorKind::NoParse);
  }

  TEST_CASE("a missing semantic row") {
    auto lex = parse_lexicon("[cmg]\nw :: c\n");
    CHECK(kind_of([&] { analyze(lex, {"w"}); }) == ErrorKind::LexiconError);
  }

  TEST_CASE("referents are renamed apart per occurrence") {
    auto lex = parse_lexicon(testing::read_file(data_path("pizza.lex")));
    auto as = analyze(lex, {"a", "pizza", "ate", "a", "pizza"});
    REQUIRE(as.size() == 1);
    auto refs = sem::free_drefs(*as[0].beta);
    CHECK(refs == std::set<std::string>{"p", "p1"});
    CHECK(as[0].readings.size() == 2);
  }
}

TEST_SUITE("json") {
  TEST_CASE("derivations round-trip") {
    auto ds = cmg::cmg_derive(pizza().cmg, {"the", "children", "ate", "a", "pizza"}, 40);
    REQUIRE(ds.size() == 1);
    auto j = json_io::to_json(*ds[0]);
    auto back = json_io::cmg_derivation_from_json(j);
    CHECK(json_io::to_json(*back) == j);
    CHECK(cmg::render(*back) == cmg::render(*ds[0]));
    CHECK(j["rule"] == "mg");
    CHECK(j["label"][2] == json_io::json::array({"the", "children", "ate", "a", "pizza"}));
    auto parsed = json_io::json::parse(j.dump());
    CHECK(json_io::to_json(*json_io::cmg_derivation_from_json(parsed)) == j);
  }

  TEST_CASE("variables in labels") {
    auto d = cmg::rule_mg(cmg::lex_axiom(pizza().cmg, "ate", cmg::parse_cformula("V / d")),
                          cmg::var_axiom("u", cmg::parse_cformula("d")));
    auto j = json_io::to_json(*d);
    CHECK(j["label"][2][0] == json_io::json{{"var", "u"}});
    CHECK(j["context"][0]["formula"] == "d");
  }

  TEST_CASE("feature derivations round-trip") {
    auto ds = mg::mg_derive(pizza().mg, {"the", "children", "ate", "a", "pizza"}, 100);
    REQUIRE(ds.size() == 1);
    auto j = json_io::to_json(ds[0]);
    auto back = json_io::mg_derivation_from_json(j);
    CHECK(*back.root() == *ds[0].root());
    CHECK(json_io::to_json(back) == j);
  }

  TEST_CASE("readings round-trip") {
    auto as = analyze(pizza(), {"the", "children", "ate", "a", "pizza"});
    for (const auto& r : as[0].readings) {
      auto j = json_io::json::parse(json_io::to_json(r).dump());
      auto back = json_io::reading_from_json(j);
      CHECK(*back.drs == *r.drs);
      CHECK(back.fol == r.fol);
    }
  }

  TEST_CASE("random terms round-trip") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      auto t = testing::random_term(rng, sem::SemType::t());
      CHECK(*json_io::term_from_json(json_io::to_json(*t)) == *t);
    }
  }

  TEST_CASE("malformed input") {
    CHECK(kind_of([] { json_io::term_from_json(json_io::json{{"kind", "lam"}}); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { json_io::term_from_json(json_io::json{{"kind", "nope"}}); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { json_io::cmg_derivation_from_json(json_io::json{{"rule", "mg"}}); }) == ErrorKind::ParseError);
  }
}
