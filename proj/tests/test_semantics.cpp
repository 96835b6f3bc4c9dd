#include <doctest.h>

#include <map>

#include "mgcat/drs.hpp"
#include "mgcat/reduce.hpp"
#include "mgcat/semtype.hpp"
#include "mgcat/term.hpp"
#include "normal_forms_dfs.hpp"
#include "reference_terms.hpp"
#include "support.hpp"

using namespace mgcat;
using namespace mgcat::sem;
using mgcat::testing::kind_of;

namespace {

TermPtr P(const std::string& text) { return parse_term(text, oracle::reference_env()); }

TypePtr Ty(const char* text) { return parse_type(text); }

bool alpha_eq(const TermPtr& a, const TermPtr& b) { return alpha_equivalent(*a, *b); }

// Frozen oracle output: readings per reference term.
std::map<std::string, std::vector<std::string>> frozen_readings() {
  std::map<std::string, std::vector<std::string>> out;
  std::string current;
  for (const auto& line : testing::read_lines(testing::golden_path("normal_forms.txt"))) {
    if (line.rfind("# ", 0) == 0) {
      current = testing::words(line)[1];
      out[current];
    } else {
      out[current].push_back(line);
    }
  }
  return out;
}

bool has_reduct(const TermPtr& t, RedRule rule, const TermPtr& want) {
  for (const auto& r : reduce_step(t)) {
    if (r.rule == rule && alpha_eq(r.term, want)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("types") {
    CHECK(to_string(*Ty("e -> e -> ev -> t")) == "e -> e -> ev -> t");
    CHECK(to_string(*Ty("(e -> t) -> e")) == "(e -> t) -> e");
    CHECK(same(Ty("e → t"), Ty("e -> t")));
    CHECK(kind_of([] { Ty("e -> "); }) == ErrorKind::ParseError);
  }

  TEST_CASE("images of categories") {
    auto h = [](const char* f) {
      return to_string(*h_type(*cmg::parse_cformula(f), HTable::defaults(), Alphabet{{"c", "t", "v", "V", "d", "n"}, {"k"}}));
    };
    CHECK(h("k * d") == "e");
    CHECK(h("(k * d) / n") == "(e -> t) -> e");
    CHECK(h("c / t") == "(ev -> t) -> t");
    CHECK(h("V / d") == "e -> e -> ev -> t");
    CHECK(h("(k \\ (d \\ v)) /^ V") == "(e -> ev -> t) -> e -> e -> ev -> t");
    CHECK(h("(k \\ t) /^ v") == "(ev -> t) -> e -> ev -> t");
    CHECK(kind_of([&] { h_type(*cmg::parse_cformula("q"), HTable::defaults()); }) == ErrorKind::UnknownBase);
  }

  TEST_CASE("lexical terms typecheck") {
    CHECK(to_string(*typecheck(*P("\\x. \\y. \\e. eat(e, x, y)"))) == "e -> e -> ev -> t");
    auto the = parse_term("\\Q. mu delta. [| [d | Q(d)] => [| delta(d)]]", {}, Ty("(e -> t) -> e"));
    CHECK(to_string(*typecheck(*the)) == "(e -> t) -> e");
    auto bad = Term::mu("a", Ty("e -> t"), Term::constant("j", SemType::e()));
    CHECK(kind_of([&] { typecheck(*bad); }) == ErrorKind::IllTyped);
    CHECK(kind_of([] { P("eat(e, e)"); }) == ErrorKind::IllTyped);
  }

  TEST_CASE("term printing round-trips") {
    for (const char* text : {"\\x. \\y. \\e. eat(e, x, y)", "[p | pizz(p) & patient(e, p)]",
                             "[| [d | child(d)] => [| agent(e, d)]]", "mu a. [x | A(x) & a(x)]",
                             "eat(e, p, d) && patient(e, p) & past(e) && agent(e, d)", "[x | x == j]"}) {
      auto t = P(text);
      CHECK(to_string(*t) == text);
      CHECK(alpha_eq(P(to_string(*t)), t));
    }
  }

  TEST_CASE("free variables and referents") {
    auto t = P("\\x. [p | R(x, p) & A(q)] & B(y)");
    CHECK(free_lam_vars(*t) == std::set<std::string>{});
    CHECK(free_drefs(*t) == std::set<std::string>{"q", "y"});
    CHECK(free_drefs(*P("[| [d | child(d)] => [| agent(e, d)]]")) == std::set<std::string>{"e"});
  }

  TEST_CASE("beta") {
    CHECK(has_reduct(P("(\\x. x)(j)"), RedRule::Beta, P("j")));
    CHECK(alpha_eq(beta_normalize(P("(\\x. x)(j)")), P("j")));
  }

  TEST_CASE("substitution avoids capture") {
    ParseEnv env = oracle::reference_env();
    env.free_vars["x"] = SemType::e();
    auto body = parse_term("\\y. R(x, y)", env);
    auto out = substitute(body, "x", Term::var("y", SemType::e()));
    REQUIRE(out->kind() == TermKind::Lam);
    CHECK(out->name() != "y");
    CHECK(free_lam_vars(*out) == std::set<std::string>{"y"});
  }

  TEST_CASE("mu' step from the sentence term") {
    auto W = P("eat(e, mu gamma. [p | pizz(p) & gamma(p) & patient(e, p)], "
               "mu delta. [| [d | child(d)] => [| delta(d) & agent(e, d)]])");
    auto want = P("(mu g. [p | pizz(p) & g(eat(e, p)) & patient(e, p)])"
                  "(mu delta. [| [d | child(d)] => [| delta(d) & agent(e, d)]])");
    CHECK(has_reduct(W, RedRule::MuPrime, want));
  }

  TEST_CASE("mu step on an applied abstraction") {
    auto t = P("(mu g. [p | pizz(p) & g(eat(e, p)) & patient(e, p)])(mu delta. [| [d | child(d)] => [| delta(d) & agent(e, d)]])");
    auto want = P("mu h. [p | pizz(p) & h(eat(e, p, mu delta. [| [d | child(d)] => [| delta(d) & agent(e, d)]])) & patient(e, p)]");
    CHECK(has_reduct(t, RedRule::Mu, want));
  }

  TEST_CASE("sigma") {
    auto t = P("mu delta. [| [d | child(d)] => [| delta(eat(e, p, d)) & agent(e, d)]]");
    CHECK(has_reduct(t, RedRule::Sigma, P("[| [d | child(d)] => [| eat(e, p, d) & agent(e, d)]]")));
  }

  TEST_CASE("readings of the reference terms agree with the frozen oracle") {
    auto frozen = frozen_readings();
    for (const auto& [name, text] : oracle::reference_terms()) {
      auto nf = normal_forms(P(text));
      REQUIRE_MESSAGE(frozen.count(name) == 1, name);
      const auto& want = frozen[name];
      REQUIRE(nf.forms.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(alpha_eq(nf.forms[i], P(want[i])));

      oracle::DfsResult dfs;
      oracle::dfs_normal_forms(P(text), dfs);
      CHECK(dfs.forms.size() == nf.forms.size());
    }
    CHECK(frozen["W"].size() == 2);
    CHECK(frozen["three_quantifiers"].size() == 6);
  }

  TEST_CASE("the two readings of the sentence core") {
    auto nf = normal_forms(P(oracle::reference_terms()[0].second));
    REQUIRE(nf.forms.size() == 2);
    auto shared = P("[p | pizz(p) & [| [d | child(d)] => [| eat(e, p, d) & agent(e, d)]] & patient(e, p)]");
    auto each = P("[| [d | child(d)] => [| [p | pizz(p) & eat(e, p, d) & patient(e, p)] & agent(e, d)]]");
    bool a = alpha_eq(nf.forms[0], shared) || alpha_eq(nf.forms[1], shared);
    bool b = alpha_eq(nf.forms[0], each) || alpha_eq(nf.forms[1], each);
    CHECK(a);
    CHECK(b);
  }

  TEST_CASE("a term without mu has one reading") {
    auto nf = normal_forms(P("(\\x. [| A(x) & B(x)])(j)"));
    REQUIRE(nf.forms.size() == 1);
    CHECK(alpha_eq(nf.forms[0], P("[| A(j) & B(j)]")));
  }

  TEST_CASE("the exploration bound") {
    NormalFormOptions opts;
    opts.step_bound = 3;
    CHECK(kind_of([&] { normal_forms(P(oracle::reference_terms()[1].second), opts); }) == ErrorKind::BoundExceeded);
  }

  TEST_CASE("polarity of sub-DRSs") {
    auto pol = [](const TermPtr& t) {
      std::vector<std::pair<std::string, Polarity>> out;
      for (const auto& [pos, p] : subdrs_polarity(*t)) out.emplace_back(to_string(subterm_at(*t, pos)), p);
      return out;
    };
    auto box = pol(P("[d | A(d)]"));
    REQUIRE(box.size() == 2);
    CHECK(box[0] == std::pair<std::string, Polarity>{"[d | A(d)]", Polarity::Positive});
    CHECK(box[1] == std::pair<std::string, Polarity>{"A(d)", Polarity::Positive});

    auto imp = pol(P("[| A(j)] => [| B(j)]"));
    std::map<std::string, Polarity> m(imp.begin(), imp.end());
    CHECK(m.at("[| A(j)]") == Polarity::Negative);
    CHECK(m.at("[| B(j)]") == Polarity::Positive);

    auto nested = pol(P("([| A(j)] => [| B(j)]) => [| C(j)]"));
    std::map<std::string, Polarity> n(nested.begin(), nested.end());
    CHECK(n.at("[| A(j)]") == Polarity::Positive);
    CHECK(n.at("[| B(j)]") == Polarity::Negative);
    CHECK(n.at("[| C(j)]") == Polarity::Positive);
  }

  TEST_CASE("internalization") {
    CHECK(alpha_eq(internalize(P("[d f | R(d, f)] && A(f)")), P("[d f | R(d, f) & A(f)]")));

    auto pre = P("[e | eat(e, mu gamma. [p | pizz(p) & gamma(p)], mu delta. [| [d | child(d)] => [| delta(d)]]) "
                 "&& patient(e, p) & past(e) && agent(e, d)]");
    auto post = P("[e | eat(e, mu gamma. [p | pizz(p) & gamma(p) & patient(e, p)], "
                  "mu delta. [| [d | child(d)] => [| delta(d) & agent(e, d)]]) & past(e)]");
    CHECK(alpha_eq(internalize(pre), post));

    CHECK(kind_of([] { internalize(P("[d | A(d)] && B(z)")); }) == ErrorKind::NoHost);
    CHECK(kind_of([] { internalize(P("[| [d | A(d)] & [d | B(d)]] && C(d)")); }) == ErrorKind::AmbiguousHost);
    CHECK(kind_of([] { internalize(P("[d | A(d)] && (\\x. A(x))(d)")); }) == ErrorKind::UnresolvedFusion);
  }

  TEST_CASE("first-order rendering") {
    auto f = to_fol(*P("[e | [p | pizz(p) & [| [d | child(d)] => [| eat(e, p, d) & agent(e, d)]] & patient(e, p)] & past(e)]"));
    CHECK(to_string(f) ==
          "exists e. (exists p. pizz(p) & (forall d. child(d) => eat(e, p, d) & agent(e, d)) & patient(e, p)) & past(e)");
    CHECK(normalize(f) ==
          normalize(parse_fol("exists e. past(e) & (exists p. pizz(p) & patient(e,p) & "
                              "(forall d. child(d) => eat(e,p,d) & agent(e,d)))")));
    CHECK(to_string(f, true).find("∃e") == 0);
    CHECK(to_string(parse_fol("∀x. A(x) ⇒ B(x)")) == "forall x. A(x) => B(x)");
    CHECK(kind_of([] { to_fol(*P("[d | A(d)] && B(d)")); }) == ErrorKind::UnresolvedFusion);
  }

  TEST_CASE("first-order text survives a round trip through a DRS") {
    auto drs = P("[x | A(x) & [| [y | B(y)] => [| R(x, y)]]]");
    auto f = to_fol(*drs);
    CHECK(alpha_eq(canonical_drs(from_fol(f)), canonical_drs(drs)));
  }

  TEST_CASE("box diagrams") {
    auto lines = render_boxes(*P("[x | A(x)]"));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "+------+");
    CHECK(lines[1] == "| x    |");
    CHECK(lines[3] == "| A(x) |");
  }
}
