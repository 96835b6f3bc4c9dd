#include <doctest.h>

#include <algorithm>
#include <map>

#include "mgcat/analyze.hpp"
#include "mgcat/drs.hpp"
#include "mgcat/lexicon.hpp"
#include "mgcat/reduce.hpp"
#include "mgcat/translate.hpp"
#include "support.hpp"

using namespace mgcat;
using mgcat::testing::data_path;

namespace {

const std::vector<std::string> kLexicons{"pizza", "wh", "double", "simple", "smc"};

Lexicon bundled(const std::string& name) { return load_lexicon(data_path(name + ".lex")); }

std::size_t feature_count(const mg::MGTree& t) {
  if (t.is_leaf()) return t.seq().features.size();
  return feature_count(*t.left()) + feature_count(*t.right());
}

std::vector<mg::MGDerivation> all_mg_derivations(const mg::MGLexicon& lex, std::size_t max_words) {
  std::vector<mg::MGDerivation> out;
  for (const auto& s : mg::mg_generate(lex, max_words, 100)) {
    auto ds = mg::mg_derive(lex, s, 100);
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

void subformulas(const cmg::CFormulaPtr& f, std::set<std::string>& out) {
  out.insert(cmg::to_string(*f));
  if (f->is_atom()) return;
  subformulas(f->argument(), out);
  subformulas(f->result(), out);
}

struct Usage {
  std::size_t lex = 0;
  std::multiset<std::string> axioms;
  std::multiset<std::string> discharged;
};

void usage(const cmg::CMGDerivation& d, Usage& u) {
  if (d.rule == cmg::CMGRule::Lex) ++u.lex;
  if (d.rule == cmg::CMGRule::Axiom) u.axioms.insert(d.var);
  if (d.rule == cmg::CMGRule::Mv) {
    u.discharged.insert(d.var);
    u.discharged.insert(d.var2);
  }
  for (const auto& p : d.premises) usage(*p, u);
}

void check_every_node(const cmg::CMGDerivation& d, std::size_t& violations) {
  try {
    cmg::check_label_discipline(d.conclusion);
  } catch (const Error&) {
    ++violations;
  }
  for (const auto& p : d.premises) check_every_node(*p, violations);
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("every feature rule deletes two features and keeps the head") {
    for (const auto& name : kLexicons) {
      auto lex = bundled(name);
      for (const auto& d : all_mg_derivations(lex.mg, 6)) {
        CHECK(*d.replay() == *d.root());
        for (const auto& step : d.steps) {
          if (step.rule == mg::MGRule::Lex) continue;
          std::size_t before = 0;
          for (auto op : step.operands) before += feature_count(*d.steps[op].result);
          CHECK(feature_count(*step.result) + 2 == before);
          // The result's head is the selector's (or target's) head minus one feature.
          const auto& sel = mg::head_of(*d.steps[step.operands[0]].result).features;
          std::vector<mg::Feature> want(sel.begin() + 1, sel.end());
          CHECK(mg::head_of(*step.result).features == want);
        }
      }
    }
  }

  TEST_CASE("moves are deterministic under shortest move") {
    for (const auto& name : kLexicons) {
      auto lex = bundled(name);
      for (const auto& d : all_mg_derivations(lex.mg, 6)) {
        for (const auto& step : d.steps) {
          if (step.rule != mg::MGRule::Move) continue;
          auto again = mg::mg_move(d.steps[step.operands[0]].result);
          CHECK(*again == *step.result);
        }
      }
    }
  }

  TEST_CASE("complete categorial proofs yield their sentence and use resources once") {
    std::size_t checked = 0;
    for (const auto& name : kLexicons) {
      auto lex = bundled(name);
      std::set<std::string> subs;
      for (const auto& e : lex.cmg.entries) subformulas(e.formula, subs);
      for (const auto& s : cmg::cmg_generate(lex.cmg, 6, 100)) {
        for (const auto& d : cmg::cmg_derive(lex.cmg, s, 100)) {
          ++checked;
          CHECK(d->conclusion.label.flatten().size() == s.size());
          CHECK(cmg::yield(d->conclusion.label) == s);
          std::size_t bad = 0;
          check_every_node(*d, bad);
          CHECK(bad == 0);
          Usage u;
          usage(*d, u);
          CHECK(u.axioms == u.discharged);
          CHECK(std::adjacent_find(u.axioms.begin(), u.axioms.end()) == u.axioms.end());
          // Elimination rules only: every formula is a lexical subformula.
          std::function<void(const cmg::CMGDerivation&)> walk = [&](const cmg::CMGDerivation& n) {
            CHECK(subs.count(cmg::to_string(*n.conclusion.formula)) == 1);
            for (const auto& p : n.premises) walk(*p);
          };
          walk(*d);
        }
      }
    }
    CHECK(checked > 30);
  }

  TEST_CASE("label discipline on random proofs") {
    std::mt19937_64 rng(3);
    std::size_t total = 0;
    for (const auto& name : kLexicons) {
      auto lex = bundled(name);
      auto ds = testing::random_derivations(rng, lex.cmg, 200);
      total += ds.size();
      std::size_t bad = 0;
      for (const auto& d : ds) check_every_node(*d, bad);
      CHECK(bad == 0);
    }
    CHECK(total >= 800);
  }

  TEST_CASE("head merge is not plain merge") {
    // A \ B and A \^ B are never interchangeable without introduction rules.
    Alphabet a{{"t", "v", "c"}, {}};
    cmg::CMGLexicon lex{a, "c", {}};
    lex.entries.push_back({"x", {"x"}, cmg::parse_cformula("c / t")});
    lex.entries.push_back({"y", {"y"}, cmg::parse_cformula("t /^ v")});
    lex.entries.push_back({"z", {"z"}, cmg::parse_cformula("v")});
    auto plain = cmg::lex_axiom(lex, "x", cmg::parse_cformula("c / t"));
    auto hdr = cmg::lex_axiom(lex, "y", cmg::parse_cformula("t /^ v"));
    auto v = cmg::lex_axiom(lex, "z", cmg::parse_cformula("v"));
    CHECK(testing::kind_of([&] { cmg::rule_mg(hdr, v); }) == ErrorKind::TypeClash);
    CHECK(testing::kind_of([&] { cmg::rule_hdr(plain, cmg::rule_hdr(hdr, v)); }) == ErrorKind::TypeClash);
  }

  TEST_CASE("translation round-trips") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
      auto e = testing::random_entry(rng);
      REQUIRE(mg::matches_entry_regex(e));
      auto f = translate::to_categorial(e);
      CHECK_NOTHROW(cmg::validate_cformula(*f, testing::random_alphabet()));
      translate::LicensorPartition part{{testing::kBaseNames.begin(), testing::kBaseNames.end()},
                                        {testing::kMoveNames.begin(), testing::kMoveNames.end()}};
      CHECK(translate::to_stabler(*f, part) == e);
    }
    for (int i = 0; i < 1000; ++i) {
      auto f = testing::random_formula(rng);
      REQUIRE_NOTHROW(cmg::validate_cformula(*f, testing::random_alphabet()));
      auto e = translate::to_stabler(*f, translate::LicensorPartition::from(testing::random_alphabet()));
      CHECK(mg::matches_entry_regex(e));
      CHECK(*translate::to_categorial(e) == *f);
    }
  }

  TEST_CASE("subject reduction") {
    std::mt19937_64 rng(17);
    std::size_t steps = 0;
    for (int i = 0; i < 10000; ++i) {
      auto ty = i % 3 == 0 ? sem::SemType::e() : sem::SemType::t();
      auto t = testing::random_term(rng, ty);
      auto before = sem::typecheck(*t);
      REQUIRE(sem::same(before, ty));
      for (const auto& r : sem::reduce_step(t)) {
        ++steps;
        CHECK(sem::same(sem::typecheck(*r.term), before));
      }
    }
    CHECK(steps > 2000);
  }

  TEST_CASE("readings do not depend on exploration order") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      auto t = testing::random_term(rng, sem::SemType::t(), 3);
      sem::NormalForms base;
      try {
        base = sem::normal_forms(t);
      } catch (const Error&) {
        continue;
      }
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        sem::NormalFormOptions opts;
        opts.shuffle_seed = seed;
        auto other = sem::normal_forms(t, opts);
        REQUIRE(other.forms.size() == base.forms.size());
        for (std::size_t k = 0; k < base.forms.size(); ++k) CHECK(*other.forms[k] == *base.forms[k]);
      }
    }
  }

  TEST_CASE("internalization is idempotent and keeps the type") {
    auto lex = bundled("pizza");
    for (const auto& s : cmg::cmg_generate(lex.cmg, 5, 100)) {
      for (const auto& a : analyze(lex, s)) {
        auto again = sem::internalize(a.internalized);
        CHECK(*again == *a.internalized);
        CHECK(sem::same(sem::typecheck(*a.internalized), sem::SemType::t()));
      }
    }
    std::mt19937_64 rng(29);
    std::size_t resolved = 0;
    for (int i = 0; i < 500; ++i) {
      auto t = testing::random_term(rng, sem::SemType::t(), 3);
      sem::TermPtr once;
      try {
        once = sem::internalize(t);
      } catch (const Error&) {
        continue;
      }
      ++resolved;
      CHECK(*sem::internalize(once) == *once);
      CHECK(sem::same(sem::typecheck(*once), sem::SemType::t()));
    }
    CHECK(resolved > 50);
  }

  TEST_CASE("every bundled sentence reaches its readings within the bound") {
    auto lex = bundled("pizza");
    for (const auto& s : cmg::cmg_generate(lex.cmg, 6, 100)) {
      auto as = analyze(lex, s, {10000});
      REQUIRE(as.size() == 1);
      CHECK(as[0].readings.size() == 2);
      CHECK(as[0].explored < 10000);
    }
  }

  TEST_CASE("lexical terms have the image type of their category") {
    auto lex = bundled("pizza");
    for (std::size_t i = 0; i < lex.cmg.entries.size(); ++i) {
      REQUIRE(lex.sem[i]);
      CHECK(sem::same(sem::typecheck(*lex.sem[i]->term),
                      sem::h_type(*lex.cmg.entries[i].formula, lex.htable, lex.alphabet)));
    }
  }

  TEST_CASE("first-order renderings parse back to the same DRS") {
    std::vector<sem::TermPtr> drss;
    auto lex = bundled("pizza");
    for (const auto& s : cmg::cmg_generate(lex.cmg, 5, 100)) {
      for (const auto& a : analyze(lex, s)) {
        for (const auto& r : a.readings) drss.push_back(r.drs);
      }
    }
    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i) {
      try {
        auto nf = sem::normal_forms(sem::internalize(testing::random_term(rng, sem::SemType::t(), 3)));
        for (const auto& f : nf.forms) {
          if (!sem::has_kind(*f, sem::TermKind::Fusion)) drss.push_back(f);
        }
      } catch (const Error&) {
      }
    }
    CHECK(drss.size() > 100);
    for (const auto& d : drss) {
      auto fol = sem::to_fol(*d);
      auto text = sem::to_string(fol);
      CHECK(sem::parse_fol(text) == fol);
      // Referent types are not recoverable from text, so compare as formulas.
      auto back = sem::to_fol(*sem::canonical_drs(sem::from_fol(sem::parse_fol(text))));
      CHECK(sem::normalize(back) == sem::normalize(fol));
    }
  }
}
