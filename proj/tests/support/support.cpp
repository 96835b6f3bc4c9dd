#include "support.hpp"

#include <fstream>
#include <sstream>

#include "mgcat/error.hpp"

#ifndef MGCAT_DATA_DIR
#define MGCAT_DATA_DIR "data"
#endif
#ifndef MGCAT_GOLDEN_DIR
#define MGCAT_GOLDEN_DIR "tests/golden"
#endif

namespace mgcat::testing {

using cmg::CFormula;
using cmg::CFormulaPtr;
using mg::Feature;
using mg::FeatureKind;
using sem::SemType;
using sem::TermKind;
using sem::Term;
using sem::TermPtr;
using sem::TypePtr;

std::string data_path(const std::string& name) { return std::string(MGCAT_DATA_DIR) + "/" + name; }
std::string golden_path(const std::string& name) { return std::string(MGCAT_GOLDEN_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string join(const std::vector<std::string>& words, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i ? sep : "") + words[i];
  return out;
}

std::vector<std::string> words(const std::string& sentence) {
  std::istringstream in(sentence);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Alphabet random_alphabet() {
  Alphabet a;
  a.base.insert(kBaseNames.begin(), kBaseNames.end());
  a.move.insert(kMoveNames.begin(), kMoveNames.end());
  return a;
}

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

const std::string& pick(std::mt19937_64& rng, const std::vector<std::string>& v) { return v[below(rng, v.size())]; }

}  // namespace

std::vector<Feature> random_entry(std::mt19937_64& rng) {
  std::vector<Feature> out;
  if (coin(rng, 0.7)) {
    out.push_back({coin(rng, 0.7) ? FeatureKind::Selector : FeatureKind::HeadSelector, pick(rng, kBaseNames)});
    for (std::size_t n = below(rng, 4); n > 0; --n) {
      switch (below(rng, 3)) {
        case 0: out.push_back({FeatureKind::Selector, pick(rng, kBaseNames)}); break;
        case 1: out.push_back({FeatureKind::HeadSelector, pick(rng, kBaseNames)}); break;
        default: out.push_back({FeatureKind::Licensor, pick(rng, kMoveNames)});
      }
    }
  }
  out.push_back({FeatureKind::Base, pick(rng, kBaseNames)});
  for (std::size_t n = below(rng, 3); n > 0; --n) out.push_back({FeatureKind::Licensee, pick(rng, kMoveNames)});
  return out;
}

std::vector<Feature> random_feature_list(std::mt19937_64& rng) {
  std::vector<Feature> out;
  for (std::size_t n = 1 + below(rng, 5); n > 0; --n) {
    auto kind = static_cast<FeatureKind>(below(rng, 5));
    bool move = kind == FeatureKind::Licensee || kind == FeatureKind::Licensor;
    out.push_back({kind, pick(rng, move ? kMoveNames : kBaseNames)});
  }
  return out;
}

namespace {

CFormulaPtr random_c(std::mt19937_64& rng) {
  CFormulaPtr f = CFormula::atom(pick(rng, kBaseNames));
  for (std::size_t n = below(rng, 3); n > 0; --n) f = CFormula::tensor(CFormula::atom(pick(rng, kMoveNames)), f);
  return f;
}

CFormulaPtr random_x(std::mt19937_64& rng, int depth) {
  if (depth == 0 || coin(rng, 0.35)) return random_c(rng);
  auto rest = random_x(rng, depth - 1);
  switch (below(rng, 3)) {
    case 0: return CFormula::under(CFormula::atom(pick(rng, kBaseNames)), rest);
    case 1: return CFormula::under(CFormula::atom(pick(rng, kBaseNames)), rest, true);
    default: return CFormula::under(CFormula::atom(pick(rng, kMoveNames)), rest);
  }
}

}  // namespace

CFormulaPtr random_formula(std::mt19937_64& rng) {
  switch (below(rng, 3)) {
    case 0: return CFormula::over(random_x(rng, 3), CFormula::atom(pick(rng, kBaseNames)));
    case 1: return CFormula::over(random_x(rng, 3), CFormula::atom(pick(rng, kBaseNames)), true);
    default: return random_c(rng);
  }
}

// ---------------------------------------------------------------------------
// Random terms

namespace {

struct Binding {
  TermKind kind;  // LamVar, DiscRef or Mu (for μ-variables)
  std::string name;
  TypePtr type;
};

class TermGen {
 public:
  explicit TermGen(std::mt19937_64& rng) : rng_(rng) {}

  TermPtr gen(const TypePtr& ty, int depth) {
    if (ty->is_arrow()) return gen_arrow(ty, depth);
    if (ty->kind() == sem::TypeKind::T) return gen_t(depth);
    return gen_individual(ty, depth);
  }

 private:
  std::string fresh(const char* stem) { return stem + std::to_string(++counter_); }

  TypePtr small_type() {
    switch (below(rng_, 5)) {
      case 0: return SemType::t();
      case 1: return SemType::ev();
      case 2: return SemType::arrow(SemType::e(), SemType::t());
      default: return SemType::e();
    }
  }

  std::vector<const Binding*> visible(TermKind kind, const TypePtr& ty) const {
    std::vector<const Binding*> out;
    for (const auto& b : env_) {
      if (b.kind == kind && sem::same(b.type, ty)) out.push_back(&b);
    }
    return out;
  }

  template <typename F>
  TermPtr with(Binding b, F&& f) {
    env_.push_back(std::move(b));
    TermPtr out = f();
    env_.pop_back();
    return out;
  }

  // (\x : C. body) arg, or (f arg) with a μ somewhere.
  TermPtr redex(const TypePtr& ty, int depth) {
    TypePtr c = small_type();
    if (coin(rng_)) {
      std::string x = fresh("x");
      auto fun = with({TermKind::LamVar, x, c}, [&] { return Term::lam(x, c, gen(ty, depth - 1)); });
      return Term::app(fun, gen(c, depth - 1));
    }
    return Term::app(gen(SemType::arrow(c, ty), depth - 1), gen(c, depth - 1));
  }

  TermPtr mu(const TypePtr& ty, int depth) {
    std::string a = fresh("a");
    TypePtr at = SemType::arrow(ty, SemType::t());
    return with({TermKind::Mu, a, at}, [&] { return Term::mu(a, at, gen_t(depth - 1)); });
  }

  TermPtr gen_arrow(const TypePtr& ty, int depth) {
    auto vars = visible(TermKind::LamVar, ty);
    std::size_t choice = depth <= 0 ? 0 : below(rng_, 5);
    if (choice == 1 && !vars.empty()) return Term::var(vars[below(rng_, vars.size())]->name, ty);
    if (choice == 2) return redex(ty, depth);
    if (choice == 3) return mu(ty, depth);
    std::string x = fresh("x");
    return with({TermKind::LamVar, x, ty->from()}, [&] { return Term::lam(x, ty->from(), gen(ty->to(), depth - 1)); });
  }

  TermPtr gen_individual(const TypePtr& ty, int depth) {
    std::vector<TermPtr> leaves;
    for (const auto* b : visible(TermKind::LamVar, ty)) leaves.push_back(Term::var(b->name, ty));
    for (const auto* b : visible(TermKind::DiscRef, ty)) leaves.push_back(Term::dref(b->name, ty));
    leaves.push_back(Term::constant(ty->kind() == sem::TypeKind::E ? "j" : "s", ty));
    if (depth > 0) {
      switch (below(rng_, 4)) {
        case 0: return mu(ty, depth);
        case 1: return redex(ty, depth);
        default: break;
      }
    }
    return leaves[below(rng_, leaves.size())];
  }

  TermPtr atom(int depth) {
    TypePtr e = SemType::e();
    TypePtr ev = SemType::ev();
    TypePtr t = SemType::t();
    switch (below(rng_, 4)) {
      case 0: return Term::app(Term::constant("P", SemType::arrow(e, t)), gen(e, depth));
      case 1:
        return Term::app(Term::app(Term::constant("R", SemType::arrow(e, SemType::arrow(e, t))), gen(e, depth)),
                         gen(e, depth));
      case 2: return Term::app(Term::constant("E", SemType::arrow(ev, t)), gen(ev, depth));
      default: return Term::eq(gen(e, depth), gen(e, depth));
    }
  }

  TermPtr box(int depth) {
    std::string r = fresh("r");
    TypePtr rt = coin(rng_, 0.8) ? SemType::e() : SemType::ev();
    return with({TermKind::DiscRef, r, rt}, [&] { return Term::box({{r, rt}}, gen_t(depth - 1)); });
  }

  TermPtr gen_t(int depth) {
    if (depth <= 0) return atom(0);
    std::vector<const Binding*> mus;
    for (const auto& b : env_) {
      if (b.kind == TermKind::Mu) mus.push_back(&b);
    }
    switch (below(rng_, 10)) {
      case 0:
      case 1: return box(depth);
      case 2: return Term::conj(gen_t(depth - 1), gen_t(depth - 1));
      case 3: return Term::implies(box(depth), box(depth));
      case 4: return Term::fusion(gen_t(depth - 1), atom(0));
      case 5:
        if (!mus.empty()) {
          const Binding a = *mus[below(rng_, mus.size())];  // env_ may grow below
          auto arg = gen(a.type->from(), depth - 1);
          return Term::named(a.name, a.type, arg);
        }
        return atom(depth - 1);
      case 6: return redex(SemType::t(), depth);
      case 7: return mu(SemType::t(), depth);
      default: return atom(depth - 1);
    }
  }

  std::mt19937_64& rng_;
  std::vector<Binding> env_;
  int counter_ = 0;
};

}  // namespace

TermPtr random_term(std::mt19937_64& rng, const TypePtr& type, int depth) {
  TermGen g(rng);
  return g.gen(type, depth);
}

// ---------------------------------------------------------------------------
// Random derivations

std::vector<cmg::CMGDerivationPtr> random_derivations(std::mt19937_64& rng, const cmg::CMGLexicon& lex,
                                                      std::size_t count) {
  using cmg::CMGDerivationPtr;
  using cmg::Conn;
  std::vector<CMGDerivationPtr> pool;
  for (const auto& e : lex.entries) pool.push_back(cmg::lex_axiom(lex, e.word, e.formula));
  std::vector<CMGDerivationPtr> out;
  int counter = 0;
  auto fresh = [&] { return "h" + std::to_string(++counter); };
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < count * 400) {
    const CMGDerivationPtr& major = pool[below(rng, pool.size())];
    const CFormula& f = *major->conclusion.formula;
    CMGDerivationPtr result;
    try {
      if (f.is_implication()) {
        const CFormulaPtr& arg = f.argument();
        CMGDerivationPtr minor;
        if (lex.alphabet.is_move(arg->name()) || coin(rng, 0.3)) {
          minor = cmg::var_axiom(fresh(), arg);
        } else {
          minor = pool[below(rng, pool.size())];
        }
        result = f.is_hdr() ? cmg::rule_hdr(major, minor) : cmg::rule_mg(major, minor);
      } else if (!major->conclusion.context.empty()) {
        // Discharge a movement hypothesis x : m together with some y : B.
        const auto& ctx = major->conclusion.context;
        const auto& hx = ctx[below(rng, ctx.size())];
        const auto& hy = ctx[below(rng, ctx.size())];
        if (hx.var == hy.var || !hx.formula->is_atom() || !lex.alphabet.is_move(hx.formula->name())) continue;
        auto tensor = CFormula::tensor(hx.formula, hy.formula);
        CMGDerivationPtr prem;
        for (const auto& p : pool) {
          if (cmg::same(p->conclusion.formula, tensor) && coin(rng)) {
            prem = p;
            break;
          }
        }
        if (!prem) prem = cmg::var_axiom(fresh(), tensor);
        result = cmg::rule_mv(prem, major, hx.var, hy.var);
      } else {
        continue;
      }
    } catch (const Error&) {
      continue;
    }
    pool.push_back(result);
    out.push_back(result);
  }
  return out;
}

std::vector<cmg::CMGDerivationPtr> all_derivations(const cmg::CMGLexicon& lex, std::size_t max_words) {
  std::vector<cmg::CMGDerivationPtr> out;
  for (const auto& s : cmg::cmg_generate(lex, max_words, 40)) {
    auto ds = cmg::cmg_derive(lex, s, 40);
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

}  // namespace mgcat::testing
