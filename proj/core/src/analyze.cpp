#include "mgcat/analyze.hpp"

#include <functional>
#include <set>

#include "mgcat/drs.hpp"
#include "mgcat/error.hpp"
#include "mgcat/reduce.hpp"
#include "mgcat/semtype.hpp"

namespace mgcat {

using sem::Term;
using sem::TermKind;
using sem::TermPtr;

namespace {

// Type of some free occurrence of the λ-variable x, or null.
sem::TypePtr occurrence_type(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case TermKind::LamVar: return t.name() == x ? t.type() : nullptr;
    case TermKind::DiscRef:
    case TermKind::Const: return nullptr;
    case TermKind::Lam:
      if (t.name() == x) return nullptr;
      return occurrence_type(*t.a(), x);
    case TermKind::Mu:
    case TermKind::Name:
    case TermKind::Box: return occurrence_type(*t.a(), x);
    default: {
      auto left = occurrence_type(*t.a(), x);
      return left ? left : occurrence_type(*t.b(), x);
    }
  }
}

TermPtr rename_ref(const TermPtr& t, const std::string& from, const std::string& to) {
  switch (t->kind()) {
    case TermKind::DiscRef: return t->name() == from ? Term::dref(to, t->type()) : t;
    case TermKind::LamVar:
    case TermKind::Const: return t;
    case TermKind::Lam: return Term::lam(t->name(), t->type(), rename_ref(t->a(), from, to));
    case TermKind::Mu: return Term::mu(t->name(), t->type(), rename_ref(t->a(), from, to));
    case TermKind::Name: return Term::named(t->name(), t->type(), rename_ref(t->a(), from, to));
    case TermKind::Box: {
      auto refs = t->refs();
      for (auto& r : refs) {
        if (r.name == from) r.name = to;
      }
      return Term::box(std::move(refs), rename_ref(t->a(), from, to));
    }
    default: return Term::rebuild(*t, rename_ref(t->a(), from, to), rename_ref(t->b(), from, to));
  }
}

void box_refs(const Term& t, std::map<std::string, sem::TypePtr>& out) {
  if (t.kind() == TermKind::Box) {
    for (const auto& r : t.refs()) out.emplace(r.name, r.type);
  }
  if (t.a()) box_refs(*t.a(), out);
  if (t.b()) box_refs(*t.b(), out);
}

std::string ref_var(const std::string& var) { return var + "_ref"; }

class Builder {
 public:
  explicit Builder(const Lexicon& lex) : lex_(lex) {}

  SemanticTerm build(const cmg::CMGDerivation& d) {
    switch (d.rule) {
      case cmg::CMGRule::Lex: return lexical(d);
      case cmg::CMGRule::Axiom: {
        const auto& f = d.conclusion.formula;
        SemanticTerm out{Term::var(d.var, sem::h_type(*f, lex_.htable, lex_.alphabet)), nullptr};
        if (f->conn() == cmg::Conn::Tensor) out.dvar = Term::var(ref_var(d.var), sem::SemType::e());
        return out;
      }
      case cmg::CMGRule::Mg:
      case cmg::CMGRule::MgHdr: {
        auto major = build(*d.premises[0]);
        auto minor = build(*d.premises[1]);
        return {sem_merge(major.term, minor.term), major.dvar};
      }
      case cmg::CMGRule::Mv: {
        auto mover = build(*d.premises[0]);
        auto body = build(*d.premises[1]);
        if (!mover.dvar) {
          throw Error(ErrorKind::IllTyped, "moved constituent " + cmg::to_string(d.premises[0]->conclusion) +
                                               " has no distinguished discourse referent");
        }
        TermPtr out = sem_move(mover.term, mover.dvar, body.term, d.var2, d.var);
        // An intermediate hypothesis also stood in for the mover's referent.
        if (sem::free_lam_vars(*out).count(ref_var(d.var2)) > 0) out = sem::substitute(out, ref_var(d.var2), mover.dvar);
        return {out, body.dvar};
      }
    }
    throw Error(ErrorKind::IllTyped, "unknown rule");
  }

 private:
  SemanticTerm lexical(const cmg::CMGDerivation& d) {
    if (d.entry >= lex_.sem.size() || !lex_.sem[d.entry]) {
      throw Error(ErrorKind::LexiconError, "no semantics for '" + d.word + "' : " + cmg::to_string(*d.conclusion.formula));
    }
    const SemEntry& entry = *lex_.sem[d.entry];
    TermPtr term = entry.term;
    std::map<std::string, sem::TypePtr> refs;
    box_refs(*term, refs);
    std::string dvar = entry.dvar.value_or("");
    sem::TypePtr dvar_type = sem::SemType::e();
    for (const auto& [name, type] : refs) {
      std::string fresh = name;
      for (int k = 1; used_.count(fresh) > 0; ++k) fresh = name + std::to_string(k);
      used_.insert(fresh);
      if (fresh != name) term = rename_ref(term, name, fresh);
      if (name == dvar) {
        dvar = fresh;
        dvar_type = type;
      }
    }
    SemanticTerm out{term, nullptr};
    if (entry.dvar) out.dvar = Term::dref(dvar, dvar_type);
    return out;
  }

  const Lexicon& lex_;
  std::set<std::string> used_;
};

}  // namespace

TermPtr sem_merge(const TermPtr& fun, const TermPtr& arg) {
  auto ft = sem::typecheck(*fun);
  auto at = sem::typecheck(*arg);
  if (ft->kind() != sem::TypeKind::Arrow || !sem::same(ft->from(), at)) {
    throw Error(ErrorKind::IllTyped, "cannot apply " + sem::to_string(*ft) + " to " + sem::to_string(*at));
  }
  return Term::app(fun, arg);
}

TermPtr sem_move(const TermPtr& s, const TermPtr& ds, const TermPtr& body, const std::string& u,
                 const std::string& v) {
  auto free = sem::free_lam_vars(*body);
  if (free.count(u) == 0) throw Error(ErrorKind::VariableNotFree, u + " is not free in " + sem::to_string(*body));
  auto st = sem::typecheck(*s);
  auto ut = occurrence_type(*body, u);
  if (!sem::same(st, ut)) {
    throw Error(ErrorKind::IllTyped, "mover of type " + sem::to_string(*st) + " for " + u + " : " + sem::to_string(*ut));
  }
  TermPtr out = body;
  if (free.count(v) > 0) {
    auto dt = sem::typecheck(*ds);
    auto vt = occurrence_type(*body, v);
    if (!sem::same(dt, vt)) {
      throw Error(ErrorKind::IllTyped, "referent of type " + sem::to_string(*dt) + " for " + v + " : " + sem::to_string(*vt));
    }
    out = sem::substitute(out, v, ds);
  }
  return sem::substitute(out, u, s);
}

SemanticTerm semantic_term(const Lexicon& lexicon, const cmg::CMGDerivation& d) {
  Builder b(lexicon);
  return b.build(d);
}

std::vector<Reading> readings_of(const TermPtr& term, std::size_t max_steps, std::size_t* explored) {
  sem::NormalFormOptions opts;
  opts.step_bound = max_steps;
  auto nf = sem::normal_forms(term, opts);
  if (explored) *explored = nf.explored;
  std::vector<Reading> out;
  for (const auto& form : nf.forms) {
    if (sem::has_kind(*form, TermKind::Fusion)) {
      throw Error(ErrorKind::UnresolvedFusion, "fusion left in " + sem::to_string(*form));
    }
    out.push_back({form, sem::to_string(sem::to_fol(*form))});
  }
  return out;
}

std::vector<Analysis> analyze(const Lexicon& lexicon, const std::vector<std::string>& sentence,
                              const AnalyzeOptions& options) {
  auto parses = cmg::cmg_derive(lexicon.cmg, sentence, options.max_steps);
  if (parses.empty()) throw Error(ErrorKind::NoParse, "no parse");
  std::vector<Analysis> out;
  for (const auto& d : parses) {
    Analysis a;
    a.derivation = d;
    a.raw = semantic_term(lexicon, *d).term;
    auto ty = sem::typecheck(*a.raw);
    if (!sem::same(ty, sem::h_type(*d->conclusion.formula, lexicon.htable, lexicon.alphabet))) {
      throw Error(ErrorKind::IllTyped, "sentence term has type " + sem::to_string(*ty));
    }
    a.beta = sem::beta_normalize(a.raw);
    a.internalized = sem::internalize(a.beta);
    a.readings = readings_of(a.internalized, options.max_steps, &a.explored);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace mgcat
