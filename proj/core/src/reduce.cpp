#include "mgcat/reduce.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "mgcat/error.hpp"

namespace mgcat::sem {

std::string_view to_string(RedRule rule) {
  switch (rule) {
    case RedRule::Beta: return "beta";
    case RedRule::Mu: return "mu";
    case RedRule::MuPrime: return "mu'";
    case RedRule::Sigma: return "sigma";
  }
  return "?";
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base + "'";
  while (avoid.count(n) > 0) n += "'";
  return n;
}

TermPtr rename_lam(const TermPtr& body, const std::string& from, const std::string& to, const TypePtr& type) {
  return substitute(body, from, Term::var(to, type));
}

// Renames free namings of the μ-variable `from` to `to`.
TermPtr rename_mu(const TermPtr& t, const std::string& from, const std::string& to) {
  switch (t->kind()) {
    case TermKind::Name: {
      TermPtr arg = rename_mu(t->a(), from, to);
      if (t->name() == from) return Term::named(to, t->type(), arg);
      return arg == t->a() ? t : Term::named(t->name(), t->type(), arg);
    }
    case TermKind::Mu:
      if (t->name() == from) return t;
      [[fallthrough]];
    default: {
      TermPtr a = t->a() ? rename_mu(t->a(), from, to) : nullptr;
      TermPtr b = t->b() ? rename_mu(t->b(), from, to) : nullptr;
      if (a == t->a() && b == t->b()) return t;
      return Term::rebuild(*t, a, b);
    }
  }
}

// Renames every λ- or μ-binder of t whose name is in `clash`.
TermPtr avoid_capture(const TermPtr& t, const std::set<std::string>& clash, std::set<std::string>& used) {
  TermPtr a = t->a() ? avoid_capture(t->a(), clash, used) : nullptr;
  TermPtr b = t->b() ? avoid_capture(t->b(), clash, used) : nullptr;
  TermPtr out = (a == t->a() && b == t->b()) ? t : Term::rebuild(*t, a, b);
  if ((t->kind() == TermKind::Lam || t->kind() == TermKind::Mu) && clash.count(t->name()) > 0) {
    std::string n = fresh_name(t->name(), used);
    used.insert(n);
    if (t->kind() == TermKind::Lam) return Term::lam(n, t->type(), rename_lam(out->a(), t->name(), n, t->type()));
    return Term::mu(n, t->type(), rename_mu(out->a(), t->name(), n));
  }
  return out;
}

// Replaces each free naming a(Q) of `var` in t by f(Q'), where Q' is Q with
// the same replacement applied.
TermPtr replace_named(const TermPtr& t, const std::string& var, const std::function<TermPtr(const TermPtr&)>& f) {
  if (t->kind() == TermKind::Mu && t->name() == var) return t;
  TermPtr a = t->a() ? replace_named(t->a(), var, f) : nullptr;
  TermPtr b = t->b() ? replace_named(t->b(), var, f) : nullptr;
  if (t->kind() == TermKind::Name && t->name() == var) return f(a);
  if (a == t->a() && b == t->b()) return t;
  return Term::rebuild(*t, a, b);
}

std::set<std::string> all_names(const Term& a, const Term* b = nullptr) {
  std::set<std::string> out;
  collect_names(a, out);
  if (b) collect_names(*b, out);
  return out;
}

std::set<std::string> free_vars_of(const Term& p) {
  std::set<std::string> out = free_lam_vars(p);
  auto mu = free_mu_vars(p);
  out.insert(mu.begin(), mu.end());
  return out;
}

void root_reducts(const TermPtr& t, std::vector<Reduct>& out) {
  if (t->kind() == TermKind::App) {
    const TermPtr& f = t->a();
    const TermPtr& p = t->b();
    if (f->kind() == TermKind::Lam) {
      out.push_back({RedRule::Beta, substitute(f->a(), f->name(), p)});
    }
    if (f->kind() == TermKind::Mu && f->type()->from()->is_arrow()) {
      // (mu a. T) P  ->  mu a'. T[a(Q) := a'(Q P)]
      std::set<std::string> used = all_names(*f, p.get());
      TermPtr body = avoid_capture(f->a(), free_vars_of(*p), used);
      std::string fresh = fresh_name(f->name(), used);
      TypePtr type = SemType::arrow(f->type()->from()->to(), SemType::t());
      TermPtr rewritten =
          replace_named(body, f->name(), [&](const TermPtr& q) { return Term::named(fresh, type, Term::app(q, p)); });
      out.push_back({RedRule::Mu, Term::mu(fresh, type, rewritten)});
    }
    if (p->kind() == TermKind::Mu) {
      // P (mu a. T)  ->  mu a'. T[a(Q) := a'(P Q)]
      TypePtr fun_type = typecheck(*f);
      std::set<std::string> used = all_names(*p, f.get());
      TermPtr body = avoid_capture(p->a(), free_vars_of(*f), used);
      std::string fresh = fresh_name(p->name(), used);
      TypePtr type = SemType::arrow(fun_type->to(), SemType::t());
      TermPtr rewritten =
          replace_named(body, p->name(), [&](const TermPtr& q) { return Term::named(fresh, type, Term::app(f, q)); });
      out.push_back({RedRule::MuPrime, Term::mu(fresh, type, rewritten)});
    }
  }
  if (t->kind() == TermKind::Mu && t->type()->from()->kind() == TypeKind::T) {
    out.push_back({RedRule::Sigma, replace_named(t->a(), t->name(), [](const TermPtr& q) { return q; })});
  }
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u) {
  switch (t->kind()) {
    case TermKind::LamVar: return t->name() == x ? u : t;
    case TermKind::DiscRef:
    case TermKind::Const: return t;
    case TermKind::Lam: {
      if (t->name() == x) return t;
      auto body_free = free_lam_vars(*t->a());
      if (body_free.count(x) == 0) return t;
      auto u_free = free_lam_vars(*u);
      if (u_free.count(t->name()) > 0) {
        std::set<std::string> used = all_names(*t, u.get());
        used.insert(x);
        std::string n = fresh_name(t->name(), used);
        TermPtr body = rename_lam(t->a(), t->name(), n, t->type());
        return Term::lam(n, t->type(), substitute(body, x, u));
      }
      return Term::lam(t->name(), t->type(), substitute(t->a(), x, u));
    }
    case TermKind::Mu: {
      auto u_mu = free_mu_vars(*u);
      if (u_mu.count(t->name()) > 0 && free_lam_vars(*t->a()).count(x) > 0) {
        std::set<std::string> used = all_names(*t, u.get());
        std::string n = fresh_name(t->name(), used);
        TermPtr body = rename_mu(t->a(), t->name(), n);
        return Term::mu(n, t->type(), substitute(body, x, u));
      }
      [[fallthrough]];
    }
    default: {
      TermPtr a = t->a() ? substitute(t->a(), x, u) : nullptr;
      TermPtr b = t->b() ? substitute(t->b(), x, u) : nullptr;
      if (a == t->a() && b == t->b()) return t;
      return Term::rebuild(*t, a, b);
    }
  }
}

std::vector<Reduct> reduce_step(const TermPtr& t) {
  std::vector<Reduct> out;
  root_reducts(t, out);
  if (t->a()) {
    for (auto& r : reduce_step(t->a())) out.push_back({r.rule, Term::rebuild(*t, r.term, t->b())});
  }
  if (t->b()) {
    for (auto& r : reduce_step(t->b())) out.push_back({r.rule, Term::rebuild(*t, t->a(), r.term)});
  }
  return out;
}

TermPtr beta_normalize(const TermPtr& t) {
  if (t->kind() == TermKind::App) {
    TermPtr f = beta_normalize(t->a());
    if (f->kind() == TermKind::Lam) return beta_normalize(substitute(f->a(), f->name(), t->b()));
    TermPtr arg = beta_normalize(t->b());
    if (f == t->a() && arg == t->b()) return t;
    return Term::app(f, arg);
  }
  TermPtr a = t->a() ? beta_normalize(t->a()) : nullptr;
  TermPtr b = t->b() ? beta_normalize(t->b()) : nullptr;
  if (a == t->a() && b == t->b()) return t;
  return Term::rebuild(*t, a, b);
}

namespace {

struct KeyWriter {
  std::map<std::string, std::vector<std::size_t>> lam;
  std::map<std::string, std::vector<std::size_t>> mu;
  std::size_t depth = 0;
  std::string out;

  static std::string bound(const std::map<std::string, std::vector<std::size_t>>& env, const std::string& name,
                           const char* tag) {
    auto it = env.find(name);
    if (it != env.end() && !it->second.empty()) return std::string(tag) + std::to_string(it->second.back());
    return std::string(tag) + "'" + name;
  }

  void write(const Term& t) {
    switch (t.kind()) {
      case TermKind::LamVar: out += bound(lam, t.name(), "x"); return;
      case TermKind::DiscRef: out += "d:" + t.name(); return;
      case TermKind::Const: out += "c:" + t.name(); return;
      case TermKind::Lam:
      case TermKind::Mu: {
        auto& env = t.kind() == TermKind::Lam ? lam : mu;
        env[t.name()].push_back(depth++);
        out += t.kind() == TermKind::Lam ? "(L " : "(M ";
        out += to_string(*t.type()) + " ";
        write(*t.a());
        out += ")";
        env[t.name()].pop_back();
        --depth;
        return;
      }
      case TermKind::Name:
        out += "(N " + bound(mu, t.name(), "a") + " ";
        write(*t.a());
        out += ")";
        return;
      case TermKind::Box:
        out += "[";
        for (const auto& r : t.refs()) out += r.name + " ";
        out += "|";
        write(*t.a());
        out += "]";
        return;
      default: {
        const char* op = t.kind() == TermKind::App       ? "@"
                         : t.kind() == TermKind::And     ? "&"
                         : t.kind() == TermKind::Fusion  ? "&&"
                         : t.kind() == TermKind::Implies ? "=>"
                                                         : "==";
        out += std::string("(") + op + " ";
        write(*t.a());
        out += " ";
        write(*t.b());
        out += ")";
      }
    }
  }
};

}  // namespace

std::string alpha_key(const Term& t) {
  KeyWriter w;
  w.write(t);
  return w.out;
}

NormalForms normal_forms(const TermPtr& t, const NormalFormOptions& options) {
  NormalForms result;
  std::map<std::string, TermPtr> forms;
  std::set<std::string> seen{alpha_key(*t)};
  std::deque<TermPtr> queue{t};
  std::mt19937_64 rng(options.shuffle_seed.value_or(0));
  while (!queue.empty()) {
    TermPtr cur = queue.front();
    queue.pop_front();
    if (++result.explored > options.step_bound) {
      throw Error(ErrorKind::BoundExceeded,
                  "reduction graph not exhausted within " + std::to_string(options.step_bound) + " terms");
    }
    std::vector<Reduct> next = reduce_step(cur);
    if (options.shuffle_seed) std::shuffle(next.begin(), next.end(), rng);
    if (next.empty()) {
      if (has_kind(*cur, TermKind::Lam) || has_kind(*cur, TermKind::Mu) || has_kind(*cur, TermKind::LamVar) ||
          has_kind(*cur, TermKind::Name)) {
        ++result.stuck;
      } else {
        forms.emplace(alpha_key(*cur), cur);
      }
      continue;
    }
    for (auto& r : next) {
      if (seen.insert(alpha_key(*r.term)).second) queue.push_back(r.term);
    }
  }
  for (auto& [key, form] : forms) result.forms.push_back(form);
  return result;
}

}  // namespace mgcat::sem
