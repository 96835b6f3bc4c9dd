#include "mgcat/drs.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "mgcat/error.hpp"
#include "text_util.hpp"

namespace mgcat::sem {

namespace {

Polarity flip(Polarity p) { return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive; }

void polarity_walk(const Term& t, Polarity pol, Position& pos, std::vector<std::pair<Position, Polarity>>& out) {
  out.emplace_back(pos, pol);
  auto child = [&](int idx, const Term& c, Polarity p) {
    pos.push_back(idx);
    polarity_walk(c, p, pos, out);
    pos.pop_back();
  };
  switch (t.kind()) {
    case TermKind::Box: child(0, *t.a(), pol); break;
    case TermKind::And:
    case TermKind::Fusion:
      child(0, *t.a(), pol);
      child(1, *t.b(), pol);
      break;
    case TermKind::Implies:
      child(0, *t.a(), flip(pol));
      child(1, *t.b(), pol);
      break;
    default: break;
  }
}

}  // namespace

std::vector<std::pair<Position, Polarity>> subdrs_polarity(const Term& d) {
  std::vector<std::pair<Position, Polarity>> out;
  Position pos;
  polarity_walk(d, Polarity::Positive, pos, out);
  return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int step : p) cur = step == 0 ? cur->a().get() : cur->b().get();
  return *cur;
}

// ---------------------------------------------------------------------------
// Internalization

namespace {

TermPtr replace_at(const TermPtr& t, const Position& p, std::size_t i, const TermPtr& with) {
  if (i == p.size()) return with;
  if (p[i] == 0) return Term::rebuild(*t, replace_at(t->a(), p, i + 1, with), t->b());
  return Term::rebuild(*t, t->a(), replace_at(t->b(), p, i + 1, with));
}

bool find_innermost_fusion(const Term& t, Position& pos) {
  for (int idx = 0; idx < 2; ++idx) {
    const TermPtr& c = idx == 0 ? t.a() : t.b();
    if (!c) continue;
    pos.push_back(idx);
    if (find_innermost_fusion(*c, pos)) return true;
    pos.pop_back();
  }
  return t.kind() == TermKind::Fusion;
}

// Positive boxes of D, looking through application and abstraction nodes.
void host_candidates(const Term& t, Polarity pol, Position& pos, std::vector<Position>& out) {
  if (t.kind() == TermKind::Box && pol == Polarity::Positive) out.push_back(pos);
  auto child = [&](int idx, const Term& c, Polarity p) {
    pos.push_back(idx);
    host_candidates(c, p, pos, out);
    pos.pop_back();
  };
  switch (t.kind()) {
    case TermKind::Implies:
      child(0, *t.a(), flip(pol));
      child(1, *t.b(), pol);
      break;
    case TermKind::Box:
    case TermKind::And:
    case TermKind::Fusion:
    case TermKind::App:
    case TermKind::Lam:
    case TermKind::Mu:
    case TermKind::Name:
      if (t.a()) child(0, *t.a(), pol);
      if (t.b()) child(1, *t.b(), pol);
      break;
    default: break;
  }
}

void add_box_chain(const Term& box, std::set<std::string>& out) {
  const Term* cur = &box;
  while (cur->kind() == TermKind::Box) {
    for (const auto& r : cur->refs()) out.insert(r.name);
    cur = cur->a().get();
  }
}

// Referent markers accessible from the sub-DRS at `p`: those of every box on
// the way down (itself included) and of each antecedent whose consequent
// contains it.
std::set<std::string> accessible_markers(const Term& root, const Position& p) {
  std::set<std::string> out;
  const Term* cur = &root;
  for (std::size_t i = 0;; ++i) {
    if (cur->kind() == TermKind::Box) {
      for (const auto& r : cur->refs()) out.insert(r.name);
    }
    if (i == p.size()) break;
    if (cur->kind() == TermKind::Implies && p[i] == 1) add_box_chain(*cur->a(), out);
    cur = p[i] == 0 ? cur->a().get() : cur->b().get();
  }
  return out;
}

bool is_prefix(const Position& a, const Position& b) {
  return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TermPtr internalize(const TermPtr& d) {
  TermPtr cur = d;
  while (true) {
    Position fpos;
    if (!find_innermost_fusion(*cur, fpos)) return cur;
    const Term& fusion = subterm_at(*cur, fpos);
    const TermPtr& host = fusion.a();
    const TermPtr& formula = fusion.b();
    if (has_kind(*formula, TermKind::Lam) || has_kind(*formula, TermKind::Mu) || has_kind(*formula, TermKind::Name)) {
      throw Error(ErrorKind::UnresolvedFusion, "cannot internalize " + to_string(*formula) + ": not a plain formula");
    }
    std::set<std::string> needed = free_drefs(*formula);

    std::vector<Position> candidates;
    Position scratch;
    host_candidates(*host, Polarity::Positive, scratch, candidates);
    std::vector<Position> fitting;
    for (const auto& c : candidates) {
      Position full = fpos;
      full.push_back(0);
      full.insert(full.end(), c.begin(), c.end());
      auto acc = accessible_markers(*cur, full);
      if (std::includes(acc.begin(), acc.end(), needed.begin(), needed.end())) fitting.push_back(c);
    }
    std::vector<Position> largest;
    for (const auto& c : fitting) {
      bool inside_other = std::any_of(fitting.begin(), fitting.end(), [&](const Position& o) { return is_prefix(o, c); });
      if (!inside_other) largest.push_back(c);
    }
    std::string what = to_string(*formula);
    if (largest.empty()) {
      throw Error(ErrorKind::NoHost, "no positive sub-DRS gives access to the referents of " + what);
    }
    if (largest.size() > 1) {
      throw Error(ErrorKind::AmbiguousHost, "no unique largest sub-DRS can host " + what);
    }
    const Term& k = subterm_at(*host, largest.front());
    TermPtr grown = Term::box(k.refs(), Term::conj(k.a(), formula));
    TermPtr new_host = replace_at(host, largest.front(), 0, grown);
    cur = replace_at(cur, fpos, 0, new_host);
  }
}

// ---------------------------------------------------------------------------
// First-order rendering

namespace {

Fol make(Fol::Kind k, std::string name, std::vector<Fol> kids) {
  Fol f;
  f.kind = k;
  f.name = std::move(name);
  f.kids = std::move(kids);
  return f;
}

std::string fol_arg(const Term& t) {
  if (t.kind() == TermKind::DiscRef || t.kind() == TermKind::Const) return t.name();
  if (t.kind() == TermKind::LamVar || has_kind(t, TermKind::Lam) || has_kind(t, TermKind::Mu)) {
    throw Error(ErrorKind::IllTyped, "not a first-order argument: " + to_string(t));
  }
  return to_string(t);
}

Fol quantify(Fol::Kind k, const std::vector<Ref>& refs, Fol body) {
  for (auto it = refs.rbegin(); it != refs.rend(); ++it) body = make(k, it->name, {std::move(body)});
  return body;
}

}  // namespace

Fol to_fol(const Term& t) {
  switch (t.kind()) {
    case TermKind::Box: return quantify(Fol::Kind::Exists, t.refs(), to_fol(*t.a()));
    case TermKind::Implies:
      if (t.a()->kind() == TermKind::Box) {
        // Referents of a chain of nested antecedent boxes are all universal.
        std::vector<Ref> refs;
        const Term* cur = t.a().get();
        while (cur->kind() == TermKind::Box) {
          refs.insert(refs.end(), cur->refs().begin(), cur->refs().end());
          cur = cur->a().get();
        }
        return quantify(Fol::Kind::Forall, refs, make(Fol::Kind::Implies, "", {to_fol(*cur), to_fol(*t.b())}));
      }
      return make(Fol::Kind::Implies, "", {to_fol(*t.a()), to_fol(*t.b())});
    case TermKind::And: return make(Fol::Kind::And, "", {to_fol(*t.a()), to_fol(*t.b())});
    case TermKind::Fusion: throw Error(ErrorKind::UnresolvedFusion, "fusion left in " + to_string(t));
    case TermKind::Eq: {
      Fol f = make(Fol::Kind::Eq, "", {});
      f.args = {fol_arg(*t.a()), fol_arg(*t.b())};
      return f;
    }
    case TermKind::Const:
    case TermKind::App: {
      std::vector<std::string> args;
      const Term* head = &t;
      while (head->kind() == TermKind::App) {
        args.push_back(fol_arg(*head->b()));
        head = head->a().get();
      }
      if (head->kind() != TermKind::Const) throw Error(ErrorKind::IllTyped, "not a first-order atom: " + to_string(t));
      std::reverse(args.begin(), args.end());
      Fol f = make(Fol::Kind::Atom, head->name(), {});
      f.args = std::move(args);
      return f;
    }
    default: throw Error(ErrorKind::IllTyped, "not a first-order DRS: " + to_string(t));
  }
}

namespace {

// 0: quantifiers and =>, 1: &, 2: atoms.
void print_fol(const Fol& f, int ctx, bool uni, std::string& out) {
  auto wrap_open = [&](int level) {
    bool w = ctx > level;
    if (w) out += "(";
    return w;
  };
  switch (f.kind) {
    case Fol::Kind::Atom:
      out += f.name;
      if (!f.args.empty()) out += "(" + detail::join(f.args, ", ") + ")";
      return;
    case Fol::Kind::Eq: out += f.args[0] + " = " + f.args[1]; return;
    case Fol::Kind::And: {
      bool w = wrap_open(1);
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i > 0) out += uni ? " \xE2\x88\xA7 " : " & ";
        print_fol(f.kids[i], i == 0 ? 1 : 2, uni, out);
      }
      if (w) out += ")";
      return;
    }
    case Fol::Kind::Implies: {
      bool w = wrap_open(0);
      print_fol(f.kids[0], 1, uni, out);
      out += uni ? " \xE2\x87\x92 " : " => ";
      print_fol(f.kids[1], 0, uni, out);
      if (w) out += ")";
      return;
    }
    case Fol::Kind::Exists:
    case Fol::Kind::Forall: {
      bool w = wrap_open(0);
      bool ex = f.kind == Fol::Kind::Exists;
      if (uni) {
        out += (ex ? "\xE2\x88\x83" : "\xE2\x88\x80") + f.name + ". ";
      } else {
        out += (ex ? "exists " : "forall ") + f.name + ". ";
      }
      print_fol(f.kids[0], 0, uni, out);
      if (w) out += ")";
      return;
    }
  }
}

class FolParser {
 public:
  explicit FolParser(std::string_view s) : s_(s) {}

  Fol parse() {
    Fol f = formula();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view lit) {
    skip();
    if (s_.substr(i_, lit.size()) == lit) {
      i_ += lit.size();
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) != w) return false;
    std::size_t j = i_ + w.size();
    if (j < s_.size() && ident_char(s_[j])) return false;
    i_ = j;
    return true;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && ident_char(s_[j])) ++j;
    if (j == i_) fail("expected a name");
    std::string out(s_.substr(i_, j - i_));
    i_ = j;
    return out;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, "formula: " + why + " at offset " + std::to_string(i_));
  }

  std::optional<Fol::Kind> quantifier() {
    if (eat("\xE2\x88\x83") || eat_word("exists")) return Fol::Kind::Exists;
    if (eat("\xE2\x88\x80") || eat_word("forall")) return Fol::Kind::Forall;
    return std::nullopt;
  }

  Fol formula() {
    std::size_t save = i_;
    if (auto q = quantifier()) {
      std::string var = ident();
      eat(".");
      return make(*q, var, {formula()});
    }
    i_ = save;
    Fol left = conjunction();
    if (eat("=>") || eat("\xE2\x87\x92")) return make(Fol::Kind::Implies, "", {std::move(left), formula()});
    return left;
  }

  Fol conjunction() {
    Fol left = unary();
    while (eat("&") || eat("\xE2\x88\xA7")) {
      Fol right = unary();
      left = make(Fol::Kind::And, "", {std::move(left), std::move(right)});
    }
    return left;
  }

  Fol unary() {
    skip();
    std::size_t save = i_;
    if (quantifier()) {
      i_ = save;
      return formula();
    }
    if (eat("(")) {
      Fol f = formula();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    std::string name = ident();
    if (eat("(")) {
      Fol f = make(Fol::Kind::Atom, name, {});
      if (!eat(")")) {
        do {
          f.args.push_back(ident());
        } while (eat(","));
        if (!eat(")")) fail("expected ')'");
      }
      return f;
    }
    skip();
    if (s_.substr(i_, 2) != "=>" && eat("=")) {
      Fol f = make(Fol::Kind::Eq, "", {});
      f.args = {name, ident()};
      return f;
    }
    return make(Fol::Kind::Atom, name, {});
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

void flatten_and(const Fol& f, std::vector<Fol>& out) {
  if (f.kind == Fol::Kind::And) {
    for (const auto& k : f.kids) flatten_and(k, out);
  } else {
    out.push_back(f);
  }
}

std::string bound_ref(const std::vector<std::string>& stack, const std::string& name) {
  for (std::size_t i = stack.size(); i-- > 0;) {
    if (stack[i] == name) return "#" + std::to_string(stack.size() - 1 - i);
  }
  return name;
}

std::string key(const Fol& f, std::vector<std::string>& stack) {
  switch (f.kind) {
    case Fol::Kind::Atom:
    case Fol::Kind::Eq: {
      std::string out = f.kind == Fol::Kind::Eq ? "=(" : f.name + "(";
      for (const auto& a : f.args) out += bound_ref(stack, a) + ",";
      return out + ")";
    }
    case Fol::Kind::And:
    case Fol::Kind::Implies: {
      std::string out = f.kind == Fol::Kind::And ? "&(" : "=>(";
      for (const auto& k : f.kids) out += key(k, stack) + ";";
      return out + ")";
    }
    case Fol::Kind::Exists:
    case Fol::Kind::Forall: {
      stack.push_back(f.name);
      std::string out = (f.kind == Fol::Kind::Exists ? "E." : "A.") + key(f.kids[0], stack);
      stack.pop_back();
      return out;
    }
  }
  return "";
}

Fol sorted(const Fol& f, std::vector<std::string>& stack) {
  Fol out = f;
  switch (f.kind) {
    case Fol::Kind::And: {
      std::vector<Fol> parts;
      flatten_and(f, parts);
      std::vector<std::pair<std::string, Fol>> keyed;
      for (const auto& p : parts) {
        Fol s = sorted(p, stack);
        keyed.emplace_back(key(s, stack), std::move(s));
      }
      std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.kids.clear();
      for (auto& [k, s] : keyed) out.kids.push_back(std::move(s));
      return out;
    }
    case Fol::Kind::Implies:
      out.kids = {sorted(f.kids[0], stack), sorted(f.kids[1], stack)};
      return out;
    case Fol::Kind::Exists:
    case Fol::Kind::Forall:
      stack.push_back(f.name);
      out.kids = {sorted(f.kids[0], stack)};
      stack.pop_back();
      return out;
    default: return out;
  }
}

void rename_bound(Fol& f, std::map<std::string, std::vector<std::string>>& env, std::size_t& counter) {
  auto look = [&](std::string& name) {
    auto it = env.find(name);
    if (it != env.end() && !it->second.empty()) name = it->second.back();
  };
  switch (f.kind) {
    case Fol::Kind::Atom:
    case Fol::Kind::Eq:
      for (auto& a : f.args) look(a);
      return;
    case Fol::Kind::Exists:
    case Fol::Kind::Forall: {
      std::string old = f.name;
      f.name = "v" + std::to_string(++counter);
      env[old].push_back(f.name);
      rename_bound(f.kids[0], env, counter);
      env[old].pop_back();
      return;
    }
    default:
      for (auto& k : f.kids) rename_bound(k, env, counter);
  }
}

TermPtr and_chain(std::vector<TermPtr> parts) {
  TermPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Term::conj(out, parts[i]);
  return out;
}

}  // namespace

std::string to_string(const Fol& f, bool unicode) {
  std::string out;
  print_fol(f, 0, unicode, out);
  return out;
}

Fol parse_fol(std::string_view text) { return FolParser(text).parse(); }

Fol normalize(const Fol& f) {
  std::vector<std::string> stack;
  Fol out = sorted(f, stack);
  std::map<std::string, std::vector<std::string>> env;
  std::size_t counter = 0;
  rename_bound(out, env, counter);
  return out;
}

TermPtr from_fol(const Fol& f) {
  TypePtr e = SemType::e();
  switch (f.kind) {
    case Fol::Kind::Atom: {
      TypePtr type = SemType::t();
      for (std::size_t i = 0; i < f.args.size(); ++i) type = SemType::arrow(e, type);
      TermPtr out = Term::constant(f.name, type);
      for (const auto& a : f.args) out = Term::app(out, Term::dref(a, e));
      return out;
    }
    case Fol::Kind::Eq: return Term::eq(Term::dref(f.args[0], e), Term::dref(f.args[1], e));
    case Fol::Kind::And: {
      std::vector<TermPtr> parts;
      for (const auto& k : f.kids) parts.push_back(from_fol(k));
      return and_chain(std::move(parts));
    }
    case Fol::Kind::Implies: return Term::implies(from_fol(f.kids[0]), from_fol(f.kids[1]));
    case Fol::Kind::Exists: {
      std::vector<Ref> refs;
      const Fol* cur = &f;
      while (cur->kind == Fol::Kind::Exists) {
        refs.push_back({cur->name, e});
        cur = &cur->kids[0];
      }
      return Term::box(std::move(refs), from_fol(*cur));
    }
    case Fol::Kind::Forall: {
      std::vector<Ref> refs;
      const Fol* cur = &f;
      while (cur->kind == Fol::Kind::Forall) {
        refs.push_back({cur->name, e});
        cur = &cur->kids[0];
      }
      if (cur->kind != Fol::Kind::Implies) {
        throw Error(ErrorKind::ParseError, "a universal must scope over an implication to form a DRS");
      }
      return Term::implies(Term::box(std::move(refs), from_fol(cur->kids[0])), from_fol(cur->kids[1]));
    }
  }
  return nullptr;
}

TermPtr canonical_drs(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Box: {
      TermPtr body = canonical_drs(t->a());
      if (t->refs().empty()) return body;
      if (body->kind() == TermKind::Box) {
        std::vector<Ref> refs = t->refs();
        refs.insert(refs.end(), body->refs().begin(), body->refs().end());
        return Term::box(std::move(refs), body->a());
      }
      return Term::box(t->refs(), body);
    }
    case TermKind::And:
    case TermKind::Fusion:
    case TermKind::Implies: return Term::rebuild(*t, canonical_drs(t->a()), canonical_drs(t->b()));
    default: return t;
  }
}

// ---------------------------------------------------------------------------
// Box diagrams

namespace {

std::vector<std::string> render(const Term& t);

std::size_t width(const std::vector<std::string>& lines) {
  std::size_t w = 0;
  for (const auto& l : lines) w = std::max(w, l.size());
  return w;
}

void conditions(const Term& t, std::vector<const Term*>& out) {
  if (t.kind() == TermKind::And) {
    conditions(*t.a(), out);
    conditions(*t.b(), out);
  } else {
    out.push_back(&t);
  }
}

std::vector<std::string> render_box(const Term& box) {
  std::vector<std::string> refs;
  for (const auto& r : box.refs()) refs.push_back(r.name);
  std::vector<std::string> body;
  std::vector<const Term*> conds;
  conditions(*box.a(), conds);
  for (const Term* c : conds) {
    auto lines = render(*c);
    body.insert(body.end(), lines.begin(), lines.end());
  }
  std::string head = detail::join(refs, " ");
  std::size_t w = std::max(width(body), head.size());
  std::string rule = "+" + std::string(w + 2, '-') + "+";
  auto row = [&](const std::string& s) { return "| " + s + std::string(w - s.size(), ' ') + " |"; };
  std::vector<std::string> out{rule, row(head), rule};
  for (const auto& l : body) out.push_back(row(l));
  out.push_back(rule);
  return out;
}

std::vector<std::string> side_by_side(const std::vector<std::string>& a, const std::string& mid,
                                      const std::vector<std::string>& b) {
  std::size_t rows = std::max(a.size(), b.size());
  std::size_t wa = width(a);
  std::size_t centre = rows / 2;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rows; ++i) {
    std::string left = i < a.size() ? a[i] : "";
    left += std::string(wa - left.size(), ' ');
    std::string gap = i == centre ? " " + mid + " " : std::string(mid.size() + 2, ' ');
    out.push_back(left + gap + (i < b.size() ? b[i] : ""));
  }
  return out;
}

std::vector<std::string> render(const Term& t) {
  switch (t.kind()) {
    case TermKind::Box: return render_box(t);
    case TermKind::Implies: return side_by_side(render(*t.a()), "==>", render(*t.b()));
    case TermKind::And: {
      std::vector<const Term*> conds;
      conditions(t, conds);
      std::vector<std::string> out;
      for (const Term* c : conds) {
        auto lines = render(*c);
        out.insert(out.end(), lines.begin(), lines.end());
      }
      return out;
    }
    default: return {to_string(t)};
  }
}

}  // namespace

std::vector<std::string> render_boxes(const Term& drs) { return render(drs); }

}  // namespace mgcat::sem
