#include "mgcat/term.hpp"

#include <cctype>
#include <functional>
#include <optional>

#include "mgcat/error.hpp"
#include "text_util.hpp"

namespace mgcat::sem {

#define MGCAT_TERM(kind_v, name_v, type_v, a_v, b_v) \
  auto t = std::make_shared<Term>();                 \
  t->kind_ = (kind_v);                               \
  t->name_ = (name_v);                               \
  t->type_ = (type_v);                               \
  t->a_ = (a_v);                                     \
  t->b_ = (b_v);                                     \
  return t

TermPtr Term::var(std::string name, TypePtr type) { MGCAT_TERM(TermKind::LamVar, std::move(name), std::move(type), nullptr, nullptr); }
TermPtr Term::dref(std::string name, TypePtr type) { MGCAT_TERM(TermKind::DiscRef, std::move(name), std::move(type), nullptr, nullptr); }
TermPtr Term::constant(std::string name, TypePtr type) { MGCAT_TERM(TermKind::Const, std::move(name), std::move(type), nullptr, nullptr); }
TermPtr Term::lam(std::string var, TypePtr var_type, TermPtr body) { MGCAT_TERM(TermKind::Lam, std::move(var), std::move(var_type), std::move(body), nullptr); }
TermPtr Term::mu(std::string var, TypePtr var_type, TermPtr body) { MGCAT_TERM(TermKind::Mu, std::move(var), std::move(var_type), std::move(body), nullptr); }
TermPtr Term::named(std::string var, TypePtr var_type, TermPtr arg) { MGCAT_TERM(TermKind::Name, std::move(var), std::move(var_type), std::move(arg), nullptr); }
TermPtr Term::app(TermPtr fun, TermPtr arg) { MGCAT_TERM(TermKind::App, std::string(), nullptr, std::move(fun), std::move(arg)); }
TermPtr Term::conj(TermPtr a, TermPtr b) { MGCAT_TERM(TermKind::And, std::string(), nullptr, std::move(a), std::move(b)); }
TermPtr Term::fusion(TermPtr a, TermPtr b) { MGCAT_TERM(TermKind::Fusion, std::string(), nullptr, std::move(a), std::move(b)); }
TermPtr Term::implies(TermPtr a, TermPtr b) { MGCAT_TERM(TermKind::Implies, std::string(), nullptr, std::move(a), std::move(b)); }
TermPtr Term::eq(TermPtr a, TermPtr b) { MGCAT_TERM(TermKind::Eq, std::string(), nullptr, std::move(a), std::move(b)); }

#undef MGCAT_TERM

TermPtr Term::box(std::vector<Ref> refs, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind_ = TermKind::Box;
  t->refs_ = std::move(refs);
  t->a_ = std::move(body);
  return t;
}

TermPtr Term::rebuild(const Term& t, TermPtr a, TermPtr b) {
  auto out = std::make_shared<Term>(t);
  out->a_ = std::move(a);
  out->b_ = std::move(b);
  return out;
}

bool Term::is_binary() const {
  switch (kind_) {
    case TermKind::App:
    case TermKind::And:
    case TermKind::Fusion:
    case TermKind::Implies:
    case TermKind::Eq: return true;
    default: return false;
  }
}

bool Term::operator==(const Term& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_ || name_ != other.name_ || refs_ != other.refs_) return false;
  if ((type_ == nullptr) != (other.type_ == nullptr)) return false;
  if (type_ && !(*type_ == *other.type_)) return false;
  auto eq_child = [](const TermPtr& x, const TermPtr& y) { return (!x && !y) || (x && y && *x == *y); };
  return eq_child(a_, other.a_) && eq_child(b_, other.b_);
}

// ---------------------------------------------------------------------------
// Type checking

namespace {

struct Checker {
  std::map<std::string, std::vector<TypePtr>> lam_env;
  std::map<std::string, std::vector<TypePtr>> mu_env;

  [[noreturn]] static void fail(const std::string& path, const std::string& why) {
    throw Error(ErrorKind::IllTyped, (path.empty() ? std::string("<root>") : path) + ": " + why);
  }

  static void expect(const TypePtr& got, const TypePtr& want, const std::string& path, const std::string& what) {
    if (!same(got, want)) fail(path, what + " has type " + to_string(*got) + ", expected " + to_string(*want));
  }

  TypePtr check(const Term& t, const std::string& path) {
    auto sub = [&](const char* step) { return path.empty() ? std::string(step) : path + "." + step; };
    switch (t.kind()) {
      case TermKind::LamVar: {
        if (!t.type()) fail(path, "variable '" + t.name() + "' has no type");
        auto it = lam_env.find(t.name());
        if (it != lam_env.end() && !it->second.empty()) {
          expect(t.type(), it->second.back(), path, "occurrence of '" + t.name() + "'");
        }
        return t.type();
      }
      case TermKind::DiscRef:
        if (!t.type() || (t.type()->kind() != TypeKind::E && t.type()->kind() != TypeKind::EV)) {
          fail(path, "discourse referent '" + t.name() + "' must have type e or ev");
        }
        return t.type();
      case TermKind::Const:
        if (!t.type()) fail(path, "constant '" + t.name() + "' has no type");
        return t.type();
      case TermKind::Lam: {
        lam_env[t.name()].push_back(t.type());
        TypePtr body = check(*t.a(), sub("body"));
        lam_env[t.name()].pop_back();
        return SemType::arrow(t.type(), body);
      }
      case TermKind::Mu: {
        if (!t.type() || !t.type()->is_arrow() || t.type()->to()->kind() != TypeKind::T) {
          fail(path, "mu-variable '" + t.name() + "' must have a type X -> t");
        }
        mu_env[t.name()].push_back(t.type());
        TypePtr body = check(*t.a(), sub("body"));
        mu_env[t.name()].pop_back();
        expect(body, SemType::t(), sub("body"), "the body of a mu-abstraction");
        return t.type()->from();
      }
      case TermKind::Name: {
        if (!t.type() || !t.type()->is_arrow() || t.type()->to()->kind() != TypeKind::T) {
          fail(path, "mu-variable '" + t.name() + "' must have a type X -> t");
        }
        auto it = mu_env.find(t.name());
        if (it != mu_env.end() && !it->second.empty()) {
          expect(t.type(), it->second.back(), path, "mu-variable '" + t.name() + "'");
        }
        TypePtr arg = check(*t.a(), sub("arg"));
        expect(arg, t.type()->from(), sub("arg"), "the named term");
        return SemType::t();
      }
      case TermKind::App: {
        TypePtr fun = check(*t.a(), sub("fun"));
        TypePtr arg = check(*t.b(), sub("arg"));
        if (!fun->is_arrow()) fail(sub("fun"), "applied term has type " + to_string(*fun) + ", not a function type");
        expect(arg, fun->from(), sub("arg"), "the argument");
        return fun->to();
      }
      case TermKind::Box: {
        for (const auto& r : t.refs()) {
          if (!r.type || (r.type->kind() != TypeKind::E && r.type->kind() != TypeKind::EV)) {
            fail(path, "referent '" + r.name + "' must have type e or ev");
          }
        }
        expect(check(*t.a(), sub("body")), SemType::t(), sub("body"), "a box body");
        return SemType::t();
      }
      case TermKind::And:
      case TermKind::Fusion:
      case TermKind::Implies:
        expect(check(*t.a(), sub("left")), SemType::t(), sub("left"), "the left operand");
        expect(check(*t.b(), sub("right")), SemType::t(), sub("right"), "the right operand");
        return SemType::t();
      case TermKind::Eq:
        expect(check(*t.a(), sub("left")), SemType::e(), sub("left"), "the left operand of ==");
        expect(check(*t.b(), sub("right")), SemType::e(), sub("right"), "the right operand of ==");
        return SemType::t();
    }
    fail(path, "unknown term");
  }
};

}  // namespace

TypePtr typecheck(const Term& t) {
  Checker c;
  return c.check(t, "");
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void free_lam(const Term& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::LamVar:
      if (bound.count(t.name()) == 0) out.insert(t.name());
      return;
    case TermKind::Lam: {
      auto it = bound.insert(t.name());
      free_lam(*t.a(), bound, out);
      bound.erase(it);
      return;
    }
    default:
      if (t.a()) free_lam(*t.a(), bound, out);
      if (t.b()) free_lam(*t.b(), bound, out);
  }
}

void free_mu(const Term& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
  if (t.kind() == TermKind::Name && bound.count(t.name()) == 0) out.insert(t.name());
  if (t.kind() == TermKind::Mu) {
    auto it = bound.insert(t.name());
    free_mu(*t.a(), bound, out);
    bound.erase(it);
    return;
  }
  if (t.a()) free_mu(*t.a(), bound, out);
  if (t.b()) free_mu(*t.b(), bound, out);
}

void free_dref(const Term& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::DiscRef:
      if (bound.count(t.name()) == 0) out.insert(t.name());
      return;
    case TermKind::Box: {
      std::vector<std::multiset<std::string>::iterator> added;
      for (const auto& r : t.refs()) added.push_back(bound.insert(r.name));
      free_dref(*t.a(), bound, out);
      for (auto it : added) bound.erase(it);
      return;
    }
    case TermKind::Implies:
      if (t.a()->kind() == TermKind::Box) {
        std::vector<std::multiset<std::string>::iterator> added;
        for (const auto& r : t.a()->refs()) added.push_back(bound.insert(r.name));
        free_dref(*t.a()->a(), bound, out);
        free_dref(*t.b(), bound, out);
        for (auto it : added) bound.erase(it);
        return;
      }
      [[fallthrough]];
    default:
      if (t.a()) free_dref(*t.a(), bound, out);
      if (t.b()) free_dref(*t.b(), bound, out);
  }
}

}  // namespace

std::set<std::string> free_lam_vars(const Term& t) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  free_lam(t, bound, out);
  return out;
}

std::set<std::string> free_mu_vars(const Term& t) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  free_mu(t, bound, out);
  return out;
}

std::set<std::string> free_drefs(const Term& t) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  free_dref(t, bound, out);
  return out;
}

void collect_names(const Term& t, std::set<std::string>& out) {
  if (!t.name().empty()) out.insert(t.name());
  for (const auto& r : t.refs()) out.insert(r.name);
  if (t.a()) collect_names(*t.a(), out);
  if (t.b()) collect_names(*t.b(), out);
}

bool has_kind(const Term& t, TermKind kind) {
  if (t.kind() == kind) return true;
  return (t.a() && has_kind(*t.a(), kind)) || (t.b() && has_kind(*t.b(), kind));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// 0: binders and =>, 1: & and &&, 2: ==, 3: application, 4: atoms.
void print(const Term& t, int ctx, const PrintOptions& opt, std::string& out) {
  auto open = [&](int level) {
    bool wrap = ctx > level;
    if (wrap) out += "(";
    return wrap;
  };
  auto close = [&](bool wrap) {
    if (wrap) out += ")";
  };
  switch (t.kind()) {
    case TermKind::LamVar:
    case TermKind::DiscRef:
    case TermKind::Const: out += t.name(); return;
    case TermKind::Lam:
    case TermKind::Mu: {
      bool w = open(0);
      out += t.kind() == TermKind::Lam ? "\\" : "mu ";
      out += t.name();
      if (opt.annotate_binders) out += " : " + to_string(*t.type());
      out += ". ";
      print(*t.a(), 0, opt, out);
      close(w);
      return;
    }
    case TermKind::Name:
      out += t.name() + "(";
      print(*t.a(), 0, opt, out);
      out += ")";
      return;
    case TermKind::App: {
      std::vector<const Term*> args;
      const Term* head = &t;
      while (head->kind() == TermKind::App) {
        args.push_back(head->b().get());
        head = head->a().get();
      }
      print(*head, 4, opt, out);
      out += "(";
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        if (it != args.rbegin()) out += ", ";
        print(**it, 0, opt, out);
      }
      out += ")";
      return;
    }
    case TermKind::Box: {
      out += "[";
      for (std::size_t i = 0; i < t.refs().size(); ++i) {
        if (i > 0) out += " ";
        out += t.refs()[i].name;
      }
      out += t.refs().empty() ? "| " : " | ";
      print(*t.a(), 0, opt, out);
      out += "]";
      return;
    }
    case TermKind::Implies: {
      bool w = open(0);
      print(*t.a(), 1, opt, out);
      out += " => ";
      print(*t.b(), 0, opt, out);
      close(w);
      return;
    }
    case TermKind::And:
    case TermKind::Fusion: {
      bool w = open(1);
      print(*t.a(), 1, opt, out);
      out += t.kind() == TermKind::And ? " & " : " && ";
      print(*t.b(), 2, opt, out);
      close(w);
      return;
    }
    case TermKind::Eq: {
      bool w = open(2);
      print(*t.a(), 3, opt, out);
      out += " == ";
      print(*t.b(), 3, opt, out);
      close(w);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Term& t, const PrintOptions& options) {
  std::string out;
  print(t, 0, options, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Lambda, Mu, Dot, LBrack, RBrack, Bar, LParen, RParen, Comma, And, Fusion, Implies, Eq, Colon, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  auto push = [&](Tok k, std::size_t len, std::string text = "") {
    out.push_back({k, std::move(text), i});
    i += len;
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (starts("\xE2\x88\xA7\xCC\x84")) {  // ∧̄
      push(Tok::Fusion, 5);
    } else if (starts("\xE2\x88\xA7")) {  // ∧
      push(Tok::And, 3);
    } else if (starts("&&")) {
      push(Tok::Fusion, 2);
    } else if (c == '&') {
      push(Tok::And, 1);
    } else if (starts("=>")) {
      push(Tok::Implies, 2);
    } else if (starts("\xE2\x87\x92")) {  // ⇒
      push(Tok::Implies, 3);
    } else if (starts("==")) {
      push(Tok::Eq, 2);
    } else if (starts("\xE2\x89\x90")) {  // ≐
      push(Tok::Eq, 3);
    } else if (starts("->")) {
      push(Tok::Arrow, 2);
    } else if (starts("\xE2\x86\x92")) {  // →
      push(Tok::Arrow, 3);
    } else if (c == '\\') {
      push(Tok::Lambda, 1);
    } else if (starts("\xCE\xBB")) {  // λ
      push(Tok::Lambda, 2);
    } else if (starts("\xCE\xBC")) {  // μ
      push(Tok::Mu, 2);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (c == '[') {
      push(Tok::LBrack, 1);
    } else if (c == ']') {
      push(Tok::RBrack, 1);
    } else if (c == '|') {
      push(Tok::Bar, 1);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == ',') {
      push(Tok::Comma, 1);
    } else if (c == ':') {
      push(Tok::Colon, 1);
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
      std::string word(s.substr(i, j - i));
      if (word == "mu") {
        push(Tok::Mu, j - i);
      } else {
        push(Tok::Ident, j - i, word);
      }
    } else {
      throw Error(ErrorKind::ParseError, "unexpected character '" + std::string(1, s[i]) + "' at offset " + std::to_string(i));
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// Untyped syntax tree.
enum class PKind { Ident, Lam, Mu, App, Box, And, Fusion, Implies, Eq };

struct PNode;
using PNodePtr = std::shared_ptr<PNode>;

struct PNode {
  PKind kind;
  std::string name;
  TypePtr annot;
  std::vector<std::string> refs;
  PNodePtr a;
  PNodePtr b;
  std::size_t pos = 0;
};

class SyntaxParser {
 public:
  explicit SyntaxParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  PNodePtr parse() {
    PNodePtr n = expr();
    if (peek() != Tok::End) fail("unexpected input");
    return n;
  }

 private:
  Tok peek() const { return toks_[pos_].kind; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, why + " at offset " + std::to_string(toks_[pos_].pos));
  }

  void expect(Tok k, const char* what) {
    if (peek() != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  static PNodePtr node(PKind k, PNodePtr a, PNodePtr b, std::size_t pos) {
    auto n = std::make_shared<PNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    n->pos = pos;
    return n;
  }

  PNodePtr expr() {
    if (peek() == Tok::Lambda || peek() == Tok::Mu) return binder();
    return implication();
  }

  PNodePtr binder() {
    std::size_t at = toks_[pos_].pos;
    PKind k = take().kind == Tok::Lambda ? PKind::Lam : PKind::Mu;
    if (peek() != Tok::Ident) fail("expected a variable after the binder");
    auto n = node(k, nullptr, nullptr, at);
    n->name = take().text;
    if (peek() == Tok::Colon) {
      ++pos_;
      n->annot = type_expr();
    }
    expect(Tok::Dot, "'.'");
    n->a = expr();
    return n;
  }

  TypePtr type_expr() {
    TypePtr left = type_atom();
    if (peek() == Tok::Arrow) {
      ++pos_;
      return SemType::arrow(left, type_expr());
    }
    return left;
  }

  TypePtr type_atom() {
    if (peek() == Tok::LParen) {
      ++pos_;
      TypePtr t = type_expr();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (peek() != Tok::Ident) fail("expected a type");
    const std::string& name = take().text;
    if (name == "e") return SemType::e();
    if (name == "t") return SemType::t();
    if (name == "ev") return SemType::ev();
    --pos_;
    fail("unknown type '" + name + "'");
  }

  PNodePtr implication() {
    PNodePtr left = conjunction();
    if (peek() == Tok::Implies) {
      std::size_t at = take().pos;
      return node(PKind::Implies, left, expr(), at);
    }
    return left;
  }

  PNodePtr conjunction() {
    PNodePtr left = equality();
    while (peek() == Tok::And || peek() == Tok::Fusion) {
      const Token& op = take();
      PNodePtr right = (peek() == Tok::Lambda || peek() == Tok::Mu) ? binder() : equality();
      left = node(op.kind == Tok::And ? PKind::And : PKind::Fusion, left, right, op.pos);
    }
    return left;
  }

  PNodePtr equality() {
    PNodePtr left = application();
    if (peek() == Tok::Eq) {
      std::size_t at = take().pos;
      return node(PKind::Eq, left, application(), at);
    }
    return left;
  }

  PNodePtr application() {
    PNodePtr head = primary();
    while (true) {
      Tok k = peek();
      if (k == Tok::LParen) {
        std::size_t at = take().pos;
        std::vector<PNodePtr> args{expr()};
        while (peek() == Tok::Comma) {
          ++pos_;
          args.push_back(expr());
        }
        expect(Tok::RParen, "')'");
        for (auto& arg : args) head = node(PKind::App, head, arg, at);
      } else if (k == Tok::Ident || k == Tok::LBrack) {
        std::size_t at = toks_[pos_].pos;
        head = node(PKind::App, head, primary(), at);
      } else if (k == Tok::Lambda || k == Tok::Mu) {
        std::size_t at = toks_[pos_].pos;
        return node(PKind::App, head, binder(), at);
      } else {
        return head;
      }
    }
  }

  PNodePtr primary() {
    const Token& t = toks_[pos_];
    if (t.kind == Tok::Ident) {
      ++pos_;
      auto n = node(PKind::Ident, nullptr, nullptr, t.pos);
      n->name = t.text;
      return n;
    }
    if (t.kind == Tok::LParen) {
      ++pos_;
      PNodePtr n = expr();
      expect(Tok::RParen, "')'");
      return n;
    }
    if (t.kind == Tok::LBrack) {
      ++pos_;
      auto n = node(PKind::Box, nullptr, nullptr, t.pos);
      while (peek() == Tok::Ident) n->refs.push_back(take().text);
      expect(Tok::Bar, "'|' in box");
      n->a = expr();
      expect(Tok::RBrack, "']'");
      return n;
    }
    fail("expected a term");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Inference types with unification variables.
struct IType;
using ITypePtr = std::shared_ptr<IType>;

struct IType {
  enum Kind { E, T, EV, Arrow, Var } kind = Var;
  ITypePtr from;
  ITypePtr to;
  ITypePtr link;  // Var bound to another type
};

class Inference {
 public:
  ITypePtr fresh() { return std::make_shared<IType>(); }

  ITypePtr from_type(const SemType& t) {
    auto i = std::make_shared<IType>();
    switch (t.kind()) {
      case TypeKind::E: i->kind = IType::E; break;
      case TypeKind::T: i->kind = IType::T; break;
      case TypeKind::EV: i->kind = IType::EV; break;
      case TypeKind::Arrow:
        i->kind = IType::Arrow;
        i->from = from_type(*t.from());
        i->to = from_type(*t.to());
        break;
    }
    return i;
  }

  ITypePtr arrow(ITypePtr a, ITypePtr b) {
    auto i = std::make_shared<IType>();
    i->kind = IType::Arrow;
    i->from = std::move(a);
    i->to = std::move(b);
    return i;
  }

  ITypePtr atom(IType::Kind k) {
    auto i = std::make_shared<IType>();
    i->kind = k;
    return i;
  }

  static ITypePtr find(ITypePtr t) {
    while (t->kind == IType::Var && t->link) t = t->link;
    return t;
  }

  static bool occurs(const ITypePtr& v, ITypePtr t) {
    t = find(t);
    if (t == v) return true;
    return t->kind == IType::Arrow && (occurs(v, t->from) || occurs(v, t->to));
  }

  bool unify(ITypePtr a, ITypePtr b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    if (a->kind == IType::Var) {
      if (occurs(a, b)) return false;
      a->link = b;
      return true;
    }
    if (b->kind == IType::Var) return unify(b, a);
    if (a->kind != b->kind) return false;
    if (a->kind != IType::Arrow) return true;
    return unify(a->from, b->from) && unify(a->to, b->to);
  }

  // Unbound variables default to e.
  static TypePtr resolve(ITypePtr t) {
    t = find(t);
    switch (t->kind) {
      case IType::E:
      case IType::Var: return SemType::e();
      case IType::T: return SemType::t();
      case IType::EV: return SemType::ev();
      case IType::Arrow: return SemType::arrow(resolve(t->from), resolve(t->to));
    }
    return SemType::e();
  }

  static std::string show(ITypePtr t) {
    t = find(t);
    switch (t->kind) {
      case IType::E: return "e";
      case IType::T: return "t";
      case IType::EV: return "ev";
      case IType::Var: return "?";
      case IType::Arrow: {
        std::string f = show(t->from);
        if (find(t->from)->kind == IType::Arrow) f = "(" + f + ")";
        return f + " -> " + show(t->to);
      }
    }
    return "?";
  }
};

// Typed tree built during resolution, before types are final.
enum class BKind { LamVar, DiscRef, Const, Lam, Mu, Name, App, Box, And, Fusion, Implies, Eq };

struct BNode;
using BNodePtr = std::shared_ptr<BNode>;

struct BNode {
  BKind kind;
  std::string name;
  ITypePtr type;  // variable/constant type, or the bound variable's type
  std::vector<std::pair<std::string, ITypePtr>> refs;
  BNodePtr a;
  BNodePtr b;
};

class Resolver {
 public:
  explicit Resolver(const ParseEnv& env) : env_(env) {}

  BNodePtr build(const PNode& p, ITypePtr& type) { return visit(p, type); }

  TermPtr finish(const BNode& n) const {
    switch (n.kind) {
      case BKind::LamVar: return Term::var(n.name, Inference::resolve(n.type));
      case BKind::DiscRef: return Term::dref(n.name, Inference::resolve(n.type));
      case BKind::Const: return Term::constant(n.name, Inference::resolve(n.type));
      case BKind::Lam: return Term::lam(n.name, Inference::resolve(n.type), finish(*n.a));
      case BKind::Mu: return Term::mu(n.name, Inference::resolve(n.type), finish(*n.a));
      case BKind::Name: return Term::named(n.name, Inference::resolve(n.type), finish(*n.a));
      case BKind::App: return Term::app(finish(*n.a), finish(*n.b));
      case BKind::Box: {
        std::vector<Ref> refs;
        for (const auto& [name, ty] : n.refs) refs.push_back({name, Inference::resolve(ty)});
        return Term::box(std::move(refs), finish(*n.a));
      }
      case BKind::And: return Term::conj(finish(*n.a), finish(*n.b));
      case BKind::Fusion: return Term::fusion(finish(*n.a), finish(*n.b));
      case BKind::Implies: return Term::implies(finish(*n.a), finish(*n.b));
      case BKind::Eq: return Term::eq(finish(*n.a), finish(*n.b));
    }
    return nullptr;
  }

  Inference inf;

 private:
  enum class Binding { Lam, Mu, Ref };

  struct Scope {
    std::string name;
    Binding binding;
    ITypePtr type;
  };

  [[noreturn]] static void fail(const PNode& p, const std::string& why) {
    throw Error(ErrorKind::IllTyped, why + " at offset " + std::to_string(p.pos));
  }

  void unify(const PNode& p, const ITypePtr& a, const ITypePtr& b, const std::string& what) {
    if (!inf.unify(a, b)) {
      fail(p, what + ": cannot match " + Inference::show(a) + " with " + Inference::show(b));
    }
  }

  const Scope* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    return nullptr;
  }

  ITypePtr dref_type(const std::string& name) {
    auto it = drefs_.find(name);
    if (it != drefs_.end()) return it->second;
    return drefs_[name] = inf.fresh();
  }

  static BNodePtr make(BKind k, std::string name = {}, ITypePtr type = nullptr) {
    auto n = std::make_shared<BNode>();
    n->kind = k;
    n->name = std::move(name);
    n->type = std::move(type);
    return n;
  }

  BNodePtr ident(const PNode& p, ITypePtr& type) {
    if (const Scope* s = lookup(p.name)) {
      if (s->binding == Binding::Mu) fail(p, "mu-variable '" + p.name + "' may only be applied to a term");
      type = s->type;
      return make(s->binding == Binding::Lam ? BKind::LamVar : BKind::DiscRef, p.name, s->type);
    }
    if (auto c = env_.constants.find(p.name); c != env_.constants.end()) {
      type = inf.from_type(*c->second);
      return make(BKind::Const, p.name, type);
    }
    if (auto v = env_.free_vars.find(p.name); v != env_.free_vars.end()) {
      type = inf.from_type(*v->second);
      return make(BKind::LamVar, p.name, type);
    }
    type = dref_type(p.name);
    return make(BKind::DiscRef, p.name, type);
  }

  void push_refs(const std::vector<std::string>& refs, std::vector<std::pair<std::string, ITypePtr>>& out) {
    for (const auto& r : refs) {
      ITypePtr t = dref_type(r);
      scope_.push_back({r, Binding::Ref, t});
      out.emplace_back(r, t);
    }
  }

  BNodePtr visit(const PNode& p, ITypePtr& type) {
    switch (p.kind) {
      case PKind::Ident: return ident(p, type);
      case PKind::Lam: {
        ITypePtr var = p.annot ? inf.from_type(*p.annot) : inf.fresh();
        scope_.push_back({p.name, Binding::Lam, var});
        ITypePtr body_t;
        BNodePtr body = visit(*p.a, body_t);
        scope_.pop_back();
        auto n = make(BKind::Lam, p.name, var);
        n->a = body;
        type = inf.arrow(var, body_t);
        return n;
      }
      case PKind::Mu: {
        ITypePtr x = inf.fresh();
        ITypePtr var = inf.arrow(x, inf.atom(IType::T));
        if (p.annot) unify(p, var, inf.from_type(*p.annot), "mu-variable annotation");
        scope_.push_back({p.name, Binding::Mu, var});
        ITypePtr body_t;
        BNodePtr body = visit(*p.a, body_t);
        scope_.pop_back();
        unify(*p.a, body_t, inf.atom(IType::T), "body of mu-abstraction");
        auto n = make(BKind::Mu, p.name, var);
        n->a = body;
        type = x;
        return n;
      }
      case PKind::App: {
        if (p.a->kind == PKind::Ident) {
          const Scope* s = lookup(p.a->name);
          if (s && s->binding == Binding::Mu) {
            ITypePtr var = s->type;
            ITypePtr arg_t;
            BNodePtr arg = visit(*p.b, arg_t);
            unify(p, var, inf.arrow(arg_t, inf.atom(IType::T)), "named term");
            auto n = make(BKind::Name, p.a->name, var);
            n->a = arg;
            type = inf.atom(IType::T);
            return n;
          }
        }
        ITypePtr fun_t;
        ITypePtr arg_t;
        BNodePtr fun = visit(*p.a, fun_t);
        BNodePtr arg = visit(*p.b, arg_t);
        ITypePtr res = inf.fresh();
        unify(p, fun_t, inf.arrow(arg_t, res), "application");
        auto n = make(BKind::App);
        n->a = fun;
        n->b = arg;
        type = res;
        return n;
      }
      case PKind::Box: {
        auto n = make(BKind::Box);
        std::size_t mark = scope_.size();
        push_refs(p.refs, n->refs);
        ITypePtr body_t;
        n->a = visit(*p.a, body_t);
        scope_.resize(mark);
        unify(*p.a, body_t, inf.atom(IType::T), "box body");
        type = inf.atom(IType::T);
        return n;
      }
      case PKind::Implies: {
        auto n = make(BKind::Implies);
        ITypePtr at;
        ITypePtr bt;
        std::size_t mark = scope_.size();
        n->a = visit(*p.a, at);
        // The antecedent's referents stay accessible in the consequent.
        if (p.a->kind == PKind::Box) {
          for (const auto& r : p.a->refs) scope_.push_back({r, Binding::Ref, dref_type(r)});
        }
        n->b = visit(*p.b, bt);
        scope_.resize(mark);
        unify(*p.a, at, inf.atom(IType::T), "antecedent");
        unify(*p.b, bt, inf.atom(IType::T), "consequent");
        type = inf.atom(IType::T);
        return n;
      }
      case PKind::And:
      case PKind::Fusion:
      case PKind::Eq: {
        BKind k = p.kind == PKind::And ? BKind::And : p.kind == PKind::Fusion ? BKind::Fusion : BKind::Eq;
        auto n = make(k);
        ITypePtr at;
        ITypePtr bt;
        n->a = visit(*p.a, at);
        n->b = visit(*p.b, bt);
        ITypePtr operand = k == BKind::Eq ? inf.atom(IType::E) : inf.atom(IType::T);
        unify(*p.a, at, operand, "left operand");
        unify(*p.b, bt, operand, "right operand");
        type = inf.atom(IType::T);
        return n;
      }
    }
    fail(p, "unknown syntax");
  }

  const ParseEnv& env_;
  std::vector<Scope> scope_;
  std::map<std::string, ITypePtr> drefs_;
};

}  // namespace

TermPtr parse_term(std::string_view text, const ParseEnv& env, const TypePtr& expected) {
  PNodePtr syntax = SyntaxParser(tokenize(text)).parse();
  Resolver r(env);
  ITypePtr type;
  BNodePtr built = r.build(*syntax, type);
  if (expected && !r.inf.unify(type, r.inf.from_type(*expected))) {
    throw Error(ErrorKind::IllTyped, "term has type " + Inference::show(type) + ", expected " + to_string(*expected));
  }
  TermPtr t = r.finish(*built);
  typecheck(*t);
  return t;
}

}  // namespace mgcat::sem
