#pragma once

// Typed λμ-DRS terms: λ-calculus with μ-binders and named terms, discourse
// referents, boxes [d1 ... dn | K] and the connectives ∧, ∧̄ (fusion), ⇒
// and ≐. Every variable occurrence carries its type.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mgcat/semtype.hpp"

namespace mgcat::sem {

enum class TermKind {
  LamVar,   // λ-bound (or free) variable
  DiscRef,  // discourse referent, dynamically bound by a box
  Const,    // predicate or function constant
  Lam,      // \x. body
  Mu,       // mu a. body, where body : t and a : X -> t
  Name,     // a(term): the μ-variable a applied to a term, of type t
  App,      // (fun arg)
  Box,      // [refs | body]
  And,      // &
  Fusion,   // &&
  Implies,  // =>
  Eq,       // ==
};

struct Ref {
  std::string name;
  TypePtr type;

  bool operator==(const Ref& other) const { return name == other.name && same(type, other.type); }
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  static TermPtr var(std::string name, TypePtr type);
  static TermPtr dref(std::string name, TypePtr type);
  static TermPtr constant(std::string name, TypePtr type);
  static TermPtr lam(std::string var, TypePtr var_type, TermPtr body);
  static TermPtr mu(std::string var, TypePtr var_type, TermPtr body);
  static TermPtr named(std::string var, TypePtr var_type, TermPtr arg);
  static TermPtr app(TermPtr fun, TermPtr arg);
  static TermPtr box(std::vector<Ref> refs, TermPtr body);
  static TermPtr conj(TermPtr a, TermPtr b);
  static TermPtr fusion(TermPtr a, TermPtr b);
  static TermPtr implies(TermPtr a, TermPtr b);
  static TermPtr eq(TermPtr a, TermPtr b);
  // Same kind and payload as `t`, new children.
  static TermPtr rebuild(const Term& t, TermPtr a, TermPtr b);

  TermKind kind() const { return kind_; }
  // Variable, referent or constant name; bound variable for Lam/Mu/Name.
  const std::string& name() const { return name_; }
  // Type of the variable, referent, constant or bound variable.
  const TypePtr& type() const { return type_; }
  const std::vector<Ref>& refs() const { return refs_; }
  // Lam/Mu/Box: body. Name: argument. App: function. Binary: left.
  const TermPtr& a() const { return a_; }
  // App: argument. Binary: right.
  const TermPtr& b() const { return b_; }

  bool is_binary() const;
  bool operator==(const Term& other) const;

 private:
  TermKind kind_ = TermKind::LamVar;
  std::string name_;
  TypePtr type_;
  std::vector<Ref> refs_;
  TermPtr a_;
  TermPtr b_;
};

inline bool same(const TermPtr& a, const TermPtr& b) { return a && b && *a == *b; }

// Throws IllTyped, naming the offending position.
TypePtr typecheck(const Term& t);

std::set<std::string> free_lam_vars(const Term& t);
std::set<std::string> free_mu_vars(const Term& t);
// Referents not bound by an enclosing box (an antecedent box also binds in
// its consequent).
std::set<std::string> free_drefs(const Term& t);
// Every name occurring anywhere, bound or free.
void collect_names(const Term& t, std::set<std::string>& out);

bool has_kind(const Term& t, TermKind kind);

struct PrintOptions {
  bool annotate_binders = false;  // "\x : e -> t. ..."
};

// ASCII rendering that parse_term reads back.
std::string to_string(const Term& t, const PrintOptions& options = {});

struct ParseEnv {
  std::map<std::string, TypePtr> constants;  // predicate signatures
  std::map<std::string, TypePtr> free_vars;  // free λ-variables
};

// Syntax: `\x.` or `λx.` (optionally `\x : type.`), `mu a.` or `μa.`,
// `[d1 d2 | body]`, application by juxtaposition `(f x)` or `f(x, y)`,
// `&`/`∧`, `&&`/`∧̄`, `=>`/`⇒`, `==`/`≐`. `&` and `&&` share one level and
// associate to the left; `=>` is weaker and associates to the right.
// A name resolves to the innermost binder, then a constant, then a free
// variable from the environment, and otherwise denotes a discourse referent.
// Types not fixed by annotations are inferred; leftovers default to e.
TermPtr parse_term(std::string_view text, const ParseEnv& env = {}, const TypePtr& expected = nullptr);

}  // namespace mgcat::sem
