#pragma once

// Montague-style semantic types and the homomorphism from categorial
// formulae to them.

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "mgcat/alphabet.hpp"
#include "mgcat/cformula.hpp"

namespace mgcat::sem {

enum class TypeKind { E, T, EV, Arrow };

class SemType;
using TypePtr = std::shared_ptr<const SemType>;

class SemType {
 public:
  static TypePtr e();
  static TypePtr t();
  static TypePtr ev();
  static TypePtr arrow(TypePtr from, TypePtr to);

  TypeKind kind() const { return kind_; }
  bool is_arrow() const { return kind_ == TypeKind::Arrow; }
  const TypePtr& from() const { return from_; }
  const TypePtr& to() const { return to_; }

  bool operator==(const SemType& other) const;

 private:
  TypeKind kind_ = TypeKind::E;
  TypePtr from_;
  TypePtr to_;
};

inline bool same(const TypePtr& a, const TypePtr& b) { return a && b && *a == *b; }

// "e", "t", "ev", "e -> t"; arrows associate to the right. `→` is accepted.
TypePtr parse_type(std::string_view text);
std::string to_string(const SemType& t);

// Images of base categories. Movement features default to e.
struct HTable {
  std::map<std::string, TypePtr> base;

  static HTable defaults();  // c, t, v, V, d, n
};

// Throws UnknownBase for a base name with no image.
TypePtr h_type(const cmg::CFormula& f, const HTable& table, const Alphabet& alphabet = {});

}  // namespace mgcat::sem
