#include "mgcat/semtype.hpp"

#include <cctype>

#include "mgcat/error.hpp"

namespace mgcat::sem {

TypePtr SemType::e() {
  static const TypePtr v = [] {
    auto p = std::make_shared<SemType>();
    p->kind_ = TypeKind::E;
    return p;
  }();
  return v;
}

TypePtr SemType::t() {
  static const TypePtr v = [] {
    auto p = std::make_shared<SemType>();
    p->kind_ = TypeKind::T;
    return p;
  }();
  return v;
}

TypePtr SemType::ev() {
  static const TypePtr v = [] {
    auto p = std::make_shared<SemType>();
    p->kind_ = TypeKind::EV;
    return p;
  }();
  return v;
}

TypePtr SemType::arrow(TypePtr from, TypePtr to) {
  auto p = std::make_shared<SemType>();
  p->kind_ = TypeKind::Arrow;
  p->from_ = std::move(from);
  p->to_ = std::move(to);
  return p;
}

bool SemType::operator==(const SemType& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_) return false;
  if (kind_ != TypeKind::Arrow) return true;
  return *from_ == *other.from_ && *to_ == *other.to_;
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  TypePtr parse() {
    TypePtr t = arrow();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat_arrow() {
    skip();
    if (s_.substr(i_, 2) == "->") {
      i_ += 2;
      return true;
    }
    if (s_.substr(i_, 3) == "\xE2\x86\x92") {
      i_ += 3;
      return true;
    }
    return false;
  }

  TypePtr arrow() {
    TypePtr left = atom();
    if (eat_arrow()) return SemType::arrow(left, arrow());
    return left;
  }

  TypePtr atom() {
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      TypePtr t = arrow();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("missing ')'");
      ++i_;
      return t;
    }
    std::size_t j = i_;
    while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
    std::string_view name = s_.substr(i_, j - i_);
    i_ = j;
    if (name == "e") return SemType::e();
    if (name == "t") return SemType::t();
    if (name == "ev") return SemType::ev();
    fail(name.empty() ? "expected a type" : "unknown type '" + std::string(name) + "'");
    return nullptr;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::ParseError, "type '" + std::string(s_) + "': " + why);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

TypePtr parse_type(std::string_view text) { return TypeParser(text).parse(); }

std::string to_string(const SemType& t) {
  switch (t.kind()) {
    case TypeKind::E: return "e";
    case TypeKind::T: return "t";
    case TypeKind::EV: return "ev";
    case TypeKind::Arrow: {
      std::string from = to_string(*t.from());
      if (t.from()->is_arrow()) from = "(" + from + ")";
      return from + " -> " + to_string(*t.to());
    }
  }
  return "?";
}

HTable HTable::defaults() {
  HTable h;
  TypePtr e = SemType::e();
  TypePtr t = SemType::t();
  TypePtr ev = SemType::ev();
  TypePtr pred_ev = SemType::arrow(ev, t);
  h.base["c"] = t;
  h.base["t"] = pred_ev;
  h.base["v"] = pred_ev;
  h.base["V"] = SemType::arrow(e, pred_ev);
  h.base["d"] = e;
  h.base["n"] = SemType::arrow(e, t);
  return h;
}

TypePtr h_type(const cmg::CFormula& f, const HTable& table, const Alphabet& alphabet) {
  using cmg::Conn;
  switch (f.conn()) {
    case Conn::Atom: {
      auto it = table.base.find(f.name());
      if (it != table.base.end()) return it->second;
      if (alphabet.is_move(f.name())) return SemType::e();
      throw Error(ErrorKind::UnknownBase, "no semantic type declared for category '" + f.name() + "'");
    }
    case Conn::Tensor: {
      const std::string& left = f.left()->name();
      bool movement = f.left()->is_atom() && (alphabet.empty() || alphabet.is_move(left));
      return h_type(movement ? *f.right() : *f.left(), table, alphabet);
    }
    default:
      return SemType::arrow(h_type(*f.argument(), table, alphabet), h_type(*f.result(), table, alphabet));
  }
}

}  // namespace mgcat::sem
