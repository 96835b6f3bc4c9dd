#include "mgcat/cformula.hpp"

#include <cctype>
#include <vector>

#include "mgcat/error.hpp"

namespace mgcat::cmg {

CFormulaPtr CFormula::atom(std::string name) {
  auto f = std::make_shared<CFormula>();
  f->name_ = std::move(name);
  return f;
}

CFormulaPtr CFormula::over(CFormulaPtr result, CFormulaPtr arg, bool hdr) {
  auto f = std::make_shared<CFormula>();
  f->conn_ = hdr ? Conn::OverHdr : Conn::Over;
  f->arg_ = std::move(arg);
  f->res_ = std::move(result);
  return f;
}

CFormulaPtr CFormula::under(CFormulaPtr arg, CFormulaPtr result, bool hdr) {
  auto f = std::make_shared<CFormula>();
  f->conn_ = hdr ? Conn::UnderHdr : Conn::Under;
  f->arg_ = std::move(arg);
  f->res_ = std::move(result);
  return f;
}

CFormulaPtr CFormula::tensor(CFormulaPtr left, CFormulaPtr right) {
  auto f = std::make_shared<CFormula>();
  f->conn_ = Conn::Tensor;
  f->arg_ = std::move(left);
  f->res_ = std::move(right);
  return f;
}

bool CFormula::operator==(const CFormula& other) const {
  if (conn_ != other.conn_) return false;
  if (conn_ == Conn::Atom) return name_ == other.name_;
  return *arg_ == *other.arg_ && *res_ == *other.res_;
}

namespace {

enum class Tok { Name, LParen, RParen, Over, OverHdr, Under, UnderHdr, Tensor, End };

struct Token {
  Tok kind;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")"});
      ++i;
    } else if (c == '/' || c == '\\') {
      bool over = c == '/';
      ++i;
      bool hdr = false;
      if (starts("^")) {
        hdr = true;
        i += 1;
      } else if (starts("\xE2\x86\x91")) {  // ↑
        hdr = true;
        i += 3;
      }
      out.push_back({over ? (hdr ? Tok::OverHdr : Tok::Over) : (hdr ? Tok::UnderHdr : Tok::Under), ""});
    } else if (c == '*') {
      out.push_back({Tok::Tensor, "*"});
      ++i;
    } else if (starts("\xE2\x8A\x97")) {  // ⊗
      out.push_back({Tok::Tensor, "*"});
      i += 3;
    } else if (std::isalnum(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Name, std::string(s.substr(i, j - i))});
      i = j;
    } else {
      throw Error(ErrorKind::ParseError, "unexpected character '" + std::string(1, s[i]) + "' in formula");
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  CFormulaPtr parse() {
    CFormulaPtr f = over();
    if (peek() != Tok::End) throw Error(ErrorKind::ParseError, "trailing input in formula");
    return f;
  }

 private:
  Tok peek() const { return toks_[pos_].kind; }

  CFormulaPtr over() {
    CFormulaPtr left = under();
    while (peek() == Tok::Over || peek() == Tok::OverHdr) {
      bool hdr = peek() == Tok::OverHdr;
      ++pos_;
      CFormulaPtr right = under();
      left = CFormula::over(left, right, hdr);
    }
    return left;
  }

  CFormulaPtr under() {
    CFormulaPtr left = tensor();
    if (peek() == Tok::Under || peek() == Tok::UnderHdr) {
      bool hdr = peek() == Tok::UnderHdr;
      ++pos_;
      CFormulaPtr right = under();
      return CFormula::under(left, right, hdr);
    }
    return left;
  }

  CFormulaPtr tensor() {
    CFormulaPtr left = primary();
    if (peek() == Tok::Tensor) {
      ++pos_;
      return CFormula::tensor(left, tensor());
    }
    return left;
  }

  CFormulaPtr primary() {
    if (peek() == Tok::Name) return CFormula::atom(toks_[pos_++].text);
    if (peek() == Tok::LParen) {
      ++pos_;
      CFormulaPtr f = over();
      if (peek() != Tok::RParen) throw Error(ErrorKind::ParseError, "missing ')' in formula");
      ++pos_;
      return f;
    }
    throw Error(ErrorKind::ParseError, "expected a feature name or '('");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void violation(const CFormula& f, const std::string& why) {
  throw Error(ErrorKind::GrammarViolation, to_string(f) + ": " + why);
}

void check_base(const CFormula& f, const Alphabet& a, const CFormula& whole) {
  if (!f.is_atom()) violation(whole, "expected a base category, found " + to_string(f));
  if (!a.empty() && !a.is_base(f.name())) violation(whole, "'" + f.name() + "' is not a declared base category");
}

void check_move(const CFormula& f, const Alphabet& a, const CFormula& whole) {
  if (!f.is_atom()) violation(whole, "expected a movement feature, found " + to_string(f));
  if (!a.empty() && !a.is_move(f.name())) violation(whole, "'" + f.name() + "' is not a declared movement feature");
}

void check_c(const CFormula& f, const Alphabet& a, const CFormula& whole) {
  if (f.conn() == Conn::Tensor) {
    check_move(*f.left(), a, whole);
    check_c(*f.right(), a, whole);
  } else {
    check_base(f, a, whole);
  }
}

void check_x(const CFormula& f, const Alphabet& a, const CFormula& whole) {
  switch (f.conn()) {
    case Conn::Under:
      if (!f.argument()->is_atom()) violation(whole, "left of \\ must be a feature");
      if (!a.empty() && !a.is_base(f.argument()->name()) && !a.is_move(f.argument()->name())) {
        violation(whole, "'" + f.argument()->name() + "' is not declared");
      }
      check_x(*f.result(), a, whole);
      return;
    case Conn::UnderHdr:
      check_base(*f.argument(), a, whole);
      check_x(*f.result(), a, whole);
      return;
    case Conn::Over:
    case Conn::OverHdr:
      violation(whole, "/ may only occur at the top of a formula");
      return;
    default:
      check_c(f, a, whole);
  }
}

}  // namespace

CFormulaPtr parse_cformula(std::string_view text, const Alphabet& alphabet) {
  CFormulaPtr f = Parser(lex(text)).parse();
  validate_cformula(*f, alphabet);
  return f;
}

CFormulaPtr parse_any_cformula(std::string_view text) { return Parser(lex(text)).parse(); }

void validate_cformula(const CFormula& f, const Alphabet& alphabet) {
  if (f.conn() == Conn::Over || f.conn() == Conn::OverHdr) {
    check_base(*f.argument(), alphabet, f);
    check_x(*f.result(), alphabet, f);
  } else {
    check_c(f, alphabet, f);
  }
}

std::string to_string(const CFormula& f) {
  auto wrap = [](const CFormula& g) { return g.is_atom() ? to_string(g) : "(" + to_string(g) + ")"; };
  switch (f.conn()) {
    case Conn::Atom: return f.name();
    case Conn::Over: return wrap(*f.result()) + " / " + wrap(*f.argument());
    case Conn::OverHdr: return wrap(*f.result()) + " /^ " + wrap(*f.argument());
    case Conn::Under: return wrap(*f.argument()) + " \\ " + wrap(*f.result());
    case Conn::UnderHdr: return wrap(*f.argument()) + " \\^ " + wrap(*f.result());
    case Conn::Tensor: return wrap(*f.left()) + " * " + wrap(*f.right());
  }
  return "?";
}

const std::string& innermost_base(const CFormula& f) {
  const CFormula* cur = &f;
  while (cur->conn() == Conn::Tensor) cur = cur->right().get();
  return cur->name();
}

}  // namespace mgcat::cmg
