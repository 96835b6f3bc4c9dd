#include "mgcat/translate.hpp"

#include <algorithm>

#include "mgcat/error.hpp"
#include "text_util.hpp"

namespace mgcat::translate {

using cmg::CFormula;
using cmg::CFormulaPtr;
using cmg::Conn;
using mg::Feature;
using mg::FeatureKind;

LicensorPartition LicensorPartition::from(const Alphabet& alphabet) {
  return {alphabet.base, alphabet.move};
}

namespace {

using Iter = std::vector<Feature>::const_iterator;

// b -l1 ... -lk  ->  lk * (... * (l1 * b))
CFormulaPtr delta(Iter begin, Iter end) {
  CFormulaPtr f = CFormula::atom(begin->name);
  for (Iter it = begin + 1; it != end; ++it) f = CFormula::tensor(CFormula::atom(it->name), f);
  return f;
}

CFormulaPtr beta(Iter begin, Iter end) {
  switch (begin->kind) {
    case FeatureKind::Selector:
    case FeatureKind::Licensor: return CFormula::under(CFormula::atom(begin->name), beta(begin + 1, end));
    case FeatureKind::HeadSelector: return CFormula::under(CFormula::atom(begin->name), beta(begin + 1, end), true);
    case FeatureKind::Base: return delta(begin, end);
    case FeatureKind::Licensee: break;
  }
  throw Error(ErrorKind::RegexViolation, "licensee before the base feature");
}

void delta_prime(const CFormula& f, std::vector<Feature>& out) {
  if (f.conn() == Conn::Tensor) {
    delta_prime(*f.right(), out);
    out.push_back({FeatureKind::Licensee, f.left()->name()});
  } else {
    out.push_back({FeatureKind::Base, f.name()});
  }
}

void beta_prime(const CFormula& f, const LicensorPartition& part, std::vector<Feature>& out) {
  if (f.conn() == Conn::Under) {
    const std::string& name = f.argument()->name();
    bool sel = part.p1.count(name) > 0;
    bool lic = part.p2.count(name) > 0;
    if (sel == lic) {
      throw Error(ErrorKind::UnclassifiedFeature,
                  "'" + name + "' is " + (sel ? "in both p1 and p2" : "neither a base category nor a movement feature"));
    }
    out.push_back({sel ? FeatureKind::Selector : FeatureKind::Licensor, name});
    beta_prime(*f.result(), part, out);
  } else if (f.conn() == Conn::UnderHdr) {
    out.push_back({FeatureKind::HeadSelector, f.argument()->name()});
    beta_prime(*f.result(), part, out);
  } else {
    delta_prime(f, out);
  }
}

}  // namespace

CFormulaPtr to_categorial(const std::vector<Feature>& entry) {
  if (!mg::matches_entry_regex(entry)) {
    throw Error(ErrorKind::RegexViolation, "'" + mg::features_to_string(entry) + "' is not a lexical entry");
  }
  Iter begin = entry.begin();
  Iter end = entry.end();
  switch (begin->kind) {
    case FeatureKind::Selector: return CFormula::over(beta(begin + 1, end), CFormula::atom(begin->name));
    case FeatureKind::HeadSelector: return CFormula::over(beta(begin + 1, end), CFormula::atom(begin->name), true);
    default: return delta(begin, end);
  }
}

CFormulaPtr to_categorial(const mg::FeatureSeq& entry) { return to_categorial(entry.features); }

std::vector<Feature> to_stabler(const CFormula& f, const LicensorPartition& part) {
  cmg::validate_cformula(f);
  std::vector<Feature> out;
  if (f.conn() == Conn::Over || f.conn() == Conn::OverHdr) {
    out.push_back({f.is_hdr() ? FeatureKind::HeadSelector : FeatureKind::Selector, f.argument()->name()});
    beta_prime(*f.result(), part, out);
  } else {
    delta_prime(f, out);
  }
  return out;
}

cmg::CMGLexicon to_categorial(const mg::MGLexicon& lexicon) {
  cmg::CMGLexicon out;
  out.alphabet = lexicon.alphabet;
  out.start = lexicon.start;
  for (const auto& e : lexicon.entries) out.entries.push_back({e.word, e.seq.phon, to_categorial(e.seq)});
  return out;
}

mg::MGLexicon to_stabler(const cmg::CMGLexicon& lexicon, const LicensorPartition& part) {
  mg::MGLexicon out;
  out.alphabet = lexicon.alphabet;
  out.start = lexicon.start;
  for (const auto& e : lexicon.entries) out.entries.push_back({e.word, {to_stabler(*e.formula, part), e.phon}});
  return out;
}

mg::MGLexicon to_stabler(const cmg::CMGLexicon& lexicon) {
  return to_stabler(lexicon, LicensorPartition::from(lexicon.alphabet));
}

std::string EquivalenceReport::to_text() const {
  std::string out;
  for (const auto& s : mg_only) out += "< " + detail::join(s, " ") + "\n";
  for (const auto& s : cmg_only) out += "> " + detail::join(s, " ") + "\n";
  out += equivalent() ? "equivalent" : "different";
  out += ": mg " + std::to_string(mg_strings.size()) + ", cmg " + std::to_string(cmg_strings.size()) +
         " strings of at most " + std::to_string(max_words) + " words\n";
  return out;
}

EquivalenceReport check_equivalence(const mg::MGLexicon& mg_lex, const cmg::CMGLexicon& cmg_lex,
                                    std::size_t max_words, std::size_t step_bound) {
  EquivalenceReport r;
  r.max_words = max_words;
  r.mg_strings = mg::mg_generate(mg_lex, max_words, step_bound);
  std::size_t cmg_bound = step_bound > static_cast<std::size_t>(-1) / 2 ? step_bound : 2 * step_bound;
  r.cmg_strings = cmg::cmg_generate(cmg_lex, max_words, cmg_bound);
  std::set_difference(r.mg_strings.begin(), r.mg_strings.end(), r.cmg_strings.begin(), r.cmg_strings.end(),
                      std::inserter(r.mg_only, r.mg_only.end()));
  std::set_difference(r.cmg_strings.begin(), r.cmg_strings.end(), r.mg_strings.begin(), r.mg_strings.end(),
                      std::inserter(r.cmg_only, r.cmg_only.end()));
  return r;
}

}  // namespace mgcat::translate
