#include "mgcat/cmg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

#include "mgcat/error.hpp"
#include "mgcat/mg.hpp"
#include "text_util.hpp"

namespace mgcat::cmg {

SymbolString Label::flatten() const {
  SymbolString out = spec;
  out.insert(out.end(), head.begin(), head.end());
  out.insert(out.end(), comp.begin(), comp.end());
  return out;
}

std::string_view to_string(CMGRule rule) {
  switch (rule) {
    case CMGRule::Lex: return "lex";
    case CMGRule::Axiom: return "axiom";
    case CMGRule::Mg: return "mg";
    case CMGRule::MgHdr: return "hdr";
    case CMGRule::Mv: return "mv";
  }
  return "?";
}

namespace {

SymbolString cat(SymbolString a, const SymbolString& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::string> label_vars(const Label& l) {
  std::vector<std::string> out;
  for (const auto* part : {&l.spec, &l.head, &l.comp}) {
    for (const auto& s : *part) {
      if (s.is_var) out.push_back(s.text);
    }
  }
  return out;
}

std::vector<std::string> context_vars(const std::vector<Hypothesis>& ctx) {
  std::vector<std::string> out;
  out.reserve(ctx.size());
  for (const auto& h : ctx) out.push_back(h.var);
  return out;
}

void check_disjoint(const LSequent& a, const LSequent& b) {
  for (const auto& h : a.context) {
    for (const auto& g : b.context) {
      if (h.var == g.var) throw Error(ErrorKind::VariableCollision, "hypothesis '" + h.var + "' occurs in both premises");
    }
  }
}

CMGDerivationPtr binary(CMGRule rule, const CMGDerivationPtr& major, const CMGDerivationPtr& minor) {
  const LSequent& r = major->conclusion;
  const LSequent& s = minor->conclusion;
  const CFormula& f = *r.formula;
  const bool hdr = rule == CMGRule::MgHdr;
  if (!f.is_implication() || f.is_hdr() != hdr) {
    throw Error(ErrorKind::TypeClash, "rule " + std::string(to_string(rule)) + " does not apply to " + to_string(f));
  }
  if (!same(f.argument(), s.formula)) {
    throw Error(ErrorKind::TypeClash, "argument " + to_string(*s.formula) + " does not match " + to_string(f));
  }
  check_disjoint(r, s);

  auto d = std::make_shared<CMGDerivation>();
  d->rule = rule;
  d->premises = {major, minor};
  LSequent& out = d->conclusion;
  out.context = r.context;
  out.context.insert(out.context.end(), s.context.begin(), s.context.end());
  out.formula = f.result();
  const Label& a = r.label;
  const Label& b = s.label;
  const bool over = f.conn() == Conn::Over || f.conn() == Conn::OverHdr;
  if (!hdr) {
    out.label = over ? Label{a.spec, a.head, cat(a.comp, b.flatten())} : Label{cat(b.flatten(), a.spec), a.head, a.comp};
  } else {
    SymbolString head = cat(a.head, b.head);
    SymbolString rest = cat(b.spec, b.comp);
    out.label = over ? Label{a.spec, head, cat(a.comp, rest)} : Label{cat(rest, a.spec), head, a.comp};
  }
  check_label_discipline(out);
  return d;
}

SymbolString substitute(const SymbolString& s, const std::string& x, const SymbolString& with, const std::string& y) {
  SymbolString out;
  for (const auto& sym : s) {
    if (sym.is_var && sym.text == x) {
      out.insert(out.end(), with.begin(), with.end());
    } else if (sym.is_var && sym.text == y) {
      continue;
    } else {
      out.push_back(sym);
    }
  }
  return out;
}

}  // namespace

CMGDerivationPtr lex_axiom(const CMGLexicon& lexicon, std::string_view word, const CFormulaPtr& f) {
  for (std::size_t i = 0; i < lexicon.entries.size(); ++i) {
    const CMGEntry& e = lexicon.entries[i];
    bool word_ok = e.word == word || (word == "_" && mg::is_empty_word(e.word));
    if (!word_ok || !same(e.formula, f)) continue;
    auto d = std::make_shared<CMGDerivation>();
    d->rule = CMGRule::Lex;
    d->word = e.word;
    d->entry = i;
    d->conclusion.formula = e.formula;
    for (const auto& w : e.phon) d->conclusion.label.head.push_back({w, false});
    return d;
  }
  throw Error(ErrorKind::NotInLexicon, "(" + std::string(word) + ", " + (f ? to_string(*f) : "?") + ") is not in the lexicon");
}

CMGDerivationPtr var_axiom(std::string var, CFormulaPtr f) {
  auto d = std::make_shared<CMGDerivation>();
  d->rule = CMGRule::Axiom;
  d->var = var;
  d->conclusion.context.push_back({var, f});
  d->conclusion.label.head.push_back({std::move(var), true});
  d->conclusion.formula = std::move(f);
  return d;
}

CMGDerivationPtr rule_mg(const CMGDerivationPtr& major, const CMGDerivationPtr& minor) {
  return binary(CMGRule::Mg, major, minor);
}

CMGDerivationPtr rule_hdr(const CMGDerivationPtr& major, const CMGDerivationPtr& minor) {
  return binary(CMGRule::MgHdr, major, minor);
}

CMGDerivationPtr rule_mv(const CMGDerivationPtr& tensor_prem, const CMGDerivationPtr& body_prem, const std::string& x,
                         const std::string& y) {
  const LSequent& t = tensor_prem->conclusion;
  const LSequent& b = body_prem->conclusion;
  if (t.formula->conn() != Conn::Tensor) {
    throw Error(ErrorKind::TypeClash, "tensor elimination needs a tensor, found " + to_string(*t.formula));
  }
  if (x == y) throw Error(ErrorKind::VariableCollision, "tensor elimination needs two distinct hypotheses");
  auto find = [&](const std::string& v) {
    auto it = std::find_if(b.context.begin(), b.context.end(), [&](const Hypothesis& h) { return h.var == v; });
    if (it == b.context.end()) throw Error(ErrorKind::MissingHypotheses, "hypothesis '" + v + "' is not in the context");
    return it;
  };
  auto hx = find(x);
  auto hy = find(y);
  if (!same(hx->formula, t.formula->left()) || !same(hy->formula, t.formula->right())) {
    throw Error(ErrorKind::TypeClash, "hypotheses " + x + " : " + to_string(*hx->formula) + " and " + y + " : " +
                                          to_string(*hy->formula) + " do not match " + to_string(*t.formula));
  }
  check_disjoint(t, b);

  auto d = std::make_shared<CMGDerivation>();
  d->rule = CMGRule::Mv;
  d->premises = {tensor_prem, body_prem};
  d->var = x;
  d->var2 = y;
  LSequent& out = d->conclusion;
  for (const auto& h : b.context) {
    if (h.var != x && h.var != y) out.context.push_back(h);
  }
  out.context.insert(out.context.end(), t.context.begin(), t.context.end());
  out.formula = b.formula;
  const SymbolString moved = t.label.flatten();
  out.label = {substitute(b.label.spec, x, moved, y), substitute(b.label.head, x, moved, y),
               substitute(b.label.comp, x, moved, y)};
  check_label_discipline(out);
  return d;
}

void check_label_discipline(const LSequent& s) {
  auto lv = label_vars(s.label);
  auto cv = context_vars(s.context);
  std::sort(lv.begin(), lv.end());
  std::sort(cv.begin(), cv.end());
  if (lv != cv) {
    throw Error(ErrorKind::MissingHypotheses,
                "label variables {" + detail::join(lv, ",") + "} differ from context {" + detail::join(cv, ",") + "}");
  }
}

std::size_t rule_count(const CMGDerivation& d) {
  std::size_t n = (d.rule == CMGRule::Lex || d.rule == CMGRule::Axiom) ? 0 : 1;
  for (const auto& p : d.premises) n += rule_count(*p);
  return n;
}

std::vector<std::string> yield(const Label& label) {
  std::vector<std::string> out;
  for (const auto& s : label.flatten()) {
    if (s.is_var) throw Error(ErrorKind::MissingHypotheses, "label still contains variable '" + s.text + "'");
    out.push_back(s.text);
  }
  return out;
}

std::string to_string(const SymbolString& s) {
  if (s.empty()) return "_";
  std::vector<std::string> parts;
  for (const auto& sym : s) parts.push_back(sym.text);
  return detail::join(parts, " ");
}

std::string to_string(const Label& label) {
  return "(" + to_string(label.spec) + " | " + to_string(label.head) + " | " + to_string(label.comp) + ")";
}

std::string to_string(const LSequent& s) {
  std::vector<std::string> hyps;
  for (const auto& h : s.context) hyps.push_back(h.var + " : " + to_string(*h.formula));
  std::string ctx = detail::join(hyps, ", ");
  return (ctx.empty() ? "" : ctx + " ") + "|- " + to_string(s.label) + " : " + to_string(*s.formula);
}

namespace {

void render_into(const CMGDerivation& d, std::size_t depth, std::string& out) {
  out.append(depth * 2, ' ');
  out += "[" + std::string(to_string(d.rule));
  if (d.rule == CMGRule::Lex) out += " " + d.word;
  if (d.rule == CMGRule::Mv) out += " " + d.var + "," + d.var2;
  out += "] " + to_string(d.conclusion) + "\n";
  for (const auto& p : d.premises) render_into(*p, depth + 1, out);
}

}  // namespace

std::string render(const CMGDerivation& d) {
  std::string out;
  render_into(d, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Derivation search

namespace {

// A constituent that has been merged as a hypothesis and still has to check
// licensees. `checked` counts the licensees already discharged.
struct Pending {
  std::string var;
  CMGDerivationPtr mover;
  std::size_t checked = 0;
};

struct Item {
  CMGDerivationPtr d;
  std::vector<Pending> pending;
  std::set<std::string> vars;  // every variable used anywhere in the proof
  std::size_t steps = 0;
  std::vector<int> counts;
  std::size_t words = 0;
};

struct Mode {
  bool parse = true;
  std::vector<std::string> vocab;
  std::vector<int> budget;
  std::size_t max_words = 0;
  std::size_t step_bound = 0;
};

// Licensee names of m_k * (... * (m_1 * b)), outermost first.
std::vector<std::string> spine(const CFormula& f) {
  std::vector<std::string> out;
  const CFormula* cur = &f;
  while (cur->conn() == Conn::Tensor) {
    out.push_back(cur->left()->name());
    cur = cur->right().get();
  }
  return out;
}

const std::string& next_licensee(const Pending& p) {
  static const std::string none;
  const CFormula* cur = p.mover->conclusion.formula.get();
  auto names = spine(*cur);
  std::size_t k = names.size();
  // Walk down to the tensor with checked+1 licensees.
  for (std::size_t i = 0; i + 1 + p.checked < k; ++i) cur = cur->right().get();
  return cur->conn() == Conn::Tensor ? cur->left()->name() : none;
}

CFormulaPtr tensor_at(const Pending& p) {
  CFormulaPtr cur = p.mover->conclusion.formula;
  std::size_t k = spine(*cur).size();
  for (std::size_t i = 0; i + 1 + p.checked < k; ++i) cur = cur->right();
  return cur;
}

bool smc_ok(const std::vector<Pending>& pending) {
  std::set<std::string> seen;
  for (const auto& p : pending) {
    if (!seen.insert(next_licensee(p)).second) return false;
  }
  return true;
}

void collect_vars(const CMGDerivation& d, std::set<std::string>& out) {
  for (const auto& h : d.conclusion.context) out.insert(h.var);
  if (!d.var.empty()) out.insert(d.var);
  if (!d.var2.empty()) out.insert(d.var2);
  for (const auto& p : d.premises) collect_vars(*p, out);
}

using Renaming = std::map<std::string, std::string>;

const std::string& renamed(const Renaming& r, const std::string& v) {
  auto it = r.find(v);
  return it == r.end() ? v : it->second;
}

CMGDerivationPtr rename(const CMGDerivationPtr& d, const Renaming& r) {
  auto out = std::make_shared<CMGDerivation>(*d);
  for (auto& h : out->conclusion.context) h.var = renamed(r, h.var);
  for (auto* part : {&out->conclusion.label.spec, &out->conclusion.label.head, &out->conclusion.label.comp}) {
    for (auto& s : *part) {
      if (s.is_var) s.text = renamed(r, s.text);
    }
  }
  if (!out->var.empty()) out->var = renamed(r, out->var);
  if (!out->var2.empty()) out->var2 = renamed(r, out->var2);
  for (auto& p : out->premises) p = rename(p, r);
  return out;
}

// Hypotheses numbered u1, u2, ... in the order their axioms occur.
void number_axioms(const CMGDerivation& d, Renaming& r) {
  for (const auto& p : d.premises) number_axioms(*p, r);
  if (d.rule == CMGRule::Axiom && r.count(d.var) == 0) r.emplace(d.var, "u" + std::to_string(r.size() + 1));
}

CMGDerivationPtr renumber(const CMGDerivationPtr& d) {
  Renaming r;
  number_axioms(*d, r);
  return rename(d, r);
}

class Search {
 public:
  Search(const CMGLexicon& lex, Mode mode) : lex_(lex), mode_(std::move(mode)) {}

  std::vector<Item> run() {
    for (std::size_t i = 0; i < lex_.entries.size(); ++i) {
      const CMGEntry& e = lex_.entries[i];
      Item it;
      auto d = std::make_shared<CMGDerivation>();
      d->rule = CMGRule::Lex;
      d->word = e.word;
      d->entry = i;
      d->conclusion.formula = e.formula;
      for (const auto& w : e.phon) d->conclusion.label.head.push_back({w, false});
      it.d = d;
      it.counts.assign(mode_.vocab.size(), 0);
      bool ok = true;
      for (const auto& w : e.phon) ok = ok && add_word(it, w);
      if (ok) agenda_.push_back(std::move(it));
    }
    while (!agenda_.empty()) {
      Item x = std::move(agenda_.front());
      agenda_.pop_front();
      chart_.push_back(std::move(x));
      expand(chart_.size() - 1);
    }
    std::vector<Item> done;
    for (const auto& it : chart_) {
      const LSequent& s = it.d->conclusion;
      if (s.context.empty() && it.pending.empty() && s.formula->is_atom() && s.formula->name() == lex_.start) {
        done.push_back(it);
      }
    }
    return done;
  }

 private:
  std::string fresh() { return "u" + std::to_string(++counter_); }

  bool add_word(Item& it, const std::string& w) {
    ++it.words;
    if (!mode_.parse) return it.words <= mode_.max_words;
    auto pos = std::find(mode_.vocab.begin(), mode_.vocab.end(), w);
    if (pos == mode_.vocab.end()) return false;
    auto i = static_cast<std::size_t>(pos - mode_.vocab.begin());
    return ++it.counts[i] <= mode_.budget[i];
  }

  bool add_resources(Item& out, const Item& other) {
    out.words += other.words;
    if (!mode_.parse) return out.words <= mode_.max_words;
    for (std::size_t i = 0; i < out.counts.size(); ++i) {
      out.counts[i] += other.counts[i];
      if (out.counts[i] > mode_.budget[i]) return false;
    }
    return true;
  }

  void expand(std::size_t self) {
    const Item x = chart_[self];
    const CFormula& fx = *x.d->conclusion.formula;
    if (fx.conn() == Conn::Under && lex_.alphabet.is_move(fx.argument()->name())) {
      check_licensor(x);
      return;
    }
    for (std::size_t i = 0; i < self; ++i) {
      const Item y = chart_[i];
      try_apply(x, y);
      try_apply(y, x);
    }
  }

  // The major premise wants a licensor: introduce its hypothesis and
  // discharge it together with the matching pending constituent at once.
  void check_licensor(const Item& x) {
    const std::string& m = x.d->conclusion.formula->argument()->name();
    auto it = std::find_if(x.pending.begin(), x.pending.end(), [&](const Pending& p) { return next_licensee(p) == m; });
    if (it == x.pending.end()) return;
    std::size_t steps = x.steps + 2;
    if (steps > mode_.step_bound) return;
    const Pending p = *it;
    try {
      std::string hx = fresh();
      auto body = rule_mg(x.d, var_axiom(hx, CFormula::atom(m)));
      const std::size_t k = spine(*p.mover->conclusion.formula).size();
      Item out = x;
      out.steps = steps;
      auto& slot = out.pending[static_cast<std::size_t>(it - x.pending.begin())];
      CMGDerivationPtr prem;
      if (p.checked + 1 == k) {
        prem = p.mover;
      } else {
        std::string z = fresh();
        prem = var_axiom(z, tensor_at(p));
        slot.var = z;
        out.vars.insert(z);
      }
      out.d = rule_mv(prem, body, hx, p.var);
      out.vars.insert(hx);
      if (p.checked + 1 == k) {
        out.pending.erase(out.pending.begin() + (it - x.pending.begin()));
      } else {
        ++slot.checked;
      }
      if (!smc_ok(out.pending)) return;
      agenda_.push_back(std::move(out));
    } catch (const Error&) {
    }
  }

  void try_apply(const Item& major, const Item& minor) {
    const CFormula& f = *major.d->conclusion.formula;
    if (!f.is_implication()) return;
    const CFormula& arg = *f.argument();
    if (!arg.is_atom() || lex_.alphabet.is_move(arg.name())) return;
    const CFormula& g = *minor.d->conclusion.formula;
    const bool plain = g.is_atom() && g.name() == arg.name();
    const bool mover = !f.is_hdr() && g.conn() == Conn::Tensor && innermost_base(g) == arg.name() &&
                       minor.d->conclusion.context.empty() && minor.pending.empty();
    if (!plain && !mover) return;
    std::size_t steps = major.steps + minor.steps + 1;
    if (steps > mode_.step_bound) return;
    Item out = major;
    out.steps = steps;
    if (!add_resources(out, minor)) return;
    try {
      CMGDerivationPtr md = minor.d;
      std::vector<Pending> mp = minor.pending;
      std::set<std::string> mv = minor.vars;
      bool clash = std::any_of(mv.begin(), mv.end(), [&](const std::string& v) { return major.vars.count(v) > 0; });
      if (clash) {
        Renaming r;
        for (const auto& v : mv) r[v] = fresh();
        md = rename(md, r);
        for (auto& p : mp) p.var = renamed(r, p.var);
        mv.clear();
        for (const auto& [from, to] : r) mv.insert(to);
      }
      out.vars.insert(mv.begin(), mv.end());
      if (plain) {
        out.d = f.is_hdr() ? rule_hdr(major.d, md) : rule_mg(major.d, md);
        out.pending.insert(out.pending.end(), mp.begin(), mp.end());
      } else {
        std::string y = fresh();
        out.d = rule_mg(major.d, var_axiom(y, CFormula::atom(arg.name())));
        out.pending.push_back({y, md, 0});
        out.vars.insert(y);
      }
    } catch (const Error&) {
      return;
    }
    if (!smc_ok(out.pending)) return;
    agenda_.push_back(std::move(out));
  }

  const CMGLexicon& lex_;
  Mode mode_;
  std::deque<Item> chart_;
  std::deque<Item> agenda_;
  std::size_t counter_ = 0;
};

}  // namespace

std::vector<CMGDerivationPtr> cmg_derive(const CMGLexicon& lexicon, const std::vector<std::string>& sentence,
                                         std::size_t step_bound) {
  Mode mode;
  mode.step_bound = step_bound;
  for (const auto& w : sentence) {
    bool known = std::any_of(lexicon.entries.begin(), lexicon.entries.end(), [&](const CMGEntry& e) {
      return std::find(e.phon.begin(), e.phon.end(), w) != e.phon.end();
    });
    if (!known) throw Error(ErrorKind::UnknownWord, "no lexical entry for '" + w + "'");
    auto pos = std::find(mode.vocab.begin(), mode.vocab.end(), w);
    if (pos == mode.vocab.end()) {
      mode.vocab.push_back(w);
      mode.budget.push_back(1);
    } else {
      ++mode.budget[static_cast<std::size_t>(pos - mode.vocab.begin())];
    }
  }
  std::vector<CMGDerivationPtr> out;
  for (const auto& it : Search(lexicon, mode).run()) {
    if (yield(it.d->conclusion.label) == sentence) out.push_back(renumber(it.d));
  }
  return out;
}

std::set<std::vector<std::string>> cmg_generate(const CMGLexicon& lexicon, std::size_t max_words,
                                                std::size_t step_bound) {
  Mode mode;
  mode.parse = false;
  mode.max_words = max_words;
  mode.step_bound = step_bound;
  std::set<std::vector<std::string>> out;
  for (const auto& it : Search(lexicon, mode).run()) out.insert(yield(it.d->conclusion.label));
  return out;
}

}  // namespace mgcat::cmg
