#include "mgcat/json_io.hpp"

#include <array>

#include "mgcat/error.hpp"

namespace mgcat::json_io {

using sem::Term;
using sem::TermKind;

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::ParseError, "json: " + why); }

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& text, const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  bad("unknown rule '" + text + "'");
}

json symbols_to_json(const cmg::SymbolString& s) {
  json out = json::array();
  for (const auto& sym : s) out.push_back(sym.is_var ? json{{"var", sym.text}} : json(sym.text));
  return out;
}

cmg::SymbolString symbols_from_json(const json& j) {
  cmg::SymbolString out;
  for (const auto& s : j) {
    if (s.is_string()) {
      out.push_back({s.get<std::string>(), false});
    } else {
      out.push_back({s.at("var").get<std::string>(), true});
    }
  }
  return out;
}

constexpr std::array<std::pair<TermKind, const char*>, 12> kKinds{{
    {TermKind::LamVar, "var"},
    {TermKind::DiscRef, "dref"},
    {TermKind::Const, "const"},
    {TermKind::Lam, "lam"},
    {TermKind::Mu, "mu"},
    {TermKind::Name, "name"},
    {TermKind::App, "app"},
    {TermKind::Box, "box"},
    {TermKind::And, "and"},
    {TermKind::Fusion, "fusion"},
    {TermKind::Implies, "implies"},
    {TermKind::Eq, "eq"},
}};

const char* kind_name(TermKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "?";
}

TermKind kind_from(const std::string& s) {
  for (const auto& [kind, name] : kKinds) {
    if (s == name) return kind;
  }
  bad("unknown term kind '" + s + "'");
}

}  // namespace

json to_json(const cmg::CMGDerivation& d) {
  json j;
  j["rule"] = std::string(to_string(d.rule));
  j["formula"] = cmg::to_string(*d.conclusion.formula);
  const auto& l = d.conclusion.label;
  j["label"] = json::array({symbols_to_json(l.spec), symbols_to_json(l.head), symbols_to_json(l.comp)});
  j["context"] = json::array();
  for (const auto& h : d.conclusion.context) j["context"].push_back({{"var", h.var}, {"formula", cmg::to_string(*h.formula)}});
  j["premises"] = json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(*p));
  if (d.rule == cmg::CMGRule::Lex) {
    j["word"] = d.word;
    if (d.entry != cmg::CMGDerivation::kNoEntry) j["entry"] = d.entry;
  }
  if (d.rule == cmg::CMGRule::Axiom) j["vars"] = json::array({d.var});
  if (d.rule == cmg::CMGRule::Mv) j["vars"] = json::array({d.var, d.var2});
  return j;
}

cmg::CMGDerivationPtr cmg_derivation_from_json(const json& j) {
  try {
    auto d = std::make_shared<cmg::CMGDerivation>();
    d->rule = enum_from(j.at("rule").get<std::string>(),
                        std::array{cmg::CMGRule::Lex, cmg::CMGRule::Axiom, cmg::CMGRule::Mg, cmg::CMGRule::MgHdr,
                                   cmg::CMGRule::Mv});
    d->conclusion.formula = cmg::parse_any_cformula(j.at("formula").get<std::string>());
    const auto& label = j.at("label");
    if (!label.is_array() || label.size() != 3) bad("a label has three components");
    d->conclusion.label = {symbols_from_json(label[0]), symbols_from_json(label[1]), symbols_from_json(label[2])};
    for (const auto& h : j.at("context")) {
      d->conclusion.context.push_back({h.at("var").get<std::string>(), cmg::parse_any_cformula(h.at("formula").get<std::string>())});
    }
    for (const auto& p : j.at("premises")) d->premises.push_back(cmg_derivation_from_json(p));
    if (j.contains("word")) d->word = j["word"].get<std::string>();
    if (j.contains("entry")) d->entry = j["entry"].get<std::size_t>();
    if (j.contains("vars")) {
      const auto& v = j["vars"];
      if (!v.empty()) d->var = v[0].get<std::string>();
      if (v.size() > 1) d->var2 = v[1].get<std::string>();
    }
    return d;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json to_json(const mg::MGDerivation& d) {
  json steps = json::array();
  for (const auto& s : d.steps) {
    json j;
    j["rule"] = std::string(to_string(s.rule));
    j["operands"] = s.operands;
    if (s.rule == mg::MGRule::Lex) {
      j["word"] = s.word;
      j["entry"] = mg::features_to_string(s.entry.features);
    }
    j["tree"] = mg::to_string(*s.result);
    steps.push_back(std::move(j));
  }
  return {{"steps", steps}};
}

mg::MGDerivation mg_derivation_from_json(const json& j) {
  try {
    mg::MGDerivation d;
    for (const auto& s : j.at("steps")) {
      mg::MGStep step;
      step.rule = enum_from(s.at("rule").get<std::string>(),
                            std::array{mg::MGRule::Lex, mg::MGRule::Merge, mg::MGRule::HeadMove, mg::MGRule::Move});
      step.operands = s.at("operands").get<std::vector<std::size_t>>();
      if (step.rule == mg::MGRule::Lex) {
        step.word = s.at("word").get<std::string>();
        step.entry.features = mg::parse_features(s.at("entry").get<std::string>());
        if (!mg::is_empty_word(step.word)) step.entry.phon = {step.word};
      }
      d.steps.push_back(std::move(step));
    }
    // Recompute every intermediate tree.
    std::vector<mg::MGTreePtr> results;
    for (auto& step : d.steps) {
      for (auto op : step.operands) {
        if (op >= results.size()) bad("operand refers forward");
      }
      switch (step.rule) {
        case mg::MGRule::Lex: step.result = mg::MGTree::leaf(step.entry); break;
        case mg::MGRule::Merge: step.result = mg::mg_merge(results[step.operands.at(0)], results[step.operands.at(1)]); break;
        case mg::MGRule::HeadMove:
          step.result = mg::mg_head_move_right(results[step.operands.at(0)], results[step.operands.at(1)]);
          break;
        case mg::MGRule::Move: step.result = mg::mg_move(results[step.operands.at(0)]); break;
      }
      results.push_back(step.result);
    }
    return d;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json to_json(const Term& t) {
  json j;
  j["kind"] = kind_name(t.kind());
  switch (t.kind()) {
    case TermKind::LamVar:
    case TermKind::DiscRef:
    case TermKind::Const:
      j["name"] = t.name();
      j["type"] = sem::to_string(*t.type());
      break;
    case TermKind::Lam:
    case TermKind::Mu:
    case TermKind::Name:
      j["var"] = t.name();
      j["type"] = sem::to_string(*t.type());
      j[t.kind() == TermKind::Name ? "arg" : "body"] = to_json(*t.a());
      break;
    case TermKind::App:
      j["fun"] = to_json(*t.a());
      j["arg"] = to_json(*t.b());
      break;
    case TermKind::Box:
      j["refs"] = json::array();
      for (const auto& r : t.refs()) j["refs"].push_back({{"name", r.name}, {"type", sem::to_string(*r.type)}});
      j["body"] = to_json(*t.a());
      break;
    default:
      j["left"] = to_json(*t.a());
      j["right"] = to_json(*t.b());
  }
  return j;
}

sem::TermPtr term_from_json(const json& j) {
  try {
    auto type = [&] { return sem::parse_type(j.at("type").get<std::string>()); };
    switch (kind_from(j.at("kind").get<std::string>())) {
      case TermKind::LamVar: return Term::var(j.at("name").get<std::string>(), type());
      case TermKind::DiscRef: return Term::dref(j.at("name").get<std::string>(), type());
      case TermKind::Const: return Term::constant(j.at("name").get<std::string>(), type());
      case TermKind::Lam: return Term::lam(j.at("var").get<std::string>(), type(), term_from_json(j.at("body")));
      case TermKind::Mu: return Term::mu(j.at("var").get<std::string>(), type(), term_from_json(j.at("body")));
      case TermKind::Name: return Term::named(j.at("var").get<std::string>(), type(), term_from_json(j.at("arg")));
      case TermKind::App: return Term::app(term_from_json(j.at("fun")), term_from_json(j.at("arg")));
      case TermKind::Box: {
        std::vector<sem::Ref> refs;
        for (const auto& r : j.at("refs")) {
          refs.push_back({r.at("name").get<std::string>(), sem::parse_type(r.at("type").get<std::string>())});
        }
        return Term::box(std::move(refs), term_from_json(j.at("body")));
      }
      case TermKind::And: return Term::conj(term_from_json(j.at("left")), term_from_json(j.at("right")));
      case TermKind::Fusion: return Term::fusion(term_from_json(j.at("left")), term_from_json(j.at("right")));
      case TermKind::Implies: return Term::implies(term_from_json(j.at("left")), term_from_json(j.at("right")));
      case TermKind::Eq: return Term::eq(term_from_json(j.at("left")), term_from_json(j.at("right")));
    }
  } catch (const json::exception& e) {
    bad(e.what());
  }
  bad("unreachable");
}

json to_json(const Reading& r) {
  return {{"drs", to_json(*r.drs)}, {"text", sem::to_string(*r.drs)}, {"fol", r.fol}};
}

Reading reading_from_json(const json& j) {
  try {
    return {term_from_json(j.at("drs")), j.at("fol").get<std::string>()};
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json to_json(const Analysis& a) {
  json j;
  j["derivation"] = to_json(*a.derivation);
  j["raw"] = sem::to_string(*a.raw);
  j["internalized"] = sem::to_string(*a.internalized);
  j["readings"] = json::array();
  for (const auto& r : a.readings) j["readings"].push_back(to_json(r));
  return j;
}

}  // namespace mgcat::json_io
