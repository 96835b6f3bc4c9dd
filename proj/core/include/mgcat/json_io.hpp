#pragma once

// JSON encodings of derivations, terms and readings. Each from_json inverts
// the matching to_json.

#include <nlohmann/json.hpp>

#include "mgcat/analyze.hpp"
#include "mgcat/cmg.hpp"
#include "mgcat/mg.hpp"
#include "mgcat/term.hpp"

namespace mgcat::json_io {

using nlohmann::json;

// {"rule", "formula", "label": [spec, head, comp], "context", "premises", ...}.
// Label symbols are strings, hypothesis variables are {"var": name}.
json to_json(const cmg::CMGDerivation& d);
cmg::CMGDerivationPtr cmg_derivation_from_json(const json& j);

// {"steps": [{"rule", "operands", "word", "entry", "tree"}]}; reading it back
// replays the steps.
json to_json(const mg::MGDerivation& d);
mg::MGDerivation mg_derivation_from_json(const json& j);

// {"kind", ...} with kinds var, dref, const, lam, mu, name, app, box, and,
// fusion, implies, eq. Types are written as strings.
json to_json(const sem::Term& t);
sem::TermPtr term_from_json(const json& j);

// {"drs": term, "text": rendered drs, "fol": formula}
json to_json(const Reading& r);
Reading reading_from_json(const json& j);

json to_json(const Analysis& a);

}  // namespace mgcat::json_io
