#pragma once

#include <set>
#include <string>

namespace mgcat {

// Declared feature names of a grammar. `base` holds the selectable
// categories (c, v, V, d, t, n, ...), `move` the licensee names (k, wh, ...).
struct Alphabet {
  std::set<std::string> base;
  std::set<std::string> move;

  bool is_base(const std::string& name) const { return base.count(name) > 0; }
  bool is_move(const std::string& name) const { return move.count(name) > 0; }
  bool empty() const { return base.empty() && move.empty(); }
};

}  // namespace mgcat
