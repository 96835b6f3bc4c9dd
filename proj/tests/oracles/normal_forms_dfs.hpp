#pragma once

// Brute-force reference for normal_forms: walks the full reduction tree
// depth first, with no memoization and no deduplication of paths, and keeps
// the λ-free, μ-free leaves.

#include <cstddef>
#include <map>
#include <string>

#include "mgcat/reduce.hpp"
#include "mgcat/term.hpp"

namespace mgcat::oracle {

struct DfsResult {
  std::map<std::string, sem::TermPtr> forms;  // by alpha key
  std::size_t leaves = 0;       // reduction paths explored to the end
};

inline void dfs_normal_forms(const sem::TermPtr& t, DfsResult& out) {
  auto next = sem::reduce_step(t);
  if (next.empty()) {
    ++out.leaves;
    bool clean = !sem::has_kind(*t, sem::TermKind::Lam) && !sem::has_kind(*t, sem::TermKind::Mu) &&
                 !sem::has_kind(*t, sem::TermKind::Name) && !sem::has_kind(*t, sem::TermKind::LamVar);
    if (clean) out.forms.emplace(sem::alpha_key(*t), t);
    return;
  }
  for (const auto& r : next) dfs_normal_forms(r.term, out);
}

}  // namespace mgcat::oracle
