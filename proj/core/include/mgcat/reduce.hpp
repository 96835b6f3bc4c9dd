#pragma once

// Reductions of the λμ-calculus (β, μ, μ′, ς), substitution, α-equivalence
// keys and exhaustive enumeration of normal forms.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgcat/term.hpp"

namespace mgcat::sem {

enum class RedRule { Beta, Mu, MuPrime, Sigma };
std::string_view to_string(RedRule rule);

struct Reduct {
  RedRule rule;
  TermPtr term;
};

// t[x := u] for the λ-variable x, renaming λ- and μ-binders of t that would
// capture free variables of u. Box referents are never renamed.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& u);

// Every one-step reduct, at every position, root first.
std::vector<Reduct> reduce_step(const TermPtr& t);

// β-normal form (normal order).
TermPtr beta_normalize(const TermPtr& t);

// Equal for α-equivalent terms: λ/μ-bound names are replaced by binding
// depth, referents and constants keep their names.
std::string alpha_key(const Term& t);
inline bool alpha_equivalent(const Term& a, const Term& b) { return alpha_key(a) == alpha_key(b); }

struct NormalFormOptions {
  std::size_t step_bound = 10000;           // maximum number of terms explored
  std::optional<std::uint64_t> shuffle_seed;  // randomizes redex order when set
};

struct NormalForms {
  std::vector<TermPtr> forms;  // μ-free, λ-free normal forms, ordered by alpha_key
  std::size_t explored = 0;    // distinct terms visited
  std::size_t stuck = 0;       // normal forms that still contain λ or μ
};

// Breadth-first search of the reduction graph with α-deduplication. Throws
// BoundExceeded when more than `step_bound` terms would be explored.
NormalForms normal_forms(const TermPtr& t, const NormalFormOptions& options = {});

}  // namespace mgcat::sem
