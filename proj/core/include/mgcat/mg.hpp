#pragma once

// Minimalist grammars: feature sequences, derived trees, the structure
// building functions (merge, head movement with right adjunction, move under
// the shortest move constraint) and an exhaustive bounded derivation search.

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgcat/alphabet.hpp"

namespace mgcat::mg {

enum class FeatureKind {
  Base,          // x
  Selector,      // =x
  HeadSelector,  // x^  (head movement, right adjunction)
  Licensee,      // -x
  Licensor,      // +x
};

struct Feature {
  FeatureKind kind = FeatureKind::Base;
  std::string name;

  bool operator==(const Feature&) const = default;
  auto operator<=>(const Feature&) const = default;
};

using Phon = std::vector<std::string>;

struct FeatureSeq {
  std::vector<Feature> features;
  Phon phon;

  bool operator==(const FeatureSeq&) const = default;
};

Feature parse_feature(std::string_view token);
std::string to_string(const Feature& f);

// Sequences must have the shape (sel (sel|hsel|lic)*)* base lic*, where a
// block always opens with a selector or head selector.
bool matches_entry_regex(std::span<const Feature> features);

// Parses a bare feature list ("=n d -k"); throws RegexViolation when the list
// is not a legal lexical entry.
std::vector<Feature> parse_features(std::string_view text);

// Parses "features :: phon", e.g. "=n d -k :: the". An empty phon (or `_`)
// denotes the empty string.
FeatureSeq parse_feature_seq(std::string_view text);

std::string features_to_string(std::span<const Feature> features);
std::string to_string(const FeatureSeq& seq);

// Throws MalformedFeature when a feature name is not declared: =x and x^
// need base x, +x and -x need licensee x.
void check_declared(std::span<const Feature> features, const Alphabet& alphabet);

enum class Dir {
  Less,     // "<": the head is in the left subtree
  Greater,  // ">": the head is in the right subtree
};

class MGTree;
using MGTreePtr = std::shared_ptr<const MGTree>;

class MGTree {
 public:
  static MGTreePtr leaf(FeatureSeq seq);
  static MGTreePtr node(Dir dir, MGTreePtr left, MGTreePtr right);

  bool is_leaf() const { return left_ == nullptr; }
  const FeatureSeq& seq() const { return seq_; }
  Dir dir() const { return dir_; }
  const MGTreePtr& left() const { return left_; }
  const MGTreePtr& right() const { return right_; }

  bool operator==(const MGTree& other) const;

 private:
  FeatureSeq seq_;
  Dir dir_ = Dir::Less;
  MGTreePtr left_;
  MGTreePtr right_;
};

enum class Branch { Left, Right };
using TreePath = std::vector<Branch>;

// Path from the root to the head leaf: left on "<", right on ">".
TreePath head_path(const MGTree& t);
const FeatureSeq& head_of(const MGTree& t);
const MGTree& subtree_at(const MGTree& t, std::span<const Branch> path);

MGTreePtr mg_merge(const MGTreePtr& t1, const MGTreePtr& t2);
MGTreePtr mg_head_move_right(const MGTreePtr& t1, const MGTreePtr& t2);
MGTreePtr mg_move(const MGTreePtr& t);

// Non-empty leaf phonologies, left to right.
Phon tree_yield(const MGTree& t);

std::string to_string(const MGTree& t);

enum class MGRule { Lex, Merge, HeadMove, Move };
std::string_view to_string(MGRule rule);

struct MGStep {
  MGRule rule = MGRule::Lex;
  // Indices of earlier steps; empty for Lex, one for Move, two otherwise
  // (selector first).
  std::vector<std::size_t> operands;
  std::string word;  // lexical key for Lex steps
  FeatureSeq entry;  // lexical entry for Lex steps
  MGTreePtr result;
};

struct MGDerivation {
  std::vector<MGStep> steps;  // topologically ordered, root last

  MGTreePtr root() const { return steps.empty() ? nullptr : steps.back().result; }
  // Recomputes every step from the lexical leaves.
  MGTreePtr replay() const;
  std::size_t rule_count() const;
};

struct MGEntry {
  std::string word;  // lexical key; "_" or "_tag" for empty phonology
  FeatureSeq seq;
};

struct MGLexicon {
  Alphabet alphabet;
  std::string start = "c";
  std::vector<MGEntry> entries;
};

bool is_empty_word(std::string_view word);

// All derivations with at most `step_bound` rule applications whose root head
// is exactly [start] (every other leaf exhausted) and whose yield is the
// sentence.
std::vector<MGDerivation> mg_derive(const MGLexicon& lexicon,
                                    const std::vector<std::string>& sentence,
                                    std::size_t step_bound);

// Every sentence of at most `max_words` words the lexicon derives within the
// step bound.
std::set<Phon> mg_generate(const MGLexicon& lexicon, std::size_t max_words,
                           std::size_t step_bound);

}  // namespace mgcat::mg
