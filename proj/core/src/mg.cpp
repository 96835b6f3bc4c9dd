#include "mgcat/mg.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "mgcat/error.hpp"
#include "text_util.hpp"

namespace mgcat::mg {

namespace {

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace

Feature parse_feature(std::string_view token) {
  Feature f;
  std::string_view name = token;
  if (token.empty()) throw Error(ErrorKind::MalformedFeature, "empty feature");
  if (token.front() == '=') {
    f.kind = FeatureKind::Selector;
    name = token.substr(1);
  } else if (token.front() == '+') {
    f.kind = FeatureKind::Licensor;
    name = token.substr(1);
  } else if (token.front() == '-') {
    f.kind = FeatureKind::Licensee;
    name = token.substr(1);
  } else if (token.back() == '^') {
    f.kind = FeatureKind::HeadSelector;
    name = token.substr(0, token.size() - 1);
  } else if (token.size() > 3 && token.substr(token.size() - 3) == "\xE2\x86\x91") {  // ↑
    f.kind = FeatureKind::HeadSelector;
    name = token.substr(0, token.size() - 3);
  }
  if (!valid_name(name)) {
    throw Error(ErrorKind::MalformedFeature, "cannot read feature '" + std::string(token) + "'");
  }
  f.name = std::string(name);
  return f;
}

std::string to_string(const Feature& f) {
  switch (f.kind) {
    case FeatureKind::Base: return f.name;
    case FeatureKind::Selector: return "=" + f.name;
    case FeatureKind::HeadSelector: return f.name + "^";
    case FeatureKind::Licensee: return "-" + f.name;
    case FeatureKind::Licensor: return "+" + f.name;
  }
  return f.name;
}

bool matches_entry_regex(std::span<const Feature> features) {
  std::size_t i = 0;
  const std::size_t n = features.size();
  if (n == 0) return false;
  // Optional selector blocks: must open with =x or x^.
  if (features[0].kind == FeatureKind::Licensor) return false;
  while (i < n && (features[i].kind == FeatureKind::Selector ||
                   features[i].kind == FeatureKind::HeadSelector ||
                   features[i].kind == FeatureKind::Licensor)) {
    ++i;
  }
  if (i == n || features[i].kind != FeatureKind::Base) return false;
  ++i;
  for (; i < n; ++i) {
    if (features[i].kind != FeatureKind::Licensee) return false;
  }
  return true;
}

std::vector<Feature> parse_features(std::string_view text) {
  std::vector<Feature> out;
  for (const auto& tok : detail::split_ws(text)) out.push_back(parse_feature(tok));
  if (!matches_entry_regex(out)) {
    throw Error(ErrorKind::RegexViolation,
                "'" + std::string(detail::trim(text)) + "' is not a lexical feature sequence");
  }
  return out;
}

FeatureSeq parse_feature_seq(std::string_view text) {
  auto pos = text.find("::");
  if (pos == std::string_view::npos) {
    throw Error(ErrorKind::MalformedFeature, "expected 'features :: phon' in '" + std::string(text) + "'");
  }
  FeatureSeq seq;
  seq.features = parse_features(text.substr(0, pos));
  for (auto& w : detail::split_ws(text.substr(pos + 2))) {
    if (!is_empty_word(w)) seq.phon.push_back(std::move(w));
  }
  return seq;
}

std::string features_to_string(std::span<const Feature> features) {
  std::string out;
  for (const auto& f : features) {
    if (!out.empty()) out += ' ';
    out += to_string(f);
  }
  return out;
}

std::string to_string(const FeatureSeq& seq) {
  std::string out = features_to_string(seq.features);
  out += " ::";
  for (const auto& w : seq.phon) out += " " + w;
  return out;
}

void check_declared(std::span<const Feature> features, const Alphabet& alphabet) {
  for (const auto& f : features) {
    bool ok = true;
    switch (f.kind) {
      case FeatureKind::Base:
      case FeatureKind::Selector:
      case FeatureKind::HeadSelector:
        ok = alphabet.is_base(f.name);
        break;
      case FeatureKind::Licensee:
      case FeatureKind::Licensor:
        ok = alphabet.is_move(f.name);
        break;
    }
    if (!ok) {
      throw Error(ErrorKind::MalformedFeature, "feature '" + to_string(f) + "' uses an undeclared name");
    }
  }
}

bool is_empty_word(std::string_view word) { return !word.empty() && word.front() == '_'; }

// ---------------------------------------------------------------------------
// Trees

MGTreePtr MGTree::leaf(FeatureSeq seq) {
  auto t = std::make_shared<MGTree>();
  t->seq_ = std::move(seq);
  return t;
}

MGTreePtr MGTree::node(Dir dir, MGTreePtr left, MGTreePtr right) {
  auto t = std::make_shared<MGTree>();
  t->dir_ = dir;
  t->left_ = std::move(left);
  t->right_ = std::move(right);
  return t;
}

bool MGTree::operator==(const MGTree& other) const {
  if (is_leaf() != other.is_leaf()) return false;
  if (is_leaf()) return seq_ == other.seq_;
  return dir_ == other.dir_ && *left_ == *other.left_ && *right_ == *other.right_;
}

TreePath head_path(const MGTree& t) {
  TreePath path;
  const MGTree* cur = &t;
  while (!cur->is_leaf()) {
    if (cur->dir() == Dir::Less) {
      path.push_back(Branch::Left);
      cur = cur->left().get();
    } else {
      path.push_back(Branch::Right);
      cur = cur->right().get();
    }
  }
  return path;
}

const MGTree& subtree_at(const MGTree& t, std::span<const Branch> path) {
  const MGTree* cur = &t;
  for (Branch b : path) {
    if (cur->is_leaf()) throw Error(ErrorKind::NotApplicable, "path runs past a leaf");
    cur = (b == Branch::Left ? cur->left() : cur->right()).get();
  }
  return *cur;
}

const FeatureSeq& head_of(const MGTree& t) {
  const MGTree* cur = &t;
  while (!cur->is_leaf()) cur = (cur->dir() == Dir::Less ? cur->left() : cur->right()).get();
  return cur->seq();
}

namespace {

MGTreePtr replace_at(const MGTreePtr& t, std::span<const Branch> path, const MGTreePtr& sub) {
  if (path.empty()) return sub;
  auto rest = path.subspan(1);
  if (path.front() == Branch::Left) {
    return MGTree::node(t->dir(), replace_at(t->left(), rest, sub), t->right());
  }
  return MGTree::node(t->dir(), t->left(), replace_at(t->right(), rest, sub));
}

MGTreePtr map_head(const MGTreePtr& t, const std::function<FeatureSeq(const FeatureSeq&)>& fn) {
  TreePath path = head_path(*t);
  return replace_at(t, path, MGTree::leaf(fn(subtree_at(*t, path).seq())));
}

FeatureSeq drop_first(const FeatureSeq& s) {
  FeatureSeq out;
  out.features.assign(s.features.begin() + 1, s.features.end());
  out.phon = s.phon;
  return out;
}

// Shared precondition of merge and head movement.
void check_selection(const MGTree& t1, const MGTree& t2, FeatureKind selector) {
  const auto& h1 = head_of(t1).features;
  const auto& h2 = head_of(t2).features;
  const char* what = selector == FeatureKind::Selector ? "merge" : "head movement";
  if (h1.empty() || h1.front().kind != selector) {
    throw Error(ErrorKind::NotApplicable, std::string(what) + ": selector head does not start with " +
                                              (selector == FeatureKind::Selector ? "=x" : "x^"));
  }
  if (h2.empty() || h2.front().kind != FeatureKind::Base) {
    throw Error(ErrorKind::NotApplicable, std::string(what) + ": selectee head does not start with a category");
  }
  if (h1.front().name != h2.front().name) {
    throw Error(ErrorKind::FeatureMismatch, std::string(what) + ": " + to_string(h1.front()) +
                                                " cannot select " + h2.front().name);
  }
}

MGTreePtr attach(const MGTreePtr& t1, bool lexical, const MGTreePtr& t1p, const MGTreePtr& t2p) {
  (void)t1;
  return lexical ? MGTree::node(Dir::Less, t1p, t2p) : MGTree::node(Dir::Greater, t2p, t1p);
}

void collect_leaves(const MGTree& t, TreePath& path, std::vector<TreePath>& out) {
  if (t.is_leaf()) {
    out.push_back(path);
    return;
  }
  path.push_back(Branch::Left);
  collect_leaves(*t.left(), path, out);
  path.back() = Branch::Right;
  collect_leaves(*t.right(), path, out);
  path.pop_back();
}

// Removes the subtree at `path` (not the root) by replacing its parent with
// the sibling.
MGTreePtr excise(const MGTreePtr& t, std::span<const Branch> path) {
  if (path.size() == 1) return path.front() == Branch::Left ? t->right() : t->left();
  auto rest = path.subspan(1);
  if (path.front() == Branch::Left) return MGTree::node(t->dir(), excise(t->left(), rest), t->right());
  return MGTree::node(t->dir(), t->left(), excise(t->right(), rest));
}

}  // namespace

MGTreePtr mg_merge(const MGTreePtr& t1, const MGTreePtr& t2) {
  check_selection(*t1, *t2, FeatureKind::Selector);
  MGTreePtr t1p = map_head(t1, drop_first);
  MGTreePtr t2p = map_head(t2, drop_first);
  return attach(t1, t1->is_leaf(), t1p, t2p);
}

MGTreePtr mg_head_move_right(const MGTreePtr& t1, const MGTreePtr& t2) {
  check_selection(*t1, *t2, FeatureKind::HeadSelector);
  const Phon moved = head_of(*t2).phon;
  MGTreePtr t1p = map_head(t1, [&](const FeatureSeq& s) {
    FeatureSeq out = drop_first(s);
    out.phon.insert(out.phon.end(), moved.begin(), moved.end());
    return out;
  });
  MGTreePtr t2p = map_head(t2, [](const FeatureSeq& s) {
    FeatureSeq out = drop_first(s);
    out.phon.clear();
    return out;
  });
  return attach(t1, t1->is_leaf(), t1p, t2p);
}

MGTreePtr mg_move(const MGTreePtr& t) {
  const auto& head = head_of(*t).features;
  if (head.empty() || head.front().kind != FeatureKind::Licensor) {
    throw Error(ErrorKind::NotApplicable, "move: head does not start with +x");
  }
  const std::string& x = head.front().name;
  const TreePath hpath = head_path(*t);

  std::vector<TreePath> leaves;
  TreePath scratch;
  collect_leaves(*t, scratch, leaves);
  std::vector<TreePath> movers;
  for (const auto& p : leaves) {
    if (p == hpath) continue;
    const auto& fs = subtree_at(*t, p).seq().features;
    if (!fs.empty() && fs.front().kind == FeatureKind::Licensee && fs.front().name == x) movers.push_back(p);
  }
  if (movers.empty()) throw Error(ErrorKind::NoMover, "move: no leaf starts with -" + x);
  if (movers.size() > 1) {
    throw Error(ErrorKind::SMCViolation, "move: " + std::to_string(movers.size()) + " leaves start with -" + x);
  }

  // Maximal projection: the highest node on the path whose head is the mover.
  const TreePath& leaf_path = movers.front();
  std::size_t cut = leaf_path.size();
  for (std::size_t i = 1; i <= leaf_path.size(); ++i) {
    std::span<const Branch> prefix(leaf_path.data(), i);
    std::span<const Branch> suffix(leaf_path.data() + i, leaf_path.size() - i);
    TreePath inner = head_path(subtree_at(*t, prefix));
    if (std::equal(inner.begin(), inner.end(), suffix.begin(), suffix.end())) {
      cut = i;
      break;
    }
  }
  std::span<const Branch> proj_path(leaf_path.data(), cut);
  MGTreePtr moved;
  {
    // Rebuild the maximal projection as a shared pointer.
    std::function<MGTreePtr(const MGTreePtr&, std::span<const Branch>)> grab =
        [&](const MGTreePtr& cur, std::span<const Branch> p) -> MGTreePtr {
      if (p.empty()) return cur;
      return grab(p.front() == Branch::Left ? cur->left() : cur->right(), p.subspan(1));
    };
    moved = map_head(grab(t, proj_path), drop_first);
  }
  MGTreePtr rest = excise(map_head(t, drop_first), proj_path);
  return MGTree::node(Dir::Greater, moved, rest);
}

Phon tree_yield(const MGTree& t) {
  if (t.is_leaf()) return t.seq().phon;
  Phon out = tree_yield(*t.left());
  Phon r = tree_yield(*t.right());
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::string to_string(const MGTree& t) {
  if (t.is_leaf()) return "(" + to_string(t.seq()) + ")";
  return std::string("[") + (t.dir() == Dir::Less ? "<" : ">") + " " + to_string(*t.left()) + " " +
         to_string(*t.right()) + "]";
}

std::string_view to_string(MGRule rule) {
  switch (rule) {
    case MGRule::Lex: return "lex";
    case MGRule::Merge: return "merge";
    case MGRule::HeadMove: return "hdr";
    case MGRule::Move: return "move";
  }
  return "?";
}

MGTreePtr MGDerivation::replay() const {
  std::vector<MGTreePtr> results;
  results.reserve(steps.size());
  for (const auto& step : steps) {
    for (auto op : step.operands) {
      if (op >= results.size()) throw Error(ErrorKind::NotApplicable, "replay: operand refers forward");
    }
    switch (step.rule) {
      case MGRule::Lex: results.push_back(MGTree::leaf(step.entry)); break;
      case MGRule::Merge: results.push_back(mg_merge(results[step.operands.at(0)], results[step.operands.at(1)])); break;
      case MGRule::HeadMove:
        results.push_back(mg_head_move_right(results[step.operands.at(0)], results[step.operands.at(1)]));
        break;
      case MGRule::Move: results.push_back(mg_move(results[step.operands.at(0)])); break;
    }
  }
  return results.empty() ? nullptr : results.back();
}

std::size_t MGDerivation::rule_count() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const MGStep& s) { return s.rule != MGRule::Lex; }));
}

// ---------------------------------------------------------------------------
// Derivation search

namespace {

struct DNode {
  MGRule rule;
  std::vector<std::shared_ptr<const DNode>> kids;
  const MGEntry* entry = nullptr;
  MGTreePtr result;
};
using DNodePtr = std::shared_ptr<const DNode>;

struct Item {
  MGTreePtr tree;
  DNodePtr deriv;
  std::size_t steps = 0;
  std::vector<int> counts;  // per sentence-word occurrences (parse mode)
  std::size_t words = 0;
};

struct Mode {
  bool parse = true;
  std::vector<std::string> vocab;  // parse mode: distinct sentence words
  std::vector<int> budget;         // parse mode: occurrences per vocab word
  std::size_t max_words = 0;       // generate mode
  std::size_t step_bound = 0;
};

// A tree can still converge only if its head has a selecting or base
// feature first and every other leaf is exhausted or waiting to move, with
// at most one pending mover per licensee (shortest move).
bool viable(const MGTree& t) {
  const TreePath hpath = head_path(t);
  const auto& head = subtree_at(t, hpath).seq().features;
  if (head.empty() || head.front().kind == FeatureKind::Licensee) return false;
  std::vector<TreePath> leaves;
  TreePath scratch;
  collect_leaves(t, scratch, leaves);
  std::set<std::string> pending;
  for (const auto& p : leaves) {
    if (p == hpath) continue;
    const auto& fs = subtree_at(t, p).seq().features;
    if (fs.empty()) continue;
    if (fs.front().kind != FeatureKind::Licensee) return false;
    if (!pending.insert(fs.front().name).second) return false;
  }
  return true;
}

bool complete(const MGTree& t, const std::string& start) {
  const TreePath hpath = head_path(t);
  const auto& head = subtree_at(t, hpath).seq().features;
  if (head.size() != 1 || head.front() != Feature{FeatureKind::Base, start}) return false;
  std::vector<TreePath> leaves;
  TreePath scratch;
  collect_leaves(t, scratch, leaves);
  for (const auto& p : leaves) {
    if (p != hpath && !subtree_at(t, p).seq().features.empty()) return false;
  }
  return true;
}

std::size_t flatten(const DNodePtr& node, MGDerivation& out) {
  std::vector<std::size_t> operands;
  for (const auto& k : node->kids) operands.push_back(flatten(k, out));
  MGStep step;
  step.rule = node->rule;
  step.operands = std::move(operands);
  if (node->entry != nullptr) {
    step.word = node->entry->word;
    step.entry = node->entry->seq;
  }
  step.result = node->result;
  out.steps.push_back(std::move(step));
  return out.steps.size() - 1;
}

class Search {
 public:
  Search(const MGLexicon& lex, Mode mode) : lex_(lex), mode_(std::move(mode)) {}

  std::vector<Item> run() {
    for (const auto& e : lex_.entries) {
      Item it;
      it.tree = MGTree::leaf(e.seq);
      auto d = std::make_shared<DNode>();
      d->rule = MGRule::Lex;
      d->entry = &e;
      d->result = it.tree;
      it.deriv = d;
      it.counts.assign(mode_.vocab.size(), 0);
      bool ok = true;
      for (const auto& w : e.seq.phon) {
        ok = ok && add_word(it, w);
      }
      if (ok && viable(*it.tree)) push(std::move(it));
    }
    while (!agenda_.empty()) {
      Item x = std::move(agenda_.front());
      agenda_.pop_front();
      chart_.push_back(x);
      expand(chart_.back(), chart_.size() - 1);
    }
    std::vector<Item> done;
    for (const auto& it : chart_) {
      if (complete(*it.tree, lex_.start)) done.push_back(it);
    }
    return done;
  }

 private:
  bool add_word(Item& it, const std::string& w) {
    ++it.words;
    if (!mode_.parse) return it.words <= mode_.max_words;
    auto pos = std::find(mode_.vocab.begin(), mode_.vocab.end(), w);
    if (pos == mode_.vocab.end()) return false;
    auto i = static_cast<std::size_t>(pos - mode_.vocab.begin());
    return ++it.counts[i] <= mode_.budget[i];
  }

  std::optional<Item> combine(MGRule rule, const Item& a, const Item* b) {
    std::size_t steps = a.steps + 1 + (b ? b->steps : 0);
    if (steps > mode_.step_bound) return std::nullopt;
    Item out;
    out.steps = steps;
    out.words = a.words + (b ? b->words : 0);
    if (!mode_.parse && out.words > mode_.max_words) return std::nullopt;
    out.counts = a.counts;
    if (b != nullptr) {
      for (std::size_t i = 0; i < out.counts.size(); ++i) {
        out.counts[i] += b->counts[i];
        if (out.counts[i] > mode_.budget[i]) return std::nullopt;
      }
    }
    try {
      switch (rule) {
        case MGRule::Merge: out.tree = mg_merge(a.tree, b->tree); break;
        case MGRule::HeadMove: out.tree = mg_head_move_right(a.tree, b->tree); break;
        case MGRule::Move: out.tree = mg_move(a.tree); break;
        case MGRule::Lex: return std::nullopt;
      }
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!viable(*out.tree)) return std::nullopt;
    auto d = std::make_shared<DNode>();
    d->rule = rule;
    d->kids.push_back(a.deriv);
    if (b != nullptr) d->kids.push_back(b->deriv);
    d->result = out.tree;
    out.deriv = d;
    return out;
  }

  void push(Item it) { agenda_.push_back(std::move(it)); }

  void expand(const Item& x, std::size_t self) {
    const Feature& fx = head_of(*x.tree).features.front();
    if (fx.kind == FeatureKind::Licensor) {
      if (auto r = combine(MGRule::Move, x, nullptr)) push(std::move(*r));
      return;
    }
    for (std::size_t i = 0; i <= self; ++i) {
      const Item& y = chart_[i];
      const Feature& fy = head_of(*y.tree).features.front();
      if (fy.name != fx.name) continue;
      for (int order = 0; order < 2; ++order) {
        const Item& sel = order == 0 ? x : y;
        const Item& arg = order == 0 ? y : x;
        const Feature& fs = order == 0 ? fx : fy;
        const Feature& fa = order == 0 ? fy : fx;
        if (fa.kind != FeatureKind::Base) continue;
        if (fs.kind == FeatureKind::Selector) {
          if (auto r = combine(MGRule::Merge, sel, &arg)) push(std::move(*r));
        } else if (fs.kind == FeatureKind::HeadSelector) {
          if (auto r = combine(MGRule::HeadMove, sel, &arg)) push(std::move(*r));
        }
      }
    }
  }

  const MGLexicon& lex_;
  Mode mode_;
  std::deque<Item> chart_;
  std::deque<Item> agenda_;
};

}  // namespace

std::vector<MGDerivation> mg_derive(const MGLexicon& lexicon, const std::vector<std::string>& sentence,
                                    std::size_t step_bound) {
  Mode mode;
  mode.parse = true;
  mode.step_bound = step_bound;
  for (const auto& w : sentence) {
    bool known = std::any_of(lexicon.entries.begin(), lexicon.entries.end(), [&](const MGEntry& e) {
      return std::find(e.seq.phon.begin(), e.seq.phon.end(), w) != e.seq.phon.end();
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
  Search search(lexicon, mode);
  std::vector<MGDerivation> out;
  for (const auto& it : search.run()) {
    if (tree_yield(*it.tree) != sentence) continue;
    MGDerivation d;
    flatten(it.deriv, d);
    out.push_back(std::move(d));
  }
  return out;
}

std::set<Phon> mg_generate(const MGLexicon& lexicon, std::size_t max_words, std::size_t step_bound) {
  Mode mode;
  mode.parse = false;
  mode.max_words = max_words;
  mode.step_bound = step_bound;
  Search search(lexicon, mode);
  std::set<Phon> out;
  for (const auto& it : search.run()) out.insert(tree_yield(*it.tree));
  return out;
}

}  // namespace mgcat::mg
