#include "minesweeper/probe.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace minesweeper {

namespace {

bool patternLess(const Pattern& a, const Pattern& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].has_value() != b[i].has_value()) return !a[i].has_value();
    if (a[i] && *a[i] != *b[i]) return *a[i] < *b[i];
  }
  return a.size() < b.size();
}

// Remember that [x, y) is unavailable below `node`. Nothing to record when
// the search did not move.
void memoize(ConstraintTree& tree, const ConstraintTree::Node* node, Value x, Value y,
             CdsCounters* counters) {
  if (y == x) return;
  tree.insert(Constraint{node->pattern, pred(x), y});
  if (counters) {
    ++counters->memoInsertions;
    ++counters->insertions;
  }
}

// 1-based index of the last equality component; 0 if none.
std::size_t lastEquality(const Pattern& p) {
  for (std::size_t k = p.size(); k > 0; --k)
    if (p[k - 1]) return k;
  return 0;
}

}  // namespace

Value nextChainVal(ConstraintTree& tree, Value x, std::size_t u, const Chain& chain,
                   CdsCounters* counters) {
  if (x == kPosInf) return kPosInf;
  if (u + 1 == chain.size()) return chain[u]->intervals.next(x);
  Value y = x, z = x;
  do {
    z = nextChainVal(tree, y, u + 1, chain, counters);
    y = chain[u]->intervals.next(z);
  } while (y != z);
  memoize(tree, chain[u], x, y, counters);
  return y;
}

void linearize(std::vector<ConstraintTree::Node*>& nodes) {
  std::stable_sort(nodes.begin(), nodes.end(), [](const auto* a, const auto* b) {
    int ea = equalityCount(a->pattern), eb = equalityCount(b->pattern);
    if (ea != eb) return ea > eb;
    return patternLess(a->pattern, b->pattern);
  });
}

std::vector<Pattern> shadowPatterns(const std::vector<ConstraintTree::Node*>& nodes) {
  std::vector<Pattern> out(nodes.size());
  for (std::size_t j = nodes.size(); j-- > 0;)
    out[j] = j + 1 == nodes.size() ? nodes[j]->pattern : meet(nodes[j]->pattern, out[j + 1]);
  return out;
}

Value nextShadowChainVal(ConstraintTree& tree, Value x, std::size_t j, const ShadowChain& chain,
                         CdsCounters* counters) {
  if (x == kPosInf) return kPosInf;
  const ShadowEntry& e = chain[j];
  Chain pair{e.shadow};
  if (e.original != e.shadow) pair.push_back(e.original);
  if (j + 1 == chain.size()) return nextChainVal(tree, x, 0, pair, counters);
  Value y = x, z = x;
  do {
    z = nextShadowChainVal(tree, y, j + 1, chain, counters);
    y = nextChainVal(tree, z, 0, pair, counters);
  } while (y != z);
  memoize(tree, e.shadow, x, y, counters);
  return y;
}

TreeCds::TreeCds(int n, ProbeMode mode) : tree_(n), mode_(mode) {
  if (mode != ProbeMode::BetaChain && mode != ProbeMode::ShadowGeneral)
    throw std::invalid_argument("TreeCds supports the beta and general probe modes only");
}

void TreeCds::insConstraint(const Constraint& c) {
  tree_.insert(c);
  ++counters_.insertions;
}

Value TreeCds::chooseValue(std::vector<ConstraintTree::Node*>& filter, Pattern& bottom) {
  linearize(filter);
  if (mode_ == ProbeMode::BetaChain) {
    for (std::size_t j = 0; j + 1 < filter.size(); ++j)
      if (!generalizes(filter[j + 1]->pattern, filter[j]->pattern))
        throw std::logic_error("principal filter is not a chain: " + formatPattern(filter[j]->pattern) +
                               " vs " + formatPattern(filter[j + 1]->pattern));
    bottom = filter.front()->pattern;
    return nextChainVal(tree_, -1, 0, filter, &counters_);
  }

  std::vector<Pattern> shadows = shadowPatterns(filter);
  ShadowChain chain;
  for (std::size_t j = 0; j < filter.size(); ++j) {
    ConstraintTree::Node* node = tree_.find(shadows[j]);
    if (!node) {
      tree_.insert(Constraint{shadows[j], kNegInf, 0});
      ++counters_.shadowNodes;
      ++counters_.insertions;
      node = tree_.find(shadows[j]);
      if (!node) throw std::logic_error("shadow node was not created for " + formatPattern(shadows[j]));
    }
    chain.push_back({node, filter[j]});
  }
  bottom = shadows.front();
  return nextShadowChainVal(tree_, -1, 0, chain, &counters_);
}

std::optional<Tuple> TreeCds::getProbePoint() {
  const int n = tree_.arity();
  Tuple t(static_cast<std::size_t>(n), -1);
  int i = 0;
  while (i < n) {
    Tuple prefix(t.begin(), t.begin() + i);
    std::vector<ConstraintTree::Node*> filter = tree_.principalFilter(prefix);
    if (filter.empty()) {
      t[static_cast<std::size_t>(i)] = -1;
      ++i;
      continue;
    }
    Pattern bottom;
    Value v = chooseValue(filter, bottom);
    if (v != kPosInf) {
      t[static_cast<std::size_t>(i)] = v;
      ++i;
      continue;
    }
    std::size_t i0 = lastEquality(bottom);
    if (i0 == 0) return std::nullopt;
    Value p = *bottom[i0 - 1];
    Constraint back{Pattern(bottom.begin(), bottom.begin() + static_cast<std::ptrdiff_t>(i0 - 1)), p - 1, p + 1};
    tree_.insert(back);
    ++counters_.backtracks;
    ++counters_.insertions;
    if (trace_) emit("backtrack " + formatConstraint(back, n));
    i = static_cast<int>(i0) - 1;
  }
  return t;
}

}  // namespace minesweeper
