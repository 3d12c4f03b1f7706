#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "minesweeper/cds.hpp"
#include "minesweeper/constraint_tree.hpp"
#include "minesweeper/querygraph.hpp"

namespace minesweeper {

using Chain = std::vector<ConstraintTree::Node*>;

/// Smallest y >= x not covered by chain[u..]'s intervals; chain[0] is the
/// most specialized node. Memoizes <P(chain[u]), (x-1, y)> when u is not
/// the top of the chain.
Value nextChainVal(ConstraintTree& tree, Value x, std::size_t u, const Chain& chain,
                   CdsCounters* counters = nullptr);

/// Shadow chain entry: the node standing in for `original` (possibly itself).
struct ShadowEntry {
  ConstraintTree::Node* shadow = nullptr;
  ConstraintTree::Node* original = nullptr;
};
using ShadowChain = std::vector<ShadowEntry>;

/// Orders a principal filter bottom-up: more equalities first, ties by
/// pattern (wildcard before value, then value).
void linearize(std::vector<ConstraintTree::Node*>& nodes);

/// Shadow patterns for a linearized filter: result[j] = meet of P(nodes[j..]).
std::vector<Pattern> shadowPatterns(const std::vector<ConstraintTree::Node*>& nodes);

/// Shadow analogue of nextChainVal. Memoization lands on the shadow node.
Value nextShadowChainVal(ConstraintTree& tree, Value x, std::size_t j, const ShadowChain& chain,
                         CdsCounters* counters = nullptr);

/// ConstraintTree-backed store with the chain (beta) or shadow-chain
/// (general) probe strategy.
class TreeCds : public Cds {
 public:
  /// mode must be BetaChain or ShadowGeneral.
  TreeCds(int n, ProbeMode mode);

  std::optional<Tuple> getProbePoint() override;
  void insConstraint(const Constraint& c) override;

  ConstraintTree& tree() { return tree_; }
  ProbeMode mode() const { return mode_; }

 private:
  Value chooseValue(std::vector<ConstraintTree::Node*>& filter, Pattern& bottom);

  ConstraintTree tree_;
  ProbeMode mode_;
};

}  // namespace minesweeper
