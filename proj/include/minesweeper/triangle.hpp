#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "minesweeper/cds.hpp"
#include "minesweeper/interval_list.hpp"

namespace minesweeper {

/// Interval lists indexed by the dyadic intervals of [0, N), N = 2^depth.
/// Node ids use heap layout: root 1, children 2x and 2x+1, leaf for b is N+b.
/// Every internal node covers exactly what both of its children cover.
class DyadicTree {
 public:
  explicit DyadicTree(int depth);

  int depth() const { return depth_; }
  Value domain() const { return n_; }
  std::size_t root() const { return 1; }
  std::size_t leaf(Value b) const { return static_cast<std::size_t>(n_ + b); }
  bool isLeaf(std::size_t node) const { return node >= static_cast<std::size_t>(n_); }
  int nodeDepth(std::size_t node) const;
  /// Closed B-range [lo, hi] of a node.
  ClosedRange range(std::size_t node) const;
  /// Pre-order successor skipping the subtree of `node`; nullopt when done.
  std::optional<std::size_t> nextSibling(std::size_t node) const;

  /// Minimal dyadic cover of [a1, a2]; throws std::out_of_range outside [0, N).
  std::vector<std::size_t> decompose(Value a1, Value a2) const;

  /// Adds (lo, hi) to the leaf of b and floats new coverage upward.
  void insert(Value b, Value lo, Value hi);
  /// Marks every C value as covered for each b in [b1, b2].
  void fill(Value b1, Value b2);

  const IntervalList& list(std::size_t node) const { return lists_[node]; }

 private:
  void addAt(std::size_t node, Value lo, Value hi);
  void fillDown(std::size_t node);

  int depth_;
  Value n_;
  std::vector<IntervalList> lists_;
};

/// Smallest v' >= v covered by none of the lists.
Value nextUnionAll(const std::vector<const IntervalList*>& lists, Value v);

/// Store specialised to R(A,B), S(B,C), T(A,C) with GAO positions A=0,
/// B=1, C=2. B values must lie in [0, 2^depth).
class TriangleCds : public Cds {
 public:
  /// maxB: largest B value any relation holds (or -1 when there is none).
  explicit TriangleCds(Value maxB);

  std::optional<Tuple> getProbePoint() override;
  void insConstraint(const Constraint& c) override;
  void onOutput(const Tuple& t) override;

  const DyadicTree& dyadic() const { return dyadic_; }
  /// The two constraints fencing B into [0, N); inserted at construction.
  std::vector<Constraint> clampConstraints() const;

 private:
  Value getCache(Value a, std::size_t node) const;
  void setCache(Value a, std::size_t node, Value c);
  const IntervalList& listOrEmpty(const std::map<Value, IntervalList>& m, Value key) const;
  void insertB(Value a, Value lo, Value hi);
  void insertStarB(Value lo, Value hi);
  bool bRangeDead(const IntervalList& ia, ClosedRange r) const;

  DyadicTree dyadic_;
  IntervalList ia_;                              // I()
  IntervalList iStar_;                           // I(*)
  std::map<Value, IntervalList> iEqA_;           // I(=a)
  std::map<Value, IntervalList> iEqAStar_;       // I(=a,*)
  std::map<std::pair<Value, Value>, IntervalList> iEqAB_;  // I(=a,=b)
  std::map<std::pair<Value, std::size_t>, Value> cache_;
  IntervalList empty_;
};

}  // namespace minesweeper
