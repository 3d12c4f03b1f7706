#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minesweeper/sorted_list.hpp"
#include "minesweeper/types.hpp"

namespace minesweeper {

/// Inclusive integer range [first, second].
using ClosedRange = std::pair<Value, Value>;

/// Union of open intervals, kept as disjoint pieces whose endpoints are
/// tagged left, right, or mixed (right end of one piece and left end of the
/// next; the point itself stays uncovered).
class IntervalList {
 public:
  enum class Tag : std::uint8_t { L, R, M };

  /// Smallest v' >= v covered by no stored interval.
  Value next(Value v) const;
  bool covers(Value v) const;
  /// Throws std::invalid_argument if lo >= hi.
  void insert(Value lo, Value hi);

  bool empty() const { return ends_.empty(); }
  /// Stored pieces as open intervals, left to right.
  std::vector<std::pair<Value, Value>> pieces() const;
  /// Maximal runs of covered integers inside [a, b].
  std::vector<ClosedRange> coveredRanges(Value a, Value b) const;
  /// Maximal runs of uncovered integers inside [a, b].
  std::vector<ClosedRange> uncoveredRanges(Value a, Value b) const;
  /// Every integer of [a, b] is covered.
  bool coversRange(Value a, Value b) const;
  std::string toString() const;

  /// Per-thread count of next() calls; the engine reports deltas of it.
  static std::uint64_t nextCalls() { return nextCalls_; }

 private:
  SortedList<Tag> ends_;
  static thread_local std::uint64_t nextCalls_;
};

/// Smallest v' >= v covered by neither list (alternating next() calls).
Value nextUnion(const IntervalList& a, const IntervalList& b, Value v);

/// Open interval (lo, hi) as the integer range it covers; empty when
/// first > second.
inline ClosedRange toClosed(Value lo, Value hi) { return {succ(lo), pred(hi)}; }

}  // namespace minesweeper
