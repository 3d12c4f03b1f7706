#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minesweeper/querygraph.hpp"
#include "minesweeper/types.hpp"

namespace minesweeper {

/// 1-based coordinates into a trie, one per level.
using IndexTuple = std::vector<int>;

/// A set of tuples over `attrs`; column j holds attribute attrs[j].
struct Relation {
  std::string name;
  std::vector<AttrId> attrs;
  std::vector<std::vector<Value>> tuples;

  int arity() const { return static_cast<int>(attrs.size()); }
  /// Sorts and removes duplicate rows.
  void normalize();
};

/// Copy of `rel` with columns permuted into GAO order.
Relation alignedTo(const Relation& rel, const Gao& gao);

/// Half-open range of positions inside one trie level.
struct TrieRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
};

struct Gap {
  int lo = 0;  // x-
  int hi = 0;  // x+
};

/// Flattened trie: level j stores the values of every node at depth j,
/// grouped by parent, plus offsets into level j+1.
class TrieIndex {
 public:
  TrieIndex() = default;

  /// Throws std::invalid_argument when rel's attributes are not strictly
  /// increasing in GAO position or a tuple has the wrong arity; throws
  /// DataError for values outside [0, kMaxStoredValue].
  static TrieIndex build(const Relation& rel, const Gao& gao);

  const std::string& name() const { return name_; }
  int arity() const { return static_cast<int>(levels_.size()); }
  /// GAO position of the attribute stored at each level.
  const std::vector<int>& positions() const { return positions_; }
  std::size_t tupleCount() const { return levels_.empty() ? 0 : levels_.back().values.size(); }

  // Cursor-level API used by the engine and the baselines.
  TrieRange rootRange() const;
  TrieRange childRange(int level, std::size_t pos) const;
  Value valueAt(int level, std::size_t pos) const { return levels_[static_cast<std::size_t>(level)].values[pos]; }
  /// FindGap inside one sibling range; coordinates are 1-based relative to it.
  Gap findGapIn(int level, TrieRange range, Value a) const;
  /// First position in `range` whose value is >= a (galloping from range.begin).
  std::size_t seek(int level, TrieRange range, Value a) const;

  // Index-tuple API.
  std::size_t fanout(const IndexTuple& x) const;
  Value access(const IndexTuple& x) const;
  Gap findGap(const IndexTuple& x, Value a) const;
  /// Index tuple of a full tuple stored in the relation; throws if absent.
  IndexTuple locate(const std::vector<Value>& tuple) const;
  /// All distinct prefix index tuples of length `len` (1..arity).
  std::vector<IndexTuple> indexTuples(int len) const;

  std::uint64_t comparisons() const { return comparisons_; }
  void resetComparisons() const { comparisons_ = 0; }

 private:
  struct Level {
    std::vector<Value> values;
    std::vector<std::size_t> childBegin;  // size values.size()+1 except on the last level
  };

  TrieRange resolve(const IndexTuple& x, std::size_t len) const;

  std::string name_;
  std::vector<int> positions_;
  std::vector<Level> levels_;
  mutable std::uint64_t comparisons_ = 0;
};

/// Order-preserving per-attribute code assignment for raw string values.
class Dictionary {
 public:
  enum class Order { Lexicographic, Numeric };

  explicit Dictionary(Order order = Order::Lexicographic) : order_(order) {}

  Order order() const { return order_; }
  /// Throws DataError in numeric mode if `raw` is not an integer.
  void add(const std::string& raw);
  /// Assigns codes 0..D-1 in raw order. Further add() calls are rejected.
  void finalize();
  bool finalized() const { return finalized_; }
  std::size_t size() const { return decoded_.size(); }

  Value encode(const std::string& raw) const;
  const std::string& decode(Value code) const;

 private:
  std::int64_t parseNumber(const std::string& raw) const;

  Order order_;
  bool finalized_ = false;
  std::map<std::string, Value> lexCodes_;
  std::map<std::int64_t, Value> numCodes_;
  std::map<std::int64_t, std::string> numSpelling_;
  std::vector<std::string> decoded_;
};

}  // namespace minesweeper
