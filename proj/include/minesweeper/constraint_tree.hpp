#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minesweeper/interval_list.hpp"
#include "minesweeper/sorted_list.hpp"
#include "minesweeper/types.hpp"

namespace minesweeper {

/// Equality value, or nullopt for the wildcard.
using Component = std::optional<Value>;
using Pattern = std::vector<Component>;

/// <prefix..., (lo, hi), *, ...>: the interval sits at GAO position prefix.size().
struct Constraint {
  Pattern prefix;
  Value lo = kNegInf;
  Value hi = kPosInf;

  int position() const { return static_cast<int>(prefix.size()); }
  bool operator==(const Constraint&) const = default;
  bool operator<(const Constraint& o) const;
};

/// `<*,=2,(-inf,2)>`, padded with trailing wildcards up to n components.
std::string formatConstraint(const Constraint& c, int n);
std::string formatPattern(const Pattern& p);

/// Does tuple t (GAO order, length n) satisfy c?
bool satisfies(const Tuple& t, const Constraint& c);

/// p generalizes q (p ⪰ q): same length, every equality of p appears in q.
bool generalizes(const Pattern& p, const Pattern& q);
/// Meet of two equal-length patterns whose equalities agree.
Pattern meet(const Pattern& p, const Pattern& q);
int equalityCount(const Pattern& p);

class ConstraintTree {
 public:
  struct Node {
    Pattern pattern;
    IntervalList intervals;
    SortedList<std::unique_ptr<Node>> equalities;
    std::unique_ptr<Node> star;

    int depth() const { return static_cast<int>(pattern.size()); }
  };

  /// n = number of attributes.
  explicit ConstraintTree(int n);

  int arity() const { return n_; }

  /// InsertTree. Returns false if an equality component was already ruled
  /// out on the path (the constraint is subsumed). Intervals with lo < 0
  /// are widened to (-inf, hi). Throws std::invalid_argument on lo >= hi
  /// or a prefix of length >= n.
  bool insert(const Constraint& c);

  Node& root() { return *root_; }
  const Node& root() const { return *root_; }
  Node* find(const Pattern& p);

  /// Nodes at depth prefix.size() with nonempty intervals whose pattern
  /// generalizes the prefix.
  std::vector<Node*> principalFilter(const Tuple& prefix);

  /// One line per node with intervals or children: `pattern | intervals | labels`.
  std::string dump() const;

  std::uint64_t insertCalls() const { return insertCalls_; }
  std::size_t nodesCreated() const { return nodesCreated_; }

 private:
  int n_;
  std::unique_ptr<Node> root_;
  std::uint64_t insertCalls_ = 0;
  std::size_t nodesCreated_ = 1;
};

}  // namespace minesweeper
