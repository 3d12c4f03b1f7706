#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "minesweeper/constraint_tree.hpp"
#include "minesweeper/types.hpp"

namespace minesweeper {

using TraceFn = std::function<void(const std::string&)>;

/// Bookkeeping shared by every constraint store.
struct CdsCounters {
  std::uint64_t backtracks = 0;
  std::uint64_t memoInsertions = 0;
  std::uint64_t shadowNodes = 0;
  std::uint64_t insertions = 0;  // every InsConstraint, internal ones included
};

/// What the outer loop needs from a constraint store.
class Cds {
 public:
  virtual ~Cds() = default;

  /// An active tuple (GAO order), or nullopt when none is left.
  virtual std::optional<Tuple> getProbePoint() = 0;
  virtual void insConstraint(const Constraint& c) = 0;
  /// Called after the outer loop emits t and stores its output constraint.
  virtual void onOutput(const Tuple& t) { (void)t; }

  const CdsCounters& counters() const { return counters_; }
  void setTrace(TraceFn fn) { trace_ = std::move(fn); }

 protected:
  void emit(const std::string& line) const {
    if (trace_) trace_(line);
  }

  CdsCounters counters_;
  TraceFn trace_;
};

}  // namespace minesweeper
