#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minesweeper/engine.hpp"

namespace minesweeper {

struct BaselineResult {
  std::vector<Tuple> tuples;  // attribute-id order, sorted
  std::uint64_t work = 0;
};

/// Galloping multiway merge for single-attribute queries; work counts
/// comparisons. Throws std::invalid_argument for other queries.
BaselineResult mergeIntersection(const Instance& inst);

/// Full semijoin reduction over a GYO join tree, then bottom-up joins; work
/// counts tuples touched. Throws std::invalid_argument unless alpha-acyclic.
BaselineResult yannakakis(const Instance& inst);

/// Backtracking multiway trie join over `gao` with leapfrog intersection at
/// every attribute; work counts seeks plus partial tuples bound.
BaselineResult leapfrogJoin(const Instance& inst, const Gao& gao);

/// "merge" | "yannakakis" | "leapfrog"; the GAO is used by leapfrog only.
BaselineResult runBaseline(const std::string& name, const Instance& inst, const Gao& gao);

}  // namespace minesweeper
