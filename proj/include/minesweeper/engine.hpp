#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minesweeper/cds.hpp"
#include "minesweeper/querygraph.hpp"
#include "minesweeper/storage.hpp"

namespace minesweeper {

/// A query together with its data; relation i belongs to edge i and holds
/// columns in the order of its `attrs` (a permutation of the edge's).
struct Instance {
  Hypergraph query;
  std::vector<Relation> relations;

  /// Largest relation size.
  std::size_t maxRelationSize() const;
  std::size_t totalTuples() const;
  /// Throws std::invalid_argument if relations and edges disagree.
  void validate() const;
};

/// One trie per relation, keyed consistently with `gao`.
std::vector<TrieIndex> buildIndexes(const Instance& inst, const Gao& gao);

struct QueryPlan {
  Hypergraph query;
  Gao gao;
  ProbeMode mode = ProbeMode::ShadowGeneral;
};

/// Validates a requested GAO/mode against the query (nullopt = choose).
/// Throws std::invalid_argument when beta mode is asked for a GAO that is
/// not a nested elimination order, or triangle mode for another query.
QueryPlan makePlan(const Hypergraph& query, std::optional<Gao> gao = std::nullopt,
                   std::optional<ProbeMode> mode = std::nullopt);

struct EngineStats {
  std::uint64_t probeCalls = 0;           // includes the final call returning nothing
  std::uint64_t constraintsInserted = 0;  // gap and output constraints from the outer loop
  std::uint64_t findGapCalls = 0;
  std::uint64_t outputCount = 0;
  std::uint64_t comparisons = 0;          // index comparisons during FindGap
  std::uint64_t cdsInsertions = 0;        // including memo, shadow and backtrack constraints
  std::uint64_t backtracks = 0;
  std::uint64_t cdsWork = 0;              // interval-list Next calls
};

struct EngineOptions {
  TraceFn trace;
  /// Constraints inserted before the first probe (not counted).
  std::vector<Constraint> initialConstraints;
  /// Keep, per iteration, the deduplicated constraints the outer loop inserted.
  bool recordSteps = false;
};

struct EvalResult {
  std::vector<Tuple> tuples;  // GAO order, in emission order
  EngineStats stats;
  std::vector<Tuple> probes;                       // when recordSteps
  std::vector<std::vector<Constraint>> steps;      // when recordSteps, sorted
};

/// Builds the store matching plan.mode.
std::unique_ptr<Cds> makeCds(const QueryPlan& plan, const std::vector<TrieIndex>& indexes);

EvalResult evaluate(const QueryPlan& plan, const std::vector<TrieIndex>& indexes,
                    const EngineOptions& options = {});
EvalResult evaluate(const QueryPlan& plan, const Instance& inst, const EngineOptions& options = {});

/// GAO-ordered tuple back to attribute-id order.
Tuple toAttributeOrder(const Tuple& t, const Gao& gao);

struct StatsReport {
  EngineStats stats;
  std::uint64_t certUB = 0;
  std::uint64_t outputZ = 0;
  int m = 0;
  int r = 0;
  double probeReference = 0;       // 2^r * certUB + Z
  double constraintReference = 0;  // m * 4^r * certUB + Z
  double probeRatio = 0;
  double constraintRatio = 0;
};

StatsReport statsReport(const EngineStats& stats, std::uint64_t certUB, std::uint64_t z, int m, int r);
std::string statsJson(const EngineStats& stats);

}  // namespace minesweeper
