#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minesweeper/engine.hpp"
#include "minesweeper/storage.hpp"

namespace minesweeper {

/// Symbolic variable R[x]: relation index plus index tuple.
struct Variable {
  int relation = 0;
  IndexTuple index;
  auto operator<=>(const Variable&) const = default;
};

enum class CmpOp { Less, Equal, Greater };

struct Comparison {
  Variable left;
  CmpOp op = CmpOp::Equal;
  Variable right;
  auto operator<=>(const Comparison&) const = default;
};

using Argument = std::vector<Comparison>;

/// One full index tuple per relation.
using Witness = std::vector<IndexTuple>;

struct JoinResult {
  std::vector<Tuple> tuples;       // attribute-id order, sorted
  std::vector<Witness> witnesses;  // sorted
};

/// Reference join by backtracking over the GAO against per-relation prefix
/// sets. Independent of the engine; meant for small instances.
JoinResult nestedLoopJoin(const Instance& inst, const Gao& gao);

/// Star equalities inside each group of equal-valued variables plus a <
/// chain across groups, for every attribute.
Argument buildUpperBoundCertificate(const Instance& inst, const Gao& gao);

/// Throws ShapeMismatch if a variable does not exist in the indexes, and
/// std::invalid_argument if the two sides belong to different attributes.
bool verifySatisfies(const std::vector<TrieIndex>& indexes, const Argument& arg);
bool verifySatisfies(const Instance& inst, const Gao& gao, const Argument& arg);

struct EquivalenceResult {
  bool equivalent = false;
  /// One of the instances does not satisfy the argument; nothing was compared.
  bool vacuous = false;
};

/// Compares witness sets of two instances with the same index shape that
/// both satisfy `arg`. Throws ShapeMismatch when the shapes differ.
EquivalenceResult witnessEquivalenceCheck(const Argument& arg, const Instance& a, const Instance& b,
                                          const Gao& gao);

/// Applies a random strictly increasing map to the values of each attribute.
Instance reValue(const Instance& inst, std::mt19937_64& rng);

/// `R[1,2] < S[1]`, one comparison per line.
std::string formatArgument(const Argument& arg, const Hypergraph& query);
Argument parseArgument(const std::string& text, const Hypergraph& query);

}  // namespace minesweeper
