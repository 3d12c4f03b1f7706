#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace minesweeper {

/// Dictionary-encoded domain value. The two extremes are reserved as the
/// -inf / +inf sentinels and are never produced by encoding.
using Value = std::int64_t;

inline constexpr Value kNegInf = std::numeric_limits<Value>::min();
inline constexpr Value kPosInf = std::numeric_limits<Value>::max();

/// Stored values live in [0, kMaxStoredValue]; probes start at -1.
inline constexpr Value kMaxStoredValue = Value{1} << 62;
inline bool isInfinite(Value v) { return v == kNegInf || v == kPosInf; }

/// Tuple over the output space, indexed by GAO position.
using Tuple = std::vector<Value>;

inline std::string formatValue(Value v) {
  if (v == kNegInf) return "-inf";
  if (v == kPosInf) return "+inf";
  return std::to_string(v);
}

// Saturating neighbours; the sentinels absorb.
inline Value pred(Value v) { return isInfinite(v) ? v : v - 1; }
inline Value succ(Value v) { return isInfinite(v) ? v : v + 1; }

/// Bad input data (malformed files, arity mismatches, unparseable values).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Index tuple or variable that does not exist in an instance's index shape.
struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace minesweeper
