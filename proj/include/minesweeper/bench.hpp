#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minesweeper/engine.hpp"

namespace minesweeper {

struct BenchRow {
  std::string instance;
  std::string mode;
  double param = 0;  // the scaled size parameter (M, N, n, ...)
  std::uint64_t inputSize = 0;
  std::uint64_t outputZ = 0;
  std::uint64_t certUB = 0;
  EngineStats stats;
  /// Baseline name -> work counter.
  std::map<std::string, std::uint64_t> baselineWork;
  double wallMs = 0;
};

struct BenchSuite {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<BenchRow> rows;
};

/// v[i+1] / v[i]; zero where v[i] is zero.
std::vector<double> doublingRatios(const std::vector<double>& v);

/// Known suites: pathHard, setIntersect, triangleContrast, bowtie, empty.
/// Throws std::invalid_argument for anything else.
BenchSuite runSuite(const std::string& name, std::uint64_t seed);
std::vector<std::string> suiteNames();

/// JSON report; doubling-ratio tables are grouped per mode. Timing fields
/// are omitted when `withTiming` is false.
std::string benchJson(const std::vector<BenchSuite>& suites, bool withTiming = true);

}  // namespace minesweeper
