#include "minesweeper/bench.hpp"

#include <chrono>
#include <stdexcept>

#include "json.hpp"
#include "minesweeper/baselines.hpp"
#include "minesweeper/certlab.hpp"
#include "minesweeper/generators.hpp"

namespace minesweeper {

std::vector<double> doublingRatios(const std::vector<double>& v) {
  std::vector<double> out;
  for (std::size_t i = 1; i < v.size(); ++i) out.push_back(v[i - 1] == 0 ? 0.0 : v[i] / v[i - 1]);
  return out;
}

namespace {

BenchRow measure(const std::string& id, double param, const Instance& inst, std::optional<ProbeMode> mode,
                 const std::vector<std::string>& baselines, const std::vector<Constraint>& initial = {}) {
  QueryPlan plan = makePlan(inst.query, std::nullopt, mode);
  BenchRow row;
  row.instance = id;
  row.mode = modeName(plan.mode);
  row.param = param;
  row.inputSize = inst.totalTuples();
  row.certUB = buildUpperBoundCertificate(inst, plan.gao).size();
  EngineOptions opts;
  opts.initialConstraints = initial;
  auto start = std::chrono::steady_clock::now();
  EvalResult res = evaluate(plan, inst, opts);
  row.wallMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.stats = res.stats;
  row.outputZ = res.stats.outputCount;
  for (const auto& b : baselines) row.baselineWork[b] = runBaseline(b, inst, plan.gao).work;
  return row;
}

}  // namespace

std::vector<std::string> suiteNames() { return {"pathHard", "setIntersect", "triangleContrast", "bowtie", "empty"}; }

BenchSuite runSuite(const std::string& name, std::uint64_t seed) {
  BenchSuite suite{name, seed, {}};
  if (name == "pathHard") {
    for (int M : {16, 32, 64, 128})
      suite.rows.push_back(measure("pathHard(5," + std::to_string(M) + ")", M, pathHard(5, M), std::nullopt,
                                   {"leapfrog", "yannakakis"}));
  } else if (name == "setIntersect") {
    for (int N : {1000, 10000, 100000})
      suite.rows.push_back(measure("setIntersectDisjoint(" + std::to_string(N) + ")", N, setIntersectDisjoint(N),
                                   std::nullopt, {"merge"}));
  } else if (name == "triangleContrast") {
    for (int n : {16, 32, 64, 128}) {
      Instance inst = triangleContrast(n);
      std::string id = "triangleContrast(" + std::to_string(n) + ")";
      suite.rows.push_back(measure(id, n, inst, ProbeMode::ShadowGeneral, {"leapfrog"}));
      suite.rows.push_back(measure(id, n, inst, ProbeMode::Triangle, {}));
    }
  } else if (name == "bowtie") {
    for (int n : {64, 128, 256, 512})
      suite.rows.push_back(measure("bowtieRandom(" + std::to_string(n) + ")", n, bowtieRandom(n, 0.05, seed),
                                   std::nullopt, {"leapfrog", "yannakakis"}));
  } else if (name != "empty") {
    throw std::invalid_argument("unknown suite " + name);
  }
  return suite;
}

std::string benchJson(const std::vector<BenchSuite>& suites, bool withTiming) {
  using nlohmann::json;
  json out = {{"suites", json::array()}};
  for (const auto& s : suites) {
    json js = {{"name", s.name}, {"seed", s.seed}, {"runs", json::array()}, {"scaling", json::object()}};
    std::map<std::string, std::vector<const BenchRow*>> byMode;
    for (const auto& r : s.rows) {
      json jr = {{"instance", r.instance},
                 {"mode", r.mode},
                 {"param", r.param},
                 {"N", r.inputSize},
                 {"Z", r.outputZ},
                 {"certUB", r.certUB},
                 {"probeCalls", r.stats.probeCalls},
                 {"constraintsInserted", r.stats.constraintsInserted},
                 {"findGapCalls", r.stats.findGapCalls},
                 {"comparisons", r.stats.comparisons},
                 {"cdsInsertions", r.stats.cdsInsertions},
                 {"cdsWork", r.stats.cdsWork},
                 {"baselineWork", r.baselineWork}};
      if (withTiming) jr["wallMs"] = r.wallMs;
      js["runs"].push_back(std::move(jr));
      byMode[r.mode].push_back(&r);
    }
    for (const auto& [mode, rows] : byMode) {
      auto column = [&](auto get) {
        std::vector<double> v;
        for (const BenchRow* r : rows) v.push_back(static_cast<double>(get(*r)));
        return doublingRatios(v);
      };
      json table = {{"param", column([](const BenchRow& r) { return r.param; })},
                    {"probeCalls", column([](const BenchRow& r) { return r.stats.probeCalls; })},
                    {"constraintsInserted", column([](const BenchRow& r) { return r.stats.constraintsInserted; })},
                    {"cdsWork", column([](const BenchRow& r) { return r.stats.cdsWork; })},
                    {"certUB", column([](const BenchRow& r) { return r.certUB; })}};
      std::map<std::string, bool> names;
      for (const BenchRow* r : rows)
        for (const auto& [b, w] : r->baselineWork) names[b] = true;
      for (const auto& [b, unused] : names)
        table["baseline:" + b] = column([&, b = b](const BenchRow& r) {
          auto it = r.baselineWork.find(b);
          return it == r.baselineWork.end() ? 0 : it->second;
        });
      js["scaling"][mode] = std::move(table);
    }
    out["suites"].push_back(std::move(js));
  }
  return out.dump(2);
}

}  // namespace minesweeper
