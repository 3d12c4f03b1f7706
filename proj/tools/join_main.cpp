// join: command-line front end for the Minesweeper engine.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "minesweeper/baselines.hpp"
#include "minesweeper/bench.hpp"
#include "minesweeper/certlab.hpp"
#include "minesweeper/engine.hpp"
#include "minesweeper/generators.hpp"
#include "minesweeper/io.hpp"

namespace ms = minesweeper;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readQueryArg(const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

std::optional<ms::Gao> parseGao(const std::string& text, const ms::Hypergraph& q) {
  if (text.empty()) return std::nullopt;
  std::vector<ms::AttrId> order;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto id = q.findAttribute(name);
    if (!id) throw UsageError("unknown attribute in --gao: " + name);
    order.push_back(*id);
  }
  return ms::Gao(order);
}

std::optional<ms::ProbeMode> parseMode(const std::string& m) {
  if (m == "auto") return std::nullopt;
  if (m == "beta") return ms::ProbeMode::BetaChain;
  if (m == "general") return ms::ProbeMode::ShadowGeneral;
  if (m == "triangle") return ms::ProbeMode::Triangle;
  throw UsageError("unknown mode " + m);
}

std::string gaoText(const ms::Gao& g, const ms::Hypergraph& q) {
  std::string s;
  for (int k = 0; k < g.size(); ++k) s += (k ? "," : "") + q.attributes()[static_cast<std::size_t>(g.at(k))];
  return s;
}

char delimiterFrom(const std::string& d) {
  if (d == "tab" || d == "\\t") return '\t';
  if (d == "comma") return ',';
  if (d.size() != 1) throw UsageError("delimiter must be one character, 'tab' or 'comma'");
  return d[0];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instance-sensitive natural join evaluation (Minesweeper)"};
  app.require_subcommand(1);

  std::string queryArg, dataDir, gaoArg, modeArg = "auto", report, delimiter = "tab", baseline, certOut;
  std::string suite, family, outDir;
  std::vector<double> params;
  std::uint64_t seed = 1;
  bool trace = false, header = false, numeric = false, listNeos = false;

  auto* run = app.add_subcommand("run", "Evaluate a query over delimited files");
  run->add_option("--query", queryArg, "Query text or a file holding it")->required();
  run->add_option("--data-dir", dataDir, "Directory with one <Atom>.tsv/.csv per atom")->required();
  run->add_option("--gao", gaoArg, "Comma-separated attribute order");
  run->add_option("--mode", modeArg, "auto|beta|general|triangle");
  run->add_option("--report", report, "Write engine counters as JSON");
  run->add_option("--delimiter", delimiter, "Field delimiter (tab, comma or a character)");
  run->add_option("--baseline", baseline, "Also run merge|yannakakis|leapfrog and compare");
  run->add_flag("--header", header, "Skip the first line of each file");
  run->add_flag("--numeric", numeric, "Order values numerically; non-integers are errors");
  run->add_flag("--trace", trace, "Print probes and constraints to stderr");

  auto* analyze = app.add_subcommand("analyze", "Report acyclicity, GAO choice and certificate size");
  analyze->add_option("--query", queryArg, "Query text or a file holding it")->required();
  analyze->add_option("--data-dir", dataDir, "Optional data for certificate statistics");
  analyze->add_option("--gao", gaoArg, "Comma-separated attribute order");
  analyze->add_option("--delimiter", delimiter, "Field delimiter");
  analyze->add_option("--cert", certOut, "Write the upper-bound certificate here");
  analyze->add_flag("--header", header, "Skip the first line of each file");
  analyze->add_flag("--numeric", numeric, "Order values numerically");
  analyze->add_flag("--all-neos", listNeos, "List every nested elimination order");

  auto* gen = app.add_subcommand("gen", "Write a generated instance");
  gen->add_option("family", family, "Instance family")->required();
  gen->add_option("--params", params, "Family parameters");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", outDir, "Output directory")->required();

  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--suite", suite, "pathHard|setIntersect|triangleContrast|bowtie|empty|all")->required();
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--report", report, "Write the JSON report here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      ms::ParsedQuery q = ms::parseQuery(readQueryArg(queryArg));
      ms::IngestOptions io{delimiterFrom(delimiter), header, numeric};
      ms::Dictionary dict(numeric ? ms::Dictionary::Order::Numeric : ms::Dictionary::Order::Lexicographic);
      ms::Instance inst = ms::loadInstance(q, dataDir, io, dict);
      ms::QueryPlan plan = ms::makePlan(q.query, parseGao(gaoArg, q.query), parseMode(modeArg));
      ms::EngineOptions opts;
      if (trace) opts.trace = [](const std::string& line) { std::cerr << line << '\n'; };
      std::cerr << "gao " << gaoText(plan.gao, q.query) << " mode " << ms::modeName(plan.mode) << '\n';
      ms::EvalResult res = ms::evaluate(plan, inst, opts);
      std::vector<ms::Tuple> out;
      for (const auto& t : res.tuples) out.push_back(ms::toAttributeOrder(t, plan.gao));
      std::sort(out.begin(), out.end());
      for (const auto& t : out) {
        for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? "\t" : "") << dict.decode(t[i]);
        std::cout << '\n';
      }
      std::cerr << ms::statsJson(res.stats) << '\n';
      if (!baseline.empty()) {
        ms::BaselineResult b = ms::runBaseline(baseline, inst, plan.gao);
        std::cerr << baseline << " work " << b.work << (b.tuples == out ? " (same output)" : " (OUTPUT DIFFERS)") << '\n';
        if (b.tuples != out) return 3;
      }
      if (!report.empty()) {
        std::ofstream rep(report);
        if (!rep) throw ms::DataError("cannot write " + report);
        nlohmann::json j = nlohmann::json::parse(ms::statsJson(res.stats));
        j["gao"] = gaoText(plan.gao, q.query);
        j["mode"] = ms::modeName(plan.mode);
        j["N"] = inst.totalTuples();
        rep << j.dump(2) << '\n';
      }
    } else if (analyze->parsed()) {
      ms::ParsedQuery q = ms::parseQuery(readQueryArg(queryArg));
      ms::GyoResult gyo = ms::gyoReduce(q.query);
      std::cout << "query " << ms::formatQuery(q) << '\n';
      std::cout << "alpha-acyclic " << (gyo.isAlphaAcyclic ? "yes" : "no") << '\n';
      std::cout << "beta-acyclic " << (ms::isBetaAcyclic(q.query) ? "yes" : "no") << '\n';
      if (listNeos)
        for (const auto& g : ms::enumerateNestedEliminationOrders(q.query))
          std::cout << "neo " << gaoText(g, q.query) << '\n';
      ms::QueryPlan plan = ms::makePlan(q.query, parseGao(gaoArg, q.query));
      std::cout << "gao " << gaoText(plan.gao, q.query) << '\n';
      std::cout << "mode " << ms::modeName(plan.mode) << '\n';
      std::cout << "elimination-width " << ms::eliminationWidth(q.query, plan.gao) << '\n';
      if (!dataDir.empty()) {
        ms::IngestOptions io{delimiterFrom(delimiter), header, numeric};
        ms::Dictionary dict(numeric ? ms::Dictionary::Order::Numeric : ms::Dictionary::Order::Lexicographic);
        ms::Instance inst = ms::loadInstance(q, dataDir, io, dict);
        ms::Argument cert = ms::buildUpperBoundCertificate(inst, plan.gao);
        int r = 0;
        for (const auto& e : q.query.edges()) r = std::max(r, static_cast<int>(e.attrs.size()));
        std::cout << "N " << inst.totalTuples() << '\n';
        std::cout << "certUB " << cert.size() << " (bound r*N = " << r * inst.totalTuples() << ")\n";
        if (!certOut.empty()) {
          std::ofstream c(certOut);
          if (!c) throw ms::DataError("cannot write " + certOut);
          c << ms::formatArgument(cert, q.query);
        }
      }
    } else if (gen->parsed()) {
      ms::Instance inst = ms::generateInstance(family, params, seed);
      ms::writeInstance(inst, outDir);
      ms::ParsedQuery q;
      q.head = "Q";
      q.query = inst.query;
      for (const auto& r : inst.relations) q.atoms.push_back({r.name, r.attrs});
      std::ofstream qf(fs::path(outDir) / "query.txt");
      qf << ms::formatQuery(q) << '\n';
      std::cout << "wrote " << inst.relations.size() << " relations, " << inst.totalTuples() << " tuples to "
                << outDir << '\n';
    } else if (bench->parsed()) {
      std::vector<ms::BenchSuite> suites;
      if (suite == "all") {
        for (const auto& s : ms::suiteNames()) suites.push_back(ms::runSuite(s, seed));
      } else {
        suites.push_back(ms::runSuite(suite, seed));
      }
      std::string text = ms::benchJson(suites);
      if (report.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream rep(report);
        if (!rep) throw ms::DataError("cannot write " + report);
        rep << text << '\n';
      }
    }
  } catch (const ms::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const ms::ShapeMismatch& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
