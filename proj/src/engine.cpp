#include "minesweeper/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "minesweeper/interval_list.hpp"
#include "minesweeper/probe.hpp"
#include "minesweeper/triangle.hpp"
#include "json.hpp"

namespace minesweeper {

std::size_t Instance::maxRelationSize() const {
  std::size_t m = 0;
  for (const auto& r : relations) m = std::max(m, r.tuples.size());
  return m;
}

std::size_t Instance::totalTuples() const {
  std::size_t m = 0;
  for (const auto& r : relations) m += r.tuples.size();
  return m;
}

void Instance::validate() const {
  if (static_cast<int>(relations.size()) != query.edgeCount())
    throw std::invalid_argument("instance has " + std::to_string(relations.size()) +
                                " relations for " + std::to_string(query.edgeCount()) + " atoms");
  for (int e = 0; e < query.edgeCount(); ++e) {
    const Relation& r = relations[static_cast<std::size_t>(e)];
    std::vector<AttrId> sorted = r.attrs;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != query.edge(e).attrs)
      throw std::invalid_argument("relation " + r.name + " does not match atom " + query.edge(e).relation);
  }
}

std::vector<TrieIndex> buildIndexes(const Instance& inst, const Gao& gao) {
  inst.validate();
  std::vector<TrieIndex> out;
  out.reserve(inst.relations.size());
  for (const auto& r : inst.relations) out.push_back(TrieIndex::build(alignedTo(r, gao), gao));
  return out;
}

QueryPlan makePlan(const Hypergraph& query, std::optional<Gao> gao, std::optional<ProbeMode> mode) {
  QueryPlan plan;
  plan.query = query;
  if (gao) {
    if (gao->size() != query.attributeCount())
      throw std::invalid_argument("GAO length does not match the query");
    plan.gao = *gao;
    if (mode) {
      plan.mode = *mode;
    } else {
      plan.mode = isNestedEliminationOrder(query, *gao) ? ProbeMode::BetaChain : ProbeMode::ShadowGeneral;
    }
  } else {
    GaoChoice choice = chooseGao(query);
    plan.gao = choice.gao;
    plan.mode = mode.value_or(choice.mode);
  }
  if (plan.mode == ProbeMode::BetaChain && !isNestedEliminationOrder(query, plan.gao))
    throw std::invalid_argument("beta mode needs a nested elimination order as GAO");
  if (plan.mode == ProbeMode::Triangle && !isTriangleQuery(query))
    throw std::invalid_argument("triangle mode needs three binary atoms over three attributes");
  return plan;
}

std::unique_ptr<Cds> makeCds(const QueryPlan& plan, const std::vector<TrieIndex>& indexes) {
  if (plan.mode != ProbeMode::Triangle)
    return std::make_unique<TreeCds>(plan.query.attributeCount(), plan.mode);
  // B sits at GAO position 1; its largest value bounds the dyadic domain.
  Value maxB = -1;
  for (const auto& idx : indexes) {
    for (int level = 0; level < idx.arity(); ++level) {
      if (idx.positions()[static_cast<std::size_t>(level)] != 1) continue;
      for (const auto& x : idx.indexTuples(level + 1)) maxB = std::max(maxB, idx.access(x));
    }
  }
  return std::make_unique<TriangleCds>(maxB);
}

namespace {

// One node of the {l,h}^p exploration inside a relation.
struct PathState {
  TrieRange range;               // candidates for the next level
  std::vector<Value> prefix;     // R[i^(v1)], ..., R[i^(v)]
  bool allHigh = true;
};

struct RelationProbe {
  bool matched = true;  // the all-h path hit t at every level
};

RelationProbe exploreRelation(const TrieIndex& idx, const Tuple& t, EngineStats& stats,
                              std::set<Constraint>& found) {
  RelationProbe result;
  const auto& pos = idx.positions();
  const int k = idx.arity();
  std::vector<PathState> frontier{PathState{idx.rootRange(), {}, true}};
  for (int p = 0; p < k && !frontier.empty(); ++p) {
    std::vector<PathState> nextFrontier;
    const Value target = t[static_cast<std::size_t>(pos[static_cast<std::size_t>(p)])];
    for (PathState& st : frontier) {
      Gap g = idx.findGapIn(p, st.range, target);
      ++stats.findGapCalls;
      const int size = static_cast<int>(st.range.size());
      auto valueAt = [&](int i) -> Value {
        if (i == 0) return kNegInf;
        if (i == size + 1) return kPosInf;
        return idx.valueAt(p, st.range.begin + static_cast<std::size_t>(i - 1));
      };
      Value lo = valueAt(g.lo), hi = valueAt(g.hi);
      if (st.allHigh && g.lo != g.hi) result.matched = false;
      if (lo != hi) {
        Constraint c;
        c.prefix.assign(static_cast<std::size_t>(pos[static_cast<std::size_t>(p)]), std::nullopt);
        for (int j = 0; j < p; ++j)
          c.prefix[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])] = st.prefix[static_cast<std::size_t>(j)];
        c.lo = lo;
        c.hi = hi;
        found.insert(std::move(c));
      }
      if (p + 1 == k) continue;
      // Children along l and h; identical when the value was found.
      auto push = [&](int i, bool high) {
        if (i < 1 || i > size) return;  // out of range: no further gaps on this path
        std::size_t at = st.range.begin + static_cast<std::size_t>(i - 1);
        PathState child{idx.childRange(p, at), st.prefix, st.allHigh && high};
        child.prefix.push_back(idx.valueAt(p, at));
        nextFrontier.push_back(std::move(child));
      };
      if (g.lo != g.hi) push(g.lo, false);
      push(g.hi, true);
    }
    frontier = std::move(nextFrontier);
  }
  return result;
}

}  // namespace

EvalResult evaluate(const QueryPlan& plan, const std::vector<TrieIndex>& indexes,
                    const EngineOptions& options) {
  const int n = plan.query.attributeCount();
  if (static_cast<int>(indexes.size()) != plan.query.edgeCount())
    throw std::invalid_argument("one index per atom required");
  for (std::size_t e = 0; e < indexes.size(); ++e) {
    const auto& edge = plan.query.edge(static_cast<int>(e));
    std::vector<int> expect;
    for (AttrId a : edge.attrs) expect.push_back(plan.gao.positionOf(a));
    std::sort(expect.begin(), expect.end());
    if (expect != indexes[e].positions())
      throw std::invalid_argument("index for " + edge.relation + " is not built under the plan's GAO");
  }

  std::unique_ptr<Cds> cds = makeCds(plan, indexes);
  if (options.trace) cds->setTrace(options.trace);
  for (const auto& c : options.initialConstraints) cds->insConstraint(c);

  EvalResult res;
  EngineStats& stats = res.stats;
  for (const auto& idx : indexes) idx.resetComparisons();
  const std::uint64_t workBefore = IntervalList::nextCalls();
  const std::uint64_t insertBefore = cds->counters().insertions;

  auto tupleText = [](const Tuple& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << formatValue(t[i]);
    return os.str();
  };

  while (true) {
    ++stats.probeCalls;
    std::optional<Tuple> probe = cds->getProbePoint();
    if (!probe) break;
    const Tuple& t = *probe;
    if (options.trace) options.trace("probe " + tupleText(t));
    if (options.recordSteps) res.probes.push_back(t);

    std::set<Constraint> found;
    bool output = true;
    for (const auto& idx : indexes) {
      RelationProbe rp = exploreRelation(idx, t, stats, found);
      output = output && rp.matched;
    }

    std::vector<Constraint> step;
    if (output) {
      res.tuples.push_back(t);
      ++stats.outputCount;
      Constraint c{Pattern(t.begin(), t.end() - 1), t.back() - 1, t.back() + 1};
      cds->insConstraint(c);
      cds->onOutput(t);
      ++stats.constraintsInserted;
      if (options.trace) options.trace("output " + tupleText(t));
      step.push_back(std::move(c));
    } else {
      for (const auto& c : found) {
        cds->insConstraint(c);
        ++stats.constraintsInserted;
        if (options.trace) options.trace("gap " + formatConstraint(c, n));
      }
      step.assign(found.begin(), found.end());
    }
    if (options.recordSteps) res.steps.push_back(std::move(step));
  }

  for (const auto& idx : indexes) stats.comparisons += idx.comparisons();
  stats.cdsWork = IntervalList::nextCalls() - workBefore;
  stats.cdsInsertions = cds->counters().insertions - insertBefore;
  stats.backtracks = cds->counters().backtracks;
  return res;
}

EvalResult evaluate(const QueryPlan& plan, const Instance& inst, const EngineOptions& options) {
  return evaluate(plan, buildIndexes(inst, plan.gao), options);
}

Tuple toAttributeOrder(const Tuple& t, const Gao& gao) {
  Tuple out(t.size());
  for (int k = 0; k < gao.size(); ++k) out[static_cast<std::size_t>(gao.at(k))] = t[static_cast<std::size_t>(k)];
  return out;
}

StatsReport statsReport(const EngineStats& stats, std::uint64_t certUB, std::uint64_t z, int m, int r) {
  StatsReport rep;
  rep.stats = stats;
  rep.certUB = certUB;
  rep.outputZ = z;
  rep.m = m;
  rep.r = r;
  rep.probeReference = std::ldexp(static_cast<double>(certUB), r) + static_cast<double>(z);
  rep.constraintReference =
      static_cast<double>(m) * std::ldexp(static_cast<double>(certUB), 2 * r) + static_cast<double>(z);
  auto ratio = [](double num, double den) { return den > 0 ? num / den : 0.0; };
  rep.probeRatio = ratio(static_cast<double>(stats.probeCalls), rep.probeReference);
  rep.constraintRatio = ratio(static_cast<double>(stats.constraintsInserted), rep.constraintReference);
  return rep;
}

std::string statsJson(const EngineStats& s) {
  nlohmann::json j = {{"probeCalls", s.probeCalls},       {"constraintsInserted", s.constraintsInserted},
                      {"findGapCalls", s.findGapCalls},   {"outputCount", s.outputCount},
                      {"comparisons", s.comparisons},     {"cdsInsertions", s.cdsInsertions},
                      {"backtracks", s.backtracks},       {"cdsWork", s.cdsWork}};
  return j.dump();
}

}  // namespace minesweeper
