#include "minesweeper/certlab.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace minesweeper {

namespace {

struct Prepared {
  std::vector<Relation> aligned;               // columns in GAO order
  std::vector<std::vector<int>> positions;     // GAO position of each column
  std::vector<std::set<std::vector<Value>>> prefixes;
};

Prepared prepare(const Instance& inst, const Gao& gao) {
  inst.validate();
  Prepared p;
  for (const auto& r : inst.relations) {
    Relation a = alignedTo(r, gao);
    std::vector<int> pos;
    for (AttrId x : a.attrs) pos.push_back(gao.positionOf(x));
    std::set<std::vector<Value>> pre;
    for (const auto& t : a.tuples)
      for (std::size_t len = 1; len <= t.size(); ++len) pre.emplace(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(len));
    p.aligned.push_back(std::move(a));
    p.positions.push_back(std::move(pos));
    p.prefixes.push_back(std::move(pre));
  }
  return p;
}

// Attribute (GAO position) a variable ranges over.
int variablePosition(const std::vector<TrieIndex>& indexes, const Variable& v) {
  if (v.relation < 0 || static_cast<std::size_t>(v.relation) >= indexes.size())
    throw ShapeMismatch("unknown relation in variable");
  const TrieIndex& idx = indexes[static_cast<std::size_t>(v.relation)];
  if (v.index.empty() || static_cast<int>(v.index.size()) > idx.arity())
    throw ShapeMismatch("index tuple length out of range");
  return idx.positions()[v.index.size() - 1];
}

Value variableValue(const std::vector<TrieIndex>& indexes, const Variable& v) {
  const TrieIndex& idx = indexes[static_cast<std::size_t>(v.relation)];
  for (int c : v.index)
    if (c < 1) throw ShapeMismatch("index tuple coordinate out of range");
  Value val = idx.access(v.index);
  if (isInfinite(val)) throw ShapeMismatch("index tuple coordinate out of range");
  return val;
}

bool sameShape(const std::vector<TrieIndex>& a, const std::vector<TrieIndex>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].arity() != b[r].arity()) return false;
    for (int len = 1; len <= a[r].arity(); ++len)
      if (a[r].indexTuples(len) != b[r].indexTuples(len)) return false;
  }
  return true;
}

}  // namespace

JoinResult nestedLoopJoin(const Instance& inst, const Gao& gao) {
  Prepared p = prepare(inst, gao);
  const int n = gao.size();
  std::vector<TrieIndex> indexes;
  for (const auto& r : p.aligned) indexes.push_back(TrieIndex::build(r, gao));

  // Candidate values per GAO position, and which (relation, level) pairs
  // get decided there.
  std::vector<std::set<Value>> domain(static_cast<std::size_t>(n));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < p.aligned.size(); ++r)
    for (std::size_t j = 0; j < p.positions[r].size(); ++j) {
      auto k = static_cast<std::size_t>(p.positions[r][j]);
      checks[k].emplace_back(r, j);
      for (const auto& t : p.aligned[r].tuples) domain[k].insert(t[j]);
    }

  JoinResult res;
  Tuple t(static_cast<std::size_t>(n));
  auto rec = [&](auto& self, int k) -> void {
    if (k == n) {
      res.tuples.push_back(toAttributeOrder(t, gao));
      Witness w;
      for (std::size_t r = 0; r < p.aligned.size(); ++r) {
        std::vector<Value> proj;
        for (int pos : p.positions[r]) proj.push_back(t[static_cast<std::size_t>(pos)]);
        w.push_back(indexes[r].locate(proj));
      }
      res.witnesses.push_back(std::move(w));
      return;
    }
    for (Value v : domain[static_cast<std::size_t>(k)]) {
      t[static_cast<std::size_t>(k)] = v;
      bool ok = true;
      for (auto [r, j] : checks[static_cast<std::size_t>(k)]) {
        std::vector<Value> pre;
        for (std::size_t i = 0; i <= j; ++i) pre.push_back(t[static_cast<std::size_t>(p.positions[r][i])]);
        if (!p.prefixes[r].count(pre)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, k + 1);
    }
  };
  rec(rec, 0);
  std::sort(res.tuples.begin(), res.tuples.end());
  std::sort(res.witnesses.begin(), res.witnesses.end());
  return res;
}

Argument buildUpperBoundCertificate(const Instance& inst, const Gao& gao) {
  std::vector<TrieIndex> indexes = buildIndexes(inst, gao);
  Argument arg;
  for (int k = 0; k < gao.size(); ++k) {
    // value -> variables holding it, each group ordered lexicographically
    std::map<Value, std::vector<Variable>> groups;
    for (std::size_t r = 0; r < indexes.size(); ++r) {
      const auto& pos = indexes[r].positions();
      auto it = std::find(pos.begin(), pos.end(), k);
      if (it == pos.end()) continue;
      int len = static_cast<int>(it - pos.begin()) + 1;
      for (auto& x : indexes[r].indexTuples(len))
        groups[indexes[r].access(x)].push_back(Variable{static_cast<int>(r), std::move(x)});
    }
    const Variable* prevRep = nullptr;
    for (auto& [value, vars] : groups) {
      std::sort(vars.begin(), vars.end());
      for (std::size_t i = 1; i < vars.size(); ++i) arg.push_back({vars.front(), CmpOp::Equal, vars[i]});
      if (prevRep) arg.push_back({*prevRep, CmpOp::Less, vars.front()});
      prevRep = &vars.front();
    }
  }
  return arg;
}

bool verifySatisfies(const std::vector<TrieIndex>& indexes, const Argument& arg) {
  bool all = true;
  for (const auto& c : arg) {
    if (variablePosition(indexes, c.left) != variablePosition(indexes, c.right))
      throw std::invalid_argument("comparison between variables of different attributes");
    Value a = variableValue(indexes, c.left), b = variableValue(indexes, c.right);
    bool holds = c.op == CmpOp::Less ? a < b : c.op == CmpOp::Equal ? a == b : a > b;
    all = all && holds;
  }
  return all;
}

bool verifySatisfies(const Instance& inst, const Gao& gao, const Argument& arg) {
  return verifySatisfies(buildIndexes(inst, gao), arg);
}

EquivalenceResult witnessEquivalenceCheck(const Argument& arg, const Instance& a, const Instance& b,
                                          const Gao& gao) {
  std::vector<TrieIndex> ia = buildIndexes(a, gao), ib = buildIndexes(b, gao);
  if (!sameShape(ia, ib)) throw ShapeMismatch("instances define different variables");
  EquivalenceResult res;
  if (!verifySatisfies(ia, arg) || !verifySatisfies(ib, arg)) {
    res.equivalent = true;
    res.vacuous = true;
    return res;
  }
  res.equivalent = nestedLoopJoin(a, gao).witnesses == nestedLoopJoin(b, gao).witnesses;
  return res;
}

Instance reValue(const Instance& inst, std::mt19937_64& rng) {
  Instance out = inst;
  const int n = inst.query.attributeCount();
  std::uniform_int_distribution<Value> gap(1, 5);
  for (AttrId a = 0; a < n; ++a) {
    std::set<Value> values;
    for (const auto& r : inst.relations)
      for (std::size_t j = 0; j < r.attrs.size(); ++j)
        if (r.attrs[j] == a)
          for (const auto& t : r.tuples) values.insert(t[j]);
    std::map<Value, Value> remap;
    Value next = gap(rng) - 1;
    for (Value v : values) {
      remap[v] = next;
      next += gap(rng);
    }
    for (auto& r : out.relations)
      for (std::size_t j = 0; j < r.attrs.size(); ++j)
        if (r.attrs[j] == a)
          for (auto& t : r.tuples) t[j] = remap[t[j]];
  }
  return out;
}

std::string formatArgument(const Argument& arg, const Hypergraph& query) {
  std::ostringstream os;
  auto var = [&](const Variable& v) {
    os << query.edge(v.relation).relation << '[';
    for (std::size_t i = 0; i < v.index.size(); ++i) os << (i ? "," : "") << v.index[i];
    os << ']';
  };
  for (const auto& c : arg) {
    var(c.left);
    os << (c.op == CmpOp::Less ? " < " : c.op == CmpOp::Equal ? " = " : " > ");
    var(c.right);
    os << '\n';
  }
  return os.str();
}

Argument parseArgument(const std::string& text, const Hypergraph& query) {
  static const std::regex line(R"(^\s*(\w+)\[([0-9,\s]*)\]\s*([<=>])\s*(\w+)\[([0-9,\s]*)\]\s*$)");
  auto var = [&](const std::string& name, const std::string& coords) {
    auto e = query.findEdge(name);
    if (!e) throw std::invalid_argument("unknown relation " + name);
    Variable v{*e, {}};
    std::stringstream ss(coords);
    std::string part;
    while (std::getline(ss, part, ',')) v.index.push_back(std::stoi(part));
    return v;
  };
  Argument arg;
  std::istringstream in(text);
  std::string s;
  while (std::getline(in, s)) {
    if (s.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(s, m, line)) throw std::invalid_argument("malformed comparison: " + s);
    char op = m[3].str()[0];
    arg.push_back({var(m[1], m[2]), op == '<' ? CmpOp::Less : op == '=' ? CmpOp::Equal : CmpOp::Greater,
                   var(m[4], m[5])});
  }
  return arg;
}

}  // namespace minesweeper
