#include "minesweeper/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "minesweeper/io.hpp"

namespace minesweeper {

namespace {

Instance fromQuery(const std::string& text, std::vector<std::vector<std::vector<Value>>> data) {
  ParsedQuery q = parseQuery(text);
  Instance inst{q.query, {}};
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    Relation r{q.atoms[i].name, q.atoms[i].attrs, std::move(data[i])};
    r.normalize();
    inst.relations.push_back(std::move(r));
  }
  inst.validate();
  return inst;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Instance setIntersectDisjoint(int n, int k) {
  require(n >= 1 && k >= 2, "setIntersectDisjoint needs N >= 1 and k >= 2");
  std::string text = "Q(A) :- ";
  std::vector<std::vector<std::vector<Value>>> data;
  for (int i = 1; i <= k; ++i) {
    text += (i > 1 ? ", S" : "S") + std::to_string(i) + "(A)";
    std::vector<std::vector<Value>> rel;
    for (Value v = 1; v <= n; ++v) rel.push_back({static_cast<Value>(i - 1) * n + v});
    data.push_back(std::move(rel));
  }
  return fromQuery(text + ".", std::move(data));
}

Instance setIntersectExample21(int n) {
  require(n >= 1, "N must be positive");
  std::vector<std::vector<Value>> r, t;
  for (Value i = 1; i <= n; ++i) {
    r.push_back({i});
    t.push_back({1, 2 * i});
    t.push_back({2, 3 * i});
  }
  return fromQuery("Q(A,B) :- R(A), T(A,B).", {r, t});
}

Instance setIntersectExample21J(int n) {
  require(n >= 1, "N must be positive");
  std::vector<std::vector<Value>> r, t;
  for (Value i = 1; i <= n; ++i) {
    r.push_back({2 * i});
    t.push_back({2, i});
    t.push_back({4, 10 * i});
  }
  return fromQuery("Q(A,B) :- R(A), T(A,B).", {r, t});
}

Instance workedQ2(int n) {
  require(n >= 4, "workedQ2 needs N >= 4");
  std::vector<std::vector<Value>> r, s;
  for (Value a = 1; a <= n; ++a) {
    r.push_back({a});
    for (Value b = 1; b <= n; ++b) s.push_back({a, b});
  }
  return fromQuery("Q(A1,A2,A3) :- R(A1), S(A1,A2), T(A2,A3), U(A3).",
                   {r, s, {{2, 2}, {2, 4}}, {{1}, {3}}});
}

Instance bowtieRandom(int n, double density, std::uint64_t seed) {
  require(n >= 1 && density >= 0 && density <= 1, "bowtieRandom needs N >= 1 and density in [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Value> val(0, 2 * static_cast<Value>(n) - 1);
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<Value>> r, s, t;
  for (int i = 0; i < n; ++i) {
    r.push_back({val(rng)});
    t.push_back({val(rng)});
  }
  for (Value x = 0; x < 2 * n; ++x)
    for (Value y = 0; y < 2 * n; ++y)
      if (keep(rng)) s.push_back({x, y});
  return fromQuery("Q(X,Y) :- R(X), S(X,Y), T(Y).", {r, s, t});
}

bool pathHardMember(int m, int bigM, int i, const std::vector<Value>& t) {
  if (t.empty()) return false;
  const Value M = bigM;
  // All coordinates must fall in the same chunk j.
  Value j = (t[0] - 1) / M + 1;
  if (j < 1 || j > m) return false;
  for (Value v : t)
    if (v < (j - 1) * M + 1 || v > j * M) return false;
  int prev = i == 1 ? m : i - 1;
  if (j == prev) return false;
  if (j == i) return std::all_of(t.begin(), t.end(), [&](Value v) { return v == (i - 1) * M + 1; });
  return std::all_of(t.begin(), t.end(), [&](Value v) { return v >= (j - 1) * M + 2; });
}

Instance pathHardWide(int m, int bigM, int k) {
  require(m >= 3 && bigM >= 2 && k >= 2, "pathHard needs m >= 3, M >= 2, k >= 2");
  const Value M = bigM;
  std::string text = "Q(";
  for (int a = 1; a <= m + k - 1; ++a) text += (a > 1 ? ",A" : "A") + std::to_string(a);
  text += ") :- ";
  std::vector<std::vector<std::vector<Value>>> data;
  for (int i = 1; i <= m; ++i) {
    text += (i > 1 ? ", R" : "R") + std::to_string(i) + "(";
    for (int a = i; a < i + k; ++a) text += (a > i ? ",A" : "A") + std::to_string(a);
    text += ")";
    std::vector<std::vector<Value>> rel;
    int prev = i == 1 ? m : i - 1;
    for (int j = 1; j <= m; ++j) {
      if (j == prev) continue;
      if (j == i) {
        rel.emplace_back(static_cast<std::size_t>(k), (i - 1) * M + 1);
        continue;
      }
      // Enumerate [(j-1)M+2, jM]^k in odometer order.
      const Value lo = (j - 1) * M + 2, hi = j * M;
      std::vector<Value> cur(static_cast<std::size_t>(k), lo);
      while (true) {
        rel.push_back(cur);
        int d = k - 1;
        while (d >= 0 && cur[static_cast<std::size_t>(d)] == hi) cur[static_cast<std::size_t>(d--)] = lo;
        if (d < 0) break;
        ++cur[static_cast<std::size_t>(d)];
      }
    }
    data.push_back(std::move(rel));
  }
  return fromQuery(text + ".", std::move(data));
}

Instance pathHard(int m, int bigM) { return pathHardWide(m, bigM, 2); }

Instance triangleInstance(std::vector<std::vector<Value>> r, std::vector<std::vector<Value>> s,
                          std::vector<std::vector<Value>> t) {
  return fromQuery("Q(A,B,C) :- R(A,B), S(B,C), T(A,C).", {std::move(r), std::move(s), std::move(t)});
}

Instance triangleRandom(int vertices, double p, std::uint64_t seed) {
  require(vertices >= 1 && p >= 0 && p <= 1, "triangleRandom needs |V| >= 1 and p in [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(p);
  std::vector<std::vector<Value>> e;
  for (Value u = 0; u < vertices; ++u)
    for (Value v = u + 1; v < vertices; ++v)
      if (keep(rng)) e.push_back({u, v});
  return triangleInstance(e, e, e);
}

Instance triangleContrast(int n) {
  require(n >= 1, "triangleContrast needs n >= 1");
  std::vector<std::vector<Value>> r, s, t;
  for (Value a = 0; a < n; ++a)
    for (Value b = 0; b < n; ++b) r.push_back({a, b});
  for (Value x = 0; x < n; ++x) {
    s.push_back({x, 0});
    t.push_back({x, 1});
  }
  return triangleInstance(r, s, t);
}

Instance randomInstance(std::uint64_t seed, const RandomSpec& spec) {
  require(spec.maxAttributes >= 1 && spec.maxAttributes <= 16 && spec.maxRelations >= 1 &&
              spec.maxValues >= 1 && spec.maxTuples >= 1,
          "bad random instance spec");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uniform(1, spec.maxAttributes);
  const int e = uniform(1, spec.maxRelations);
  std::vector<AttrMask> masks(static_cast<std::size_t>(e));
  for (auto& m : masks) m = static_cast<AttrMask>(uniform(1, (1 << n) - 1));
  for (int a = 0; a < n; ++a) {
    AttrMask bit = AttrMask{1} << a;
    bool covered = std::any_of(masks.begin(), masks.end(), [&](AttrMask m) { return m & bit; });
    if (!covered) masks[static_cast<std::size_t>(uniform(0, e - 1))] |= bit;
  }
  Hypergraph h = Hypergraph::fromMasks(n, masks);
  Instance inst{h, {}};
  for (int i = 0; i < e; ++i) {
    const HyperEdge& edge = h.edge(i);
    Relation r{edge.relation, edge.attrs, {}};
    std::shuffle(r.attrs.begin(), r.attrs.end(), rng);
    int count = uniform(spec.nonEmpty ? 1 : 0, spec.maxTuples);
    for (int c = 0; c < count; ++c) {
      std::vector<Value> t;
      for (std::size_t j = 0; j < r.attrs.size(); ++j) t.push_back(uniform(0, spec.maxValues - 1));
      r.tuples.push_back(std::move(t));
    }
    r.normalize();
    inst.relations.push_back(std::move(r));
  }
  return inst;
}

Instance generateInstance(const std::string& family, const std::vector<double>& params, std::uint64_t seed) {
  auto p = [&](std::size_t i, double def) { return i < params.size() ? params[i] : def; };
  auto need = [&](std::size_t k) {
    if (params.size() < k) throw std::invalid_argument(family + " needs " + std::to_string(k) + " parameters");
  };
  auto as_int = [](double v) { return static_cast<int>(v); };
  if (family == "setIntersectDisjoint") {
    need(1);
    return setIntersectDisjoint(as_int(p(0, 0)), as_int(p(1, 2)));
  }
  if (family == "setIntersectExample21") return setIntersectExample21(as_int(p(0, 3)));
  if (family == "workedQ2") return workedQ2(as_int(p(0, 4)));
  if (family == "bowtieRandom") {
    need(1);
    return bowtieRandom(as_int(p(0, 0)), p(1, 0.1), seed);
  }
  if (family == "pathHard") {
    need(2);
    return pathHard(as_int(p(0, 0)), as_int(p(1, 0)));
  }
  if (family == "pathHardWide") {
    need(3);
    return pathHardWide(as_int(p(0, 0)), as_int(p(1, 0)), as_int(p(2, 0)));
  }
  if (family == "triangleRandom") {
    need(1);
    return triangleRandom(as_int(p(0, 0)), p(1, 0.3), seed);
  }
  if (family == "triangleContrast") {
    need(1);
    return triangleContrast(as_int(p(0, 0)));
  }
  if (family == "random") return randomInstance(seed);
  throw std::invalid_argument("unknown family " + family);
}

}  // namespace minesweeper
