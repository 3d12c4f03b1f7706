#include "minesweeper/querygraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace minesweeper {

namespace {

inline AttrMask bitOf(AttrId a) { return AttrMask{1} << a; }

inline bool subsetOf(AttrMask a, AttrMask b) { return (a & ~b) == 0; }

std::vector<AttrMask> edgeMasks(const Hypergraph& h) {
  std::vector<AttrMask> masks;
  masks.reserve(h.edges().size());
  for (const auto& e : h.edges()) masks.push_back(e.mask);
  return masks;
}

// Edges containing v form a chain under inclusion.
bool isNestPoint(const std::vector<AttrMask>& edges, AttrId v) {
  std::vector<AttrMask> incident;
  for (AttrMask e : edges)
    if (e & bitOf(v)) incident.push_back(e);
  return isChain(incident);
}

void eraseVertex(std::vector<AttrMask>& edges, AttrId v) {
  for (AttrMask& e : edges) e &= ~bitOf(v);
  std::erase(edges, AttrMask{0});
}

void collectNeos(std::vector<AttrMask> edges, AttrMask remaining, std::vector<AttrId>& suffix,
                 std::vector<Gao>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (remaining == 0) {
    out.emplace_back(std::vector<AttrId>(suffix.rbegin(), suffix.rend()));
    return;
  }
  for (AttrId v = 0; v < kMaxAttributes; ++v) {
    if (!(remaining & bitOf(v)) || !isNestPoint(edges, v)) continue;
    auto next = edges;
    eraseVertex(next, v);
    suffix.push_back(v);
    collectNeos(std::move(next), remaining & ~bitOf(v), suffix, out, limit);
    suffix.pop_back();
    if (out.size() >= limit) return;
  }
}

int greedyMinDegreeWidth(const Hypergraph& h, Gao& gaoOut) {
  const int n = h.attributeCount();
  std::vector<AttrMask> adj(static_cast<std::size_t>(n), 0);
  for (const auto& e : h.edges())
    for (AttrId a : e.attrs) adj[static_cast<std::size_t>(a)] |= e.mask & ~bitOf(a);
  AttrMask alive = h.allAttributes();
  std::vector<AttrId> eliminated;
  while (alive) {
    AttrId best = -1;
    int bestDeg = kMaxAttributes + 1;
    for (AttrId v = 0; v < n; ++v) {
      if (!(alive & bitOf(v))) continue;
      int deg = std::popcount(adj[static_cast<std::size_t>(v)] & alive);
      if (deg < bestDeg) {
        bestDeg = deg;
        best = v;
      }
    }
    AttrMask nbrs = adj[static_cast<std::size_t>(best)] & alive;
    for (AttrId u = 0; u < n; ++u)
      if (nbrs & bitOf(u)) adj[static_cast<std::size_t>(u)] |= nbrs & ~bitOf(u);
    alive &= ~bitOf(best);
    eliminated.push_back(best);
  }
  gaoOut = Gao(std::vector<AttrId>(eliminated.rbegin(), eliminated.rend()));
  return eliminationWidth(h, gaoOut);
}

}  // namespace

Hypergraph::Hypergraph(std::vector<std::string> attributes,
                       std::vector<std::pair<std::string, std::vector<AttrId>>> edges)
    : attributes_(std::move(attributes)) {
  const int n = static_cast<int>(attributes_.size());
  if (n > kMaxAttributes) throw std::invalid_argument("too many attributes (limit 64)");
  AttrMask covered = 0;
  for (auto& [name, attrs] : edges) {
    if (attrs.empty()) throw std::invalid_argument("relation " + name + " has no attributes");
    if (findEdge(name)) throw std::invalid_argument("duplicate relation name " + name);
    HyperEdge e;
    e.relation = name;
    for (AttrId a : attrs) {
      if (a < 0 || a >= n) throw std::invalid_argument("attribute id out of range in " + name);
      if (e.mask & bitOf(a)) throw std::invalid_argument("repeated attribute in " + name);
      e.mask |= bitOf(a);
    }
    e.attrs = attrs;
    std::sort(e.attrs.begin(), e.attrs.end());
    covered |= e.mask;
    edges_.push_back(std::move(e));
  }
  for (AttrId a = 0; a < n; ++a)
    if (!(covered & bitOf(a)))
      throw std::invalid_argument("attribute " + attributes_[static_cast<std::size_t>(a)] +
                                  " appears in no relation");
}

Hypergraph Hypergraph::fromMasks(int attributeCount, const std::vector<AttrMask>& edges) {
  std::vector<std::string> names;
  for (int i = 0; i < attributeCount; ++i) names.push_back("A" + std::to_string(i));
  std::vector<std::pair<std::string, std::vector<AttrId>>> es;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::vector<AttrId> attrs;
    for (AttrId a = 0; a < attributeCount; ++a)
      if (edges[i] & bitOf(a)) attrs.push_back(a);
    es.emplace_back("E" + std::to_string(i), std::move(attrs));
  }
  return Hypergraph(std::move(names), std::move(es));
}

AttrMask Hypergraph::allAttributes() const {
  const int n = attributeCount();
  return n == kMaxAttributes ? ~AttrMask{0} : (bitOf(n) - 1);
}

std::optional<AttrId> Hypergraph::findAttribute(const std::string& name) const {
  auto it = std::find(attributes_.begin(), attributes_.end(), name);
  if (it == attributes_.end()) return std::nullopt;
  return static_cast<AttrId>(it - attributes_.begin());
}

std::optional<int> Hypergraph::findEdge(const std::string& relation) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].relation == relation) return static_cast<int>(i);
  return std::nullopt;
}

Gao::Gao(std::vector<AttrId> order) : order_(std::move(order)), position_(order_.size(), -1) {
  for (std::size_t k = 0; k < order_.size(); ++k) {
    AttrId a = order_[k];
    if (a < 0 || static_cast<std::size_t>(a) >= order_.size() || position_[static_cast<std::size_t>(a)] != -1)
      throw std::invalid_argument("GAO is not a permutation of the attribute ids");
    position_[static_cast<std::size_t>(a)] = static_cast<int>(k);
  }
}

Gao Gao::identity(int n) {
  std::vector<AttrId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return Gao(std::move(order));
}

GyoResult gyoReduce(const Hypergraph& h) {
  const int m = h.edgeCount();
  std::vector<AttrMask> reduced = edgeMasks(h);
  std::vector<bool> alive(static_cast<std::size_t>(m), true);
  JoinTree tree;
  tree.parent.assign(static_cast<std::size_t>(m), -1);
  int aliveCount = m;

  bool progress = true;
  while (progress && aliveCount > 1) {
    progress = false;
    // Private vertices: occurring in at most one remaining edge.
    AttrMask seenOnce = 0, seenTwice = 0;
    for (int e = 0; e < m; ++e) {
      if (!alive[static_cast<std::size_t>(e)]) continue;
      seenTwice |= seenOnce & reduced[static_cast<std::size_t>(e)];
      seenOnce |= reduced[static_cast<std::size_t>(e)];
    }
    AttrMask privateVerts = seenOnce & ~seenTwice;
    if (privateVerts) {
      for (int e = 0; e < m; ++e) reduced[static_cast<std::size_t>(e)] &= ~privateVerts;
      progress = true;
    }
    // Subsumed edges (empty edges are subsumed by anything).
    for (int e = 0; e < m && aliveCount > 1; ++e) {
      if (!alive[static_cast<std::size_t>(e)]) continue;
      for (int f = 0; f < m; ++f) {
        if (f == e || !alive[static_cast<std::size_t>(f)]) continue;
        if (subsetOf(reduced[static_cast<std::size_t>(e)], reduced[static_cast<std::size_t>(f)])) {
          alive[static_cast<std::size_t>(e)] = false;
          tree.parent[static_cast<std::size_t>(e)] = f;
          --aliveCount;
          progress = true;
          break;
        }
      }
    }
  }

  GyoResult result;
  result.isAlphaAcyclic = aliveCount <= 1;
  if (result.isAlphaAcyclic) result.joinTree = std::move(tree);
  return result;
}

bool isChain(const std::vector<AttrMask>& poset) {
  for (std::size_t i = 0; i < poset.size(); ++i)
    for (std::size_t j = i + 1; j < poset.size(); ++j)
      if (!subsetOf(poset[i], poset[j]) && !subsetOf(poset[j], poset[i])) return false;
  return true;
}

bool isBetaAcyclic(const Hypergraph& h) {
  std::vector<AttrMask> edges = edgeMasks(h);
  AttrMask remaining = h.allAttributes();
  while (remaining) {
    bool eliminated = false;
    for (AttrId v = 0; v < h.attributeCount(); ++v) {
      if (!(remaining & bitOf(v)) || !isNestPoint(edges, v)) continue;
      eraseVertex(edges, v);
      remaining &= ~bitOf(v);
      eliminated = true;
      break;
    }
    if (!eliminated) return false;
  }
  return true;
}

std::optional<Gao> findNestedEliminationOrder(const Hypergraph& h) {
  std::vector<AttrMask> edges = edgeMasks(h);
  AttrMask remaining = h.allAttributes();
  std::vector<AttrId> eliminated;
  while (remaining) {
    bool found = false;
    for (AttrId v = 0; v < h.attributeCount(); ++v) {
      if (!(remaining & bitOf(v)) || !isNestPoint(edges, v)) continue;
      eraseVertex(edges, v);
      remaining &= ~bitOf(v);
      eliminated.push_back(v);
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return Gao(std::vector<AttrId>(eliminated.rbegin(), eliminated.rend()));
}

std::vector<Gao> enumerateNestedEliminationOrders(const Hypergraph& h, std::size_t limit) {
  std::vector<Gao> out;
  std::vector<AttrId> suffix;
  collectNeos(edgeMasks(h), h.allAttributes(), suffix, out, limit);
  return out;
}

std::vector<std::vector<AttrMask>> prefixPosets(const Hypergraph& h, const Gao& g) {
  const int n = h.attributeCount();
  if (g.size() != n) throw std::invalid_argument("GAO size does not match the hypergraph");
  std::vector<std::vector<AttrMask>> posets(static_cast<std::size_t>(n));
  std::vector<AttrMask> edges = edgeMasks(h);
  for (int k = n - 1; k >= 0; --k) {
    AttrMask v = bitOf(g.at(k));
    std::vector<AttrMask>& pk = posets[static_cast<std::size_t>(k)];
    AttrMask universe = 0;
    for (AttrMask e : edges) {
      if (!(e & v)) continue;
      pk.push_back(e & ~v);
      universe |= e & ~v;
    }
    for (AttrMask& e : edges) e &= ~v;
    std::erase(edges, AttrMask{0});
    if (universe) edges.push_back(universe);
  }
  return posets;
}

bool isNestedEliminationOrder(const Hypergraph& h, const Gao& g) {
  for (const auto& pk : prefixPosets(h, g))
    if (!isChain(pk)) return false;
  return true;
}

int eliminationWidth(const Hypergraph& h, const Gao& g) {
  int width = 0;
  for (const auto& pk : prefixPosets(h, g)) {
    AttrMask universe = 0;
    for (AttrMask s : pk) universe |= s;
    width = std::max(width, std::popcount(universe));
  }
  return width;
}

const char* modeName(ProbeMode mode) {
  switch (mode) {
    case ProbeMode::BetaChain: return "beta";
    case ProbeMode::ShadowGeneral: return "general";
    case ProbeMode::Triangle: return "triangle";
  }
  return "?";
}

GaoChoice chooseGao(const Hypergraph& h) {
  GaoChoice choice;
  if (auto neo = findNestedEliminationOrder(h)) {
    choice.gao = *neo;
    choice.mode = ProbeMode::BetaChain;
    choice.width = eliminationWidth(h, *neo);
    return choice;
  }
  choice.mode = ProbeMode::ShadowGeneral;
  const int n = h.attributeCount();
  if (n <= 8) {
    std::vector<AttrId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    int best = kMaxAttributes + 1;
    do {
      Gao g(order);
      int w = eliminationWidth(h, g);
      if (w < best) {
        best = w;
        choice.gao = g;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    choice.width = best;
  } else {
    choice.width = greedyMinDegreeWidth(h, choice.gao);
  }
  return choice;
}

bool isTriangleQuery(const Hypergraph& h) {
  if (h.attributeCount() != 3 || h.edgeCount() != 3) return false;
  AttrMask seen = 0;
  for (const auto& e : h.edges()) {
    if (e.attrs.size() != 2 || (seen & (AttrMask{1} << (e.mask == 0b011 ? 0 : e.mask == 0b101 ? 1 : 2))))
      return false;
    seen |= AttrMask{1} << (e.mask == 0b011 ? 0 : e.mask == 0b101 ? 1 : 2);
  }
  return seen == 0b111;
}

}  // namespace minesweeper
