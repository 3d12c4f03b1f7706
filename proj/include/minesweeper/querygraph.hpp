#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace minesweeper {

using AttrId = int;
/// Attribute set as a bitmask; queries are limited to 64 attributes.
using AttrMask = std::uint64_t;

inline constexpr int kMaxAttributes = 64;

struct HyperEdge {
  std::string relation;
  std::vector<AttrId> attrs;  // sorted, distinct
  AttrMask mask = 0;
};

/// Query hypergraph: one vertex per attribute, one edge per body atom.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Throws std::invalid_argument when an attribute is uncovered, an edge is
  /// empty, an id is out of range, or a relation name repeats.
  Hypergraph(std::vector<std::string> attributes,
             std::vector<std::pair<std::string, std::vector<AttrId>>> edges);

  /// Builds a hypergraph from bare attribute masks; relation names are
  /// generated (E0, E1, ...) and attribute names are A0, A1, ...
  static Hypergraph fromMasks(int attributeCount, const std::vector<AttrMask>& edges);

  int attributeCount() const { return static_cast<int>(attributes_.size()); }
  int edgeCount() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<HyperEdge>& edges() const { return edges_; }
  const HyperEdge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
  AttrMask allAttributes() const;

  std::optional<AttrId> findAttribute(const std::string& name) const;
  std::optional<int> findEdge(const std::string& relation) const;

 private:
  std::vector<std::string> attributes_;
  std::vector<HyperEdge> edges_;
};

/// Global attribute order: order[k] is the attribute at GAO position k.
class Gao {
 public:
  Gao() = default;
  explicit Gao(std::vector<AttrId> order);
  static Gao identity(int n);

  int size() const { return static_cast<int>(order_.size()); }
  AttrId at(int position) const { return order_[static_cast<std::size_t>(position)]; }
  int positionOf(AttrId a) const { return position_[static_cast<std::size_t>(a)]; }
  const std::vector<AttrId>& order() const { return order_; }

  bool operator==(const Gao& other) const { return order_ == other.order_; }

 private:
  std::vector<AttrId> order_;
  std::vector<int> position_;
};

struct JoinTree {
  /// parent[e] is the edge e was attached to, or -1 for the root.
  std::vector<int> parent;
};

struct GyoResult {
  bool isAlphaAcyclic = false;
  std::optional<JoinTree> joinTree;
};

GyoResult gyoReduce(const Hypergraph& h);

/// Repeated nest-point elimination (Brouwer-Kolen).
bool isBetaAcyclic(const Hypergraph& h);

/// Nest points are eliminated last-first, ties broken by smallest id.
std::optional<Gao> findNestedEliminationOrder(const Hypergraph& h);

/// Every nested elimination order, up to `limit` of them.
std::vector<Gao> enumerateNestedEliminationOrders(const Hypergraph& h, std::size_t limit = 1000);

/// P_k for k = 1..n (index k-1), each member a subset of the first k-1 GAO
/// attributes, in the order produced by the elimination process.
std::vector<std::vector<AttrMask>> prefixPosets(const Hypergraph& h, const Gao& g);

/// Members pairwise comparable under inclusion.
bool isChain(const std::vector<AttrMask>& poset);

bool isNestedEliminationOrder(const Hypergraph& h, const Gao& g);

/// max_k |U(P_k)| along the elimination process.
int eliminationWidth(const Hypergraph& h, const Gao& g);

enum class ProbeMode { BetaChain, ShadowGeneral, Triangle };

const char* modeName(ProbeMode mode);

struct GaoChoice {
  Gao gao;
  ProbeMode mode = ProbeMode::ShadowGeneral;
  int width = 0;
};

/// A nested elimination order when one exists; otherwise the minimum
/// elimination-width order (exhaustive up to 8 attributes, greedy
/// min-degree beyond).
GaoChoice chooseGao(const Hypergraph& h);

/// Three binary edges over three attributes forming a triangle.
bool isTriangleQuery(const Hypergraph& h);

}  // namespace minesweeper
