#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "minesweeper/probe.hpp"
#include "oracles.hpp"

using namespace minesweeper;

namespace {

const Component W = std::nullopt;
Constraint make(Pattern p, Value lo, Value hi) { return Constraint{std::move(p), lo, hi}; }

using Pieces = std::vector<std::pair<Value, Value>>;

// Random pattern of length len. In chain form, once an equality appears all
// later components are equalities, so every principal filter is a chain.
Pattern randomPattern(std::mt19937_64& rng, const Tuple& t, int len, bool chainForm) {
  Pattern p(static_cast<std::size_t>(len), W);
  int first = std::uniform_int_distribution<int>(0, len)(rng);
  for (int j = 0; j < len; ++j) {
    bool eq = chainForm ? j >= first : std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    if (eq) p[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j)];
  }
  return p;
}

// Drives getProbePoint against a flat list until it reports exhaustion.
// Every returned tuple must be the lexicographically smallest active one.
// Both sides are clamped to [0, d]: a constraint with a negative left end
// also rules out the -1 sentinel, which never occurs in data.
void exhaust(ProbeMode mode, std::uint64_t seed, int n, Value d) {
  std::mt19937_64 rng(seed);
  TreeCds cds(n, mode);
  oracle::FlatConstraints flat;
  auto add = [&](const Constraint& c) {
    cds.insConstraint(c);
    flat.list.push_back(c);
  };
  for (int i = 0; i < n; ++i) {
    add(make(Pattern(static_cast<std::size_t>(i), W), d, kPosInf));
    add(make(Pattern(static_cast<std::size_t>(i), W), kNegInf, 0));
  }
  for (int iter = 0; iter < 5000; ++iter) {
    auto t = cds.getProbePoint();
    auto expect = flat.smallestActive(n, d);
    REQUIRE(t.has_value() == expect.has_value());
    if (!t) return;
    auto text = [](const Tuple& x) {
      std::string s;
      for (Value v : x) s += formatValue(v) + " ";
      return s;
    };
    INFO("probe ", text(*t), " expected ", text(*expect), " seed ", seed, " iter ", iter);
    REQUIRE_FALSE(flat.covers(*t));
    REQUIRE(*t == *expect);
    // Rule t out with a random constraint around it, plus an unrelated one.
    int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
    Pattern p = randomPattern(rng, *t, i, mode == ProbeMode::BetaChain);
    Value ti = (*t)[static_cast<std::size_t>(i)];
    add(make(p, ti - std::uniform_int_distribution<Value>(1, 3)(rng), ti + std::uniform_int_distribution<Value>(1, 3)(rng)));
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
      Tuple r(static_cast<std::size_t>(n));
      for (auto& v : r) v = std::uniform_int_distribution<Value>(-1, d)(rng);
      int j = std::uniform_int_distribution<int>(0, n - 1)(rng);
      Value lo = std::uniform_int_distribution<Value>(-2, d)(rng);
      add(make(randomPattern(rng, r, j, mode == ProbeMode::BetaChain), lo, lo + std::uniform_int_distribution<Value>(2, 4)(rng)));
    }
  }
  FAIL("probe loop did not terminate");
}

}  // namespace

TEST_CASE("empty store probes at -1") {
  TreeCds beta(3, ProbeMode::BetaChain);
  CHECK(beta.getProbePoint() == Tuple{-1, -1, -1});
  TreeCds general(3, ProbeMode::ShadowGeneral);
  CHECK(general.getProbePoint() == Tuple{-1, -1, -1});
  CHECK_THROWS_AS(TreeCds(3, ProbeMode::Triangle), std::invalid_argument);
}

TEST_CASE("nextChainVal on the memoization example materializes <*,1,(0,+inf)>") {
  const Value N = 4;
  ConstraintTree tree(3);
  for (Value a = 1; a <= N; ++a)
    for (Value b = 1; b <= N; ++b) tree.insert(make({a, b}, kNegInf, 1));
  for (Value b = 1; b <= N; ++b)
    for (Value i = 1; i <= N; ++i) tree.insert(make({W, b}, 2 * i - 2, 2 * i));
  for (Value i = 1; i <= N; ++i) tree.insert(make({W, W}, 2 * i - 1, 2 * i + 1));
  tree.insert(make({W, W}, 2 * N, kPosInf));

  Chain chain{tree.find({1, 1}), tree.find({W, 1}), tree.find({W, W})};
  for (auto* node : chain) REQUIRE(node);
  CHECK(nextChainVal(tree, -1, 0, chain) == kPosInf);
  CHECK(chain[1]->intervals.pieces() == Pieces{{0, kPosInf}});
}

TEST_CASE("nextChainVal ping-pongs and memoizes at the lower node") {
  ConstraintTree tree(2);
  tree.insert(make({1}, 0, 4));
  tree.insert(make({W}, 3, 8));
  Chain chain{tree.find({1}), tree.find({W})};
  CHECK(nextChainVal(tree, 1, 0, chain) == 8);
  CHECK(chain[0]->intervals.pieces() == Pieces{{0, 8}});

  ConstraintTree lone(2);
  lone.insert(make({W}, 10, 11));
  Chain one{lone.find({W})};
  CHECK(nextChainVal(lone, 5, 0, one) == 5);
}

TEST_CASE("shadow patterns follow suffix meets") {
  const Value a = 1, b = 2, c = 3;
  ConstraintTree tree(4);
  std::vector<Pattern> pats{{a, W, c}, {W, b, c}, {a, b, W}, {W, b, W}, {W, W, W}};
  std::vector<ConstraintTree::Node*> nodes;
  for (const auto& p : pats) tree.insert(make(p, 5, 7));
  for (const auto& p : pats) nodes.push_back(tree.find(p));
  auto shadows = shadowPatterns(nodes);
  std::vector<Pattern> expect{{a, b, c}, {a, b, c}, {a, b, W}, {W, b, W}, {W, W, W}};
  CHECK(shadows == expect);

  auto lin = nodes;
  linearize(lin);
  CHECK(lin.front()->pattern == Pattern{W, b, c});
  CHECK(lin.back()->pattern == Pattern{W, W, W});
}

TEST_CASE("nextShadowChainVal equals nextChainVal on chain inputs") {
  std::mt19937_64 rng(9);
  for (int state = 0; state < 100; ++state) {
    ConstraintTree t1(3), t2(3);
    std::vector<Pattern> pats{{4, 6}, {W, 6}, {W, W}};
    for (int k = 0; k < 12; ++k) {
      const Pattern& p = pats[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 2)(rng))];
      Value lo = std::uniform_int_distribution<Value>(-1, 20)(rng);
      Value hi = lo + std::uniform_int_distribution<Value>(1, 6)(rng);
      t1.insert(make(p, lo, hi));
      t2.insert(make(p, lo, hi));
    }
    for (const auto& p : pats) {
      t1.insert(make(p, 40, 41));  // make sure every node exists
      t2.insert(make(p, 40, 41));
    }
    Chain chain;
    ShadowChain shadow;
    for (const auto& p : pats) {
      chain.push_back(t1.find(p));
      shadow.push_back({t2.find(p), t2.find(p)});
    }
    Value x = std::uniform_int_distribution<Value>(-1, 20)(rng);
    REQUIRE(nextChainVal(t1, x, 0, chain) == nextShadowChainVal(t2, x, 0, shadow));
  }
}

TEST_CASE("nextChainVal matches the flat union of applicable constraints") {
  std::mt19937_64 rng(13);
  for (int state = 0; state < 200; ++state) {
    ConstraintTree tree(3);
    oracle::BitmapIntervals bits(-2, 30);
    std::vector<Pattern> pats{{2, 5}, {W, 5}, {W, W}};
    for (int k = 0; k < 10; ++k) {
      const Pattern& p = pats[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 2)(rng))];
      Value lo = std::uniform_int_distribution<Value>(-1, 15)(rng);
      Value hi = lo + std::uniform_int_distribution<Value>(1, 5)(rng);
      tree.insert(make(p, lo, hi));
      bits.insert(lo < 0 ? kNegInf : lo, hi);
    }
    for (const auto& p : pats) tree.insert(make(p, 17, 18));
    bits.insert(17, 18);
    Chain chain;
    for (const auto& p : pats) chain.push_back(tree.find(p));
    Value x = std::uniform_int_distribution<Value>(-1, 16)(rng);
    REQUIRE(nextChainVal(tree, x, 0, chain) == bits.next(x));
  }
}

TEST_CASE("beta probes are sound, lexicographically least, and complete") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) exhaust(ProbeMode::BetaChain, seed, 3, 5);
}

TEST_CASE("general probes are sound, lexicographically least, and complete") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) exhaust(ProbeMode::ShadowGeneral, seed, 3, 5);
  for (std::uint64_t seed = 100; seed <= 110; ++seed) exhaust(ProbeMode::ShadowGeneral, seed, 4, 3);
}

TEST_CASE("beta mode refuses a filter that is not a chain") {
  TreeCds cds(3, ProbeMode::BetaChain);
  cds.insConstraint(make({1, W}, kNegInf, 5));
  cds.insConstraint(make({W, 1}, kNegInf, 3));
  cds.insConstraint(make({}, kNegInf, 1));
  cds.insConstraint(make({W}, kNegInf, 1));
  CHECK_THROWS_AS(cds.getProbePoint(), std::logic_error);
}
