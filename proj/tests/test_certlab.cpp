#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "minesweeper/certlab.hpp"
#include "minesweeper/generators.hpp"
#include "minesweeper/io.hpp"

using namespace minesweeper;

namespace {

// {R[1] = T[1], R[2] = T[2]} over R(A) join T(A,B).
Argument smallCertificate() {
  return {Comparison{{0, {1}}, CmpOp::Equal, {1, {1}}}, Comparison{{0, {2}}, CmpOp::Equal, {1, {2}}}};
}

Instance instanceK(int n) {
  Instance k = setIntersectExample21(n);
  for (auto& t : k.relations[1].tuples)
    if (t[0] == 2) t = {3, t[1]};
  return k;
}

int maxArity(const Hypergraph& q) {
  int r = 0;
  for (const auto& e : q.edges()) r = std::max(r, static_cast<int>(e.attrs.size()));
  return r;
}

}  // namespace

TEST_CASE("nested loops on the fixed instances") {
  Instance worked = workedQ2(4);
  CHECK(nestedLoopJoin(worked, Gao::identity(3)).tuples.empty());

  const int n = 3;
  JoinResult res = nestedLoopJoin(setIntersectExample21(n), Gao::identity(2));
  CHECK(res.tuples.size() == 2 * n);
  std::vector<Witness> expect;
  for (int a = 1; a <= 2; ++a)
    for (int i = 1; i <= n; ++i) expect.push_back({{a}, {a, i}});
  CHECK(res.witnesses == expect);

  // A relation joined with itself on all attributes gives the relation back.
  ParsedQuery pq = parseQuery("Q(A,B) :- R(A,B), S(A,B).");
  std::vector<std::vector<Value>> rows{{1, 2}, {1, 5}, {4, 0}};
  Instance self{pq.query, {Relation{"R", {0, 1}, rows}, Relation{"S", {0, 1}, rows}}};
  CHECK(nestedLoopJoin(self, Gao::identity(2)).tuples == std::vector<Tuple>{{1, 2}, {1, 5}, {4, 0}});
}

TEST_CASE("the two equalities certify both index-shaped instances") {
  const int n = 4;
  Instance i = setIntersectExample21(n);
  Instance j = setIntersectExample21J(n);
  Gao gao = Gao::identity(2);
  CHECK(verifySatisfies(i, gao, smallCertificate()));
  CHECK(verifySatisfies(j, gao, smallCertificate()));
  CHECK_FALSE(verifySatisfies(instanceK(n), gao, smallCertificate()));
  CHECK(verifySatisfies(instanceK(n), gao, {}));

  EquivalenceResult ij = witnessEquivalenceCheck(smallCertificate(), i, j, gao);
  CHECK(ij.equivalent);
  CHECK_FALSE(ij.vacuous);
  CHECK(witnessEquivalenceCheck(smallCertificate(), i, i, gao).equivalent);
  EquivalenceResult ik = witnessEquivalenceCheck(smallCertificate(), i, instanceK(n), gao);
  CHECK(ik.vacuous);
}

TEST_CASE("shape and attribute errors are not plain falsehoods") {
  Gao gao = Gao::identity(2);
  Instance i = setIntersectExample21(3);
  CHECK_THROWS_AS(witnessEquivalenceCheck({}, i, setIntersectExample21(4), gao), ShapeMismatch);
  CHECK_THROWS_AS(verifySatisfies(i, gao, {Comparison{{1, {1, 4}}, CmpOp::Equal, {1, {1, 1}}}}), ShapeMismatch);
  CHECK_THROWS_AS(verifySatisfies(i, gao, {Comparison{{2, {1}}, CmpOp::Equal, {0, {1}}}}), ShapeMismatch);
  CHECK_THROWS_AS(verifySatisfies(i, gao, {Comparison{{0, {1}}, CmpOp::Less, {1, {1, 1}}}}), std::invalid_argument);
  CHECK(verifySatisfies(i, gao, {Comparison{{0, {1}}, CmpOp::Less, {1, {2}}}}));
  CHECK(verifySatisfies(i, gao, {Comparison{{1, {1, 3}}, CmpOp::Greater, {1, {2, 1}}}}));
}

TEST_CASE("upper-bound certificate on the index-shaped instance") {
  Instance i = setIntersectExample21(2);
  Argument cert = buildUpperBoundCertificate(i, Gao::identity(2));
  auto has = [&](const Comparison& c) {
    Comparison flipped{c.right, c.op, c.left};
    return std::find(cert.begin(), cert.end(), c) != cert.end() ||
           std::find(cert.begin(), cert.end(), flipped) != cert.end();
  };
  for (const auto& c : smallCertificate()) CHECK(has(c));
  CHECK(verifySatisfies(i, Gao::identity(2), cert));
}

TEST_CASE("single relation: the certificate is a chain per attribute") {
  ParsedQuery pq = parseQuery("Q(A,B) :- R(A,B).");
  Instance one{pq.query, {Relation{"R", {0, 1}, {{1, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}}}}};
  Argument cert = buildUpperBoundCertificate(one, Gao::identity(2));
  CHECK(cert.size() == (3 - 1) + (5 - 1));
  for (const auto& c : cert) CHECK(c.op == CmpOp::Less);
}

TEST_CASE("certificates are small, self-satisfied and stable under re-valuation") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = randomInstance(seed);
    Gao gao = Gao::identity(inst.query.attributeCount());
    Argument cert = buildUpperBoundCertificate(inst, gao);
    INFO("seed ", seed);
    REQUIRE(cert.size() <= static_cast<std::size_t>(maxArity(inst.query)) * inst.totalTuples());
    REQUIRE(verifySatisfies(inst, gao, cert));
    for (int k = 0; k < 100; ++k) {
      Instance moved = reValue(inst, rng);
      EquivalenceResult r = witnessEquivalenceCheck(cert, inst, moved, gao);
      REQUIRE_FALSE(r.vacuous);
      REQUIRE(r.equivalent);
    }
  }
}

TEST_CASE("breaking an aligned equality makes the check vacuous") {
  Instance i = setIntersectExample21(3);
  Gao gao = Gao::identity(2);
  Argument cert = buildUpperBoundCertificate(i, gao);
  Instance bent = i;
  for (auto& t : bent.relations[0].tuples)
    if (t[0] == 2) t[0] = 0;  // R[2] drops below T[1]; shape is unchanged
  auto r = witnessEquivalenceCheck(cert, i, bent, gao);
  CHECK(r.vacuous);
}

TEST_CASE("argument text round-trips") {
  Instance i = setIntersectExample21(3);
  Argument cert = buildUpperBoundCertificate(i, Gao::identity(2));
  std::string text = formatArgument(cert, i.query);
  CHECK(parseArgument(text, i.query) == cert);
  CHECK(formatArgument(smallCertificate(), i.query) == "R[1] = T[1]\nR[2] = T[2]\n");
  CHECK_THROWS_AS(parseArgument("X[1] = T[1]\n", i.query), std::invalid_argument);
  CHECK_THROWS_AS(parseArgument("R[1] ~ T[1]\n", i.query), std::invalid_argument);
}
