#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minesweeper/engine.hpp"

namespace minesweeper {

/// Q(A) :- S1(A), ..., Sk(A) with S_i = [(i-1)N+1, iN]; empty intersection.
Instance setIntersectDisjoint(int n, int k = 2);

/// R(A) join T(A,B) with R=[N], T={(1,2i)} u {(2,3i)}.
Instance setIntersectExample21(int n);
/// Same index shape, different constants: R=[2i], T[1]=2, T[2]=4, T[1,i]=i, T[2,i]=10i.
Instance setIntersectExample21J(int n);

/// R(A1)=[N], S(A1,A2)=[N]^2, T(A2,A3)={(2,2),(2,4)}, U(A3)={1,3}.
Instance workedQ2(int n = 4);

/// R(X), S(X,Y), T(Y) with each unary relation of size n and |S| about density*n^2.
Instance bowtieRandom(int n, double density, std::uint64_t seed);

/// Path R_1(A_1,A_2) ... R_m(A_m,A_{m+1}) hiding an O(mM) certificate in
/// Theta(mM^2) tuples per relation. Requires m >= 3 and M >= 2.
Instance pathHard(int m, int bigM);
/// Arity-k variant: R_i(A_i..A_{i+k-1}), blocks [(j-1)M+2, jM]^k.
Instance pathHardWide(int m, int bigM, int k);
/// Does `t` belong to chunk j (1-based) of R_i in pathHardWide(m, M, k)?
bool pathHardMember(int m, int bigM, int i, const std::vector<Value>& t);

/// Triangle query over an undirected G(|V|, p) graph, edges stored as (u,v) with u < v.
Instance triangleRandom(int vertices, double p, std::uint64_t seed);

/// Triangle family with R = [n]^2, S = {(b,0)}, T = {(a,1)}: every (a,b)
/// pair survives to C and dies there, so triangle-free.
Instance triangleContrast(int n);

struct RandomSpec {
  int maxAttributes = 4;
  int maxRelations = 4;
  int maxValues = 8;
  int maxTuples = 12;
  bool nonEmpty = true;  // every relation gets at least one tuple
};

/// Random query plus data; columns come in a random order per relation.
Instance randomInstance(std::uint64_t seed, const RandomSpec& spec = {});

/// Triangle query with the given edge lists.
Instance triangleInstance(std::vector<std::vector<Value>> r, std::vector<std::vector<Value>> s,
                          std::vector<std::vector<Value>> t);

/// Family by name with a flat parameter list, for the CLI:
/// setIntersectDisjoint N [k] | setIntersectExample21 N | workedQ2 [N] |
/// bowtieRandom N density | pathHard m M | pathHardWide m M k |
/// triangleRandom V p | triangleContrast n | random
/// Throws std::invalid_argument for unknown names or bad parameters.
Instance generateInstance(const std::string& family, const std::vector<double>& params, std::uint64_t seed);

}  // namespace minesweeper
