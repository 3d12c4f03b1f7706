#include "minesweeper/baselines.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace minesweeper {

BaselineResult mergeIntersection(const Instance& inst) {
  inst.validate();
  if (inst.query.attributeCount() != 1) throw std::invalid_argument("merge intersection needs a single attribute");
  std::vector<std::vector<Value>> lists;
  for (const auto& r : inst.relations) {
    std::vector<Value> l;
    for (const auto& t : r.tuples) l.push_back(t[0]);
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    lists.push_back(std::move(l));
  }
  BaselineResult res;
  std::vector<std::size_t> at(lists.size(), 0);
  // Galloping search for the first element >= x starting at `from`.
  auto gallop = [&](const std::vector<Value>& l, std::size_t from, Value x) {
    std::size_t step = 1, lo = from, hi = from;
    while (hi < l.size()) {
      ++res.work;
      if (l[hi] >= x) break;
      lo = hi + 1;
      hi = from + step;
      step *= 2;
    }
    hi = std::min(hi, l.size());
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      ++res.work;
      if (l[mid] < x)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  };
  if (std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); })) return res;
  Value x = lists[0][0];
  std::size_t agree = 0, i = 0;
  for (const auto& l : lists) x = std::max(x, l[0]);
  while (true) {
    auto& l = lists[i];
    at[i] = gallop(l, at[i], x);
    if (at[i] == l.size()) break;
    if (l[at[i]] == x) {
      if (++agree == lists.size()) {
        res.tuples.push_back({x});
        if (++at[i] == l.size()) break;
        x = l[at[i]];
        agree = 0;
        continue;  // recount from this list
      }
    } else {
      x = l[at[i]];
      agree = 1;
    }
    i = (i + 1) % lists.size();
  }
  return res;
}

namespace {

// Tuple over all attributes; only positions in `mask` are meaningful.
struct Partial {
  AttrMask mask = 0;
  std::vector<Tuple> rows;
};

std::vector<Value> project(const Tuple& row, AttrMask mask) {
  std::vector<Value> key;
  for (std::size_t a = 0; a < row.size(); ++a)
    if (mask >> a & 1U) key.push_back(row[a]);
  return key;
}

void semijoin(Partial& left, const Partial& right, std::uint64_t& work) {
  AttrMask shared = left.mask & right.mask;
  std::set<std::vector<Value>> keys;
  for (const auto& r : right.rows) keys.insert(project(r, shared));
  std::vector<Tuple> kept;
  for (auto& l : left.rows)
    if (keys.count(project(l, shared))) kept.push_back(std::move(l));
  work += left.rows.size() + right.rows.size();
  left.rows = std::move(kept);
}

Partial join(const Partial& left, const Partial& right, std::uint64_t& work) {
  AttrMask shared = left.mask & right.mask;
  std::map<std::vector<Value>, std::vector<const Tuple*>> byKey;
  for (const auto& r : right.rows) byKey[project(r, shared)].push_back(&r);
  Partial out{left.mask | right.mask, {}};
  work += left.rows.size() + right.rows.size();
  for (const auto& l : left.rows) {
    auto it = byKey.find(project(l, shared));
    if (it == byKey.end()) continue;
    for (const Tuple* r : it->second) {
      Tuple t = l;
      for (std::size_t a = 0; a < t.size(); ++a)
        if (right.mask >> a & 1U) t[a] = (*r)[a];
      out.rows.push_back(std::move(t));
      ++work;
    }
  }
  return out;
}

}  // namespace

BaselineResult yannakakis(const Instance& inst) {
  inst.validate();
  GyoResult gyo = gyoReduce(inst.query);
  if (!gyo.isAlphaAcyclic || !gyo.joinTree) throw std::invalid_argument("yannakakis needs an alpha-acyclic query");
  const auto& parent = gyo.joinTree->parent;
  const std::size_t n = static_cast<std::size_t>(inst.query.attributeCount());
  const std::size_t e = inst.relations.size();

  std::vector<Partial> parts(e);
  for (std::size_t i = 0; i < e; ++i) {
    const Relation& r = inst.relations[i];
    parts[i].mask = inst.query.edge(static_cast<int>(i)).mask;
    for (const auto& t : r.tuples) {
      Tuple row(n, 0);
      for (std::size_t j = 0; j < t.size(); ++j) row[static_cast<std::size_t>(r.attrs[j])] = t[j];
      parts[i].rows.push_back(std::move(row));
    }
  }

  // Children before parents.
  std::vector<int> depth(e, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (int p = parent[i]; p >= 0; p = parent[static_cast<std::size_t>(p)]) ++depth[i];
  std::vector<std::size_t> order(e);
  for (std::size_t i = 0; i < e; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth[a] > depth[b]; });

  BaselineResult res;
  for (std::size_t i : order)
    if (parent[i] >= 0) semijoin(parts[static_cast<std::size_t>(parent[i])], parts[i], res.work);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) semijoin(parts[*it], parts[static_cast<std::size_t>(parent[*it])], res.work);
  for (std::size_t i : order)
    if (parent[i] >= 0) {
      auto& p = parts[static_cast<std::size_t>(parent[i])];
      p = join(p, parts[i], res.work);
    }

  // Roots of a forest combine as a cross product.
  Partial all{0, {Tuple(n, 0)}};
  for (std::size_t i = 0; i < e; ++i)
    if (parent[i] < 0) all = join(all, parts[i], res.work);
  res.tuples = std::move(all.rows);
  std::sort(res.tuples.begin(), res.tuples.end());
  res.tuples.erase(std::unique(res.tuples.begin(), res.tuples.end()), res.tuples.end());
  return res;
}

BaselineResult leapfrogJoin(const Instance& inst, const Gao& gao) {
  std::vector<TrieIndex> indexes = buildIndexes(inst, gao);
  const int n = gao.size();
  // (relation, level) pairs bound at each GAO position.
  std::vector<std::vector<std::pair<std::size_t, int>>> at(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < indexes.size(); ++r)
    for (int l = 0; l < indexes[r].arity(); ++l)
      at[static_cast<std::size_t>(indexes[r].positions()[static_cast<std::size_t>(l)])].emplace_back(r, l);

  BaselineResult res;
  std::vector<TrieRange> range(indexes.size());
  for (std::size_t r = 0; r < indexes.size(); ++r) range[r] = indexes[r].rootRange();
  Tuple t(static_cast<std::size_t>(n));

  auto rec = [&](auto& self, int k) -> void {
    if (k == n) {
      res.tuples.push_back(toAttributeOrder(t, gao));
      return;
    }
    const auto& parts = at[static_cast<std::size_t>(k)];
    std::vector<TrieRange> saved;
    for (auto [r, l] : parts) saved.push_back(range[r]);
    std::vector<std::size_t> cur;
    for (auto [r, l] : parts) {
      if (range[r].empty()) return;
      cur.push_back(range[r].begin);
    }
    const std::size_t p = parts.size();
    auto value = [&](std::size_t i) { return indexes[parts[i].first].valueAt(parts[i].second, cur[i]); };
    Value x = value(0);
    for (std::size_t i = 1; i < p; ++i) x = std::max(x, value(i));
    std::size_t agree = 0, i = 0;
    while (true) {
      auto [r, l] = parts[i];
      ++res.work;
      cur[i] = indexes[r].seek(l, TrieRange{cur[i], saved[i].end}, x);
      if (cur[i] == saved[i].end) break;
      Value v = value(i);
      if (v != x) {
        x = v;
        agree = 1;
      } else if (++agree == p) {
        t[static_cast<std::size_t>(k)] = x;
        ++res.work;
        for (std::size_t q = 0; q < p; ++q) {
          auto [rq, lq] = parts[q];
          if (lq + 1 < indexes[rq].arity()) range[rq] = indexes[rq].childRange(lq, cur[q]);
        }
        self(self, k + 1);
        for (std::size_t q = 0; q < p; ++q) range[parts[q].first] = saved[q];
        if (++cur[i] == saved[i].end) break;
        x = value(i);
        agree = 0;
        continue;
      }
      i = (i + 1) % p;
    }
  };
  rec(rec, 0);
  std::sort(res.tuples.begin(), res.tuples.end());
  return res;
}

BaselineResult runBaseline(const std::string& name, const Instance& inst, const Gao& gao) {
  if (name == "merge") return mergeIntersection(inst);
  if (name == "yannakakis") return yannakakis(inst);
  if (name == "leapfrog") return leapfrogJoin(inst, gao);
  throw std::invalid_argument("unknown baseline " + name);
}

}  // namespace minesweeper
