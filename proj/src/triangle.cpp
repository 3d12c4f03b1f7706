#include "minesweeper/triangle.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace minesweeper {

DyadicTree::DyadicTree(int depth) : depth_(depth) {
  if (depth < 0 || depth > 30) throw std::invalid_argument("dyadic depth out of range");
  n_ = Value{1} << depth;
  lists_.resize(static_cast<std::size_t>(2 * n_));
}

int DyadicTree::nodeDepth(std::size_t node) const { return std::bit_width(node) - 1; }

ClosedRange DyadicTree::range(std::size_t node) const {
  int j = nodeDepth(node);
  Value b = static_cast<Value>(node) - (Value{1} << j);
  Value width = Value{1} << (depth_ - j);
  return {b * width, (b + 1) * width - 1};
}

std::optional<std::size_t> DyadicTree::nextSibling(std::size_t node) const {
  // Drop trailing right-child steps, then turn the last left step right.
  while (node > 1 && (node & 1U)) node >>= 1;
  if (node <= 1) return std::nullopt;
  return node + 1;
}

std::vector<std::size_t> DyadicTree::decompose(Value a1, Value a2) const {
  if (a1 < 0 || a2 >= n_ || a1 > a2) throw std::out_of_range("interval outside the dyadic domain");
  std::vector<std::size_t> out;
  auto rec = [&](auto& self, std::size_t node) -> void {
    auto [lo, hi] = range(node);
    if (hi < a1 || lo > a2) return;
    if (a1 <= lo && hi <= a2) {
      out.push_back(node);
      return;
    }
    self(self, 2 * node);
    self(self, 2 * node + 1);
  };
  rec(rec, root());
  return out;
}

void DyadicTree::addAt(std::size_t node, Value lo, Value hi) {
  auto [a, b] = toClosed(lo, hi);
  std::vector<ClosedRange> fresh = lists_[node].uncoveredRanges(a, b);
  if (fresh.empty()) return;
  lists_[node].insert(lo, hi);
  if (node == root()) return;
  const IntervalList& sibling = lists_[node ^ 1U];
  for (const auto& [p, q] : fresh)
    for (const auto& [r, s] : sibling.coveredRanges(p, q)) addAt(node >> 1, pred(r), succ(s));
}

void DyadicTree::insert(Value b, Value lo, Value hi) {
  if (b < 0 || b >= n_) throw std::out_of_range("B value outside the dyadic domain");
  if (lo < 0) lo = kNegInf;
  if (lo >= hi) throw std::invalid_argument("malformed interval");
  addAt(leaf(b), lo, hi);
}

void DyadicTree::fillDown(std::size_t node) {
  if (isLeaf(node)) return;
  for (std::size_t child : {2 * node, 2 * node + 1}) {
    if (lists_[child].coversRange(kNegInf, kPosInf)) continue;
    lists_[child].insert(kNegInf, kPosInf);
    fillDown(child);
  }
}

void DyadicTree::fill(Value b1, Value b2) {
  for (std::size_t node : decompose(b1, b2)) {
    addAt(node, kNegInf, kPosInf);
    fillDown(node);
  }
}

Value nextUnionAll(const std::vector<const IntervalList*>& lists, Value v) {
  Value cur = v;
  while (true) {
    Value start = cur;
    for (const IntervalList* l : lists) cur = l->next(cur);
    if (cur == start) return cur;
  }
}

namespace {

int depthFor(Value maxB) {
  int d = 0;
  while ((Value{1} << d) <= maxB) ++d;
  return d;
}

}  // namespace

TriangleCds::TriangleCds(Value maxB) : dyadic_(depthFor(maxB)) {
  for (const Constraint& c : clampConstraints()) iStar_.insert(c.lo, c.hi);
}

std::vector<Constraint> TriangleCds::clampConstraints() const {
  return {Constraint{{std::nullopt}, kNegInf, 0},
          Constraint{{std::nullopt}, dyadic_.domain() - 1, kPosInf}};
}

Value TriangleCds::getCache(Value a, std::size_t node) const {
  auto it = cache_.find({a, node});
  return it == cache_.end() ? -1 : it->second;
}

void TriangleCds::setCache(Value a, std::size_t node, Value c) {
  Value& slot = cache_.try_emplace({a, node}, -1).first->second;
  if (c > slot) slot = c;
}

const IntervalList& TriangleCds::listOrEmpty(const std::map<Value, IntervalList>& m, Value key) const {
  auto it = m.find(key);
  return it == m.end() ? empty_ : it->second;
}

void TriangleCds::insertB(Value a, Value lo, Value hi) {
  iEqA_[a].insert(lo, hi);
  ++counters_.insertions;
}

void TriangleCds::insertStarB(Value lo, Value hi) {
  iStar_.insert(lo, hi);
  Value b1 = std::max<Value>(succ(lo), 0);
  Value b2 = std::min<Value>(pred(hi), dyadic_.domain() - 1);
  if (b1 <= b2) dyadic_.fill(b1, b2);
}

void TriangleCds::insConstraint(const Constraint& c) {
  Value lo = c.lo < 0 ? kNegInf : c.lo;
  if (lo >= c.hi) throw std::invalid_argument("malformed constraint interval");
  ++counters_.insertions;
  const auto& p = c.prefix;
  switch (p.size()) {
    case 0:
      ia_.insert(lo, c.hi);
      return;
    case 1:
      if (p[0])
        iEqA_[*p[0]].insert(lo, c.hi);
      else
        insertStarB(lo, c.hi);
      return;
    case 2:
      if (p[0] && p[1]) {
        iEqAB_[{*p[0], *p[1]}].insert(lo, c.hi);
      } else if (p[0]) {
        iEqAStar_[*p[0]].insert(lo, c.hi);
      } else if (p[1]) {
        if (*p[1] >= 0 && *p[1] < dyadic_.domain()) dyadic_.insert(*p[1], lo, c.hi);
      } else {
        throw std::logic_error("triangle store cannot hold <*,*,interval> constraints");
      }
      return;
    default:
      throw std::invalid_argument("constraint prefix too long for the triangle query");
  }
}

void TriangleCds::onOutput(const Tuple& t) { setCache(t[0], dyadic_.leaf(t[1]), succ(t[2])); }

bool TriangleCds::bRangeDead(const IntervalList& ia, ClosedRange r) const {
  return nextUnion(ia, iStar_, r.first) > r.second;
}

std::optional<Tuple> TriangleCds::getProbePoint() {
  while (true) {
    // A
    Value a = ia_.next(-1);
    if (a == kPosInf) return std::nullopt;
    // When the stores that ignore A already cover every (b,c), no A value
    // can survive; closing only (a-1,a+1) would walk A forever.
    auto ruleOutA = [&] {
      bool all = iStar_.next(-1) == kPosInf || dyadic_.list(dyadic_.root()).next(-1) == kPosInf;
      Value lo = all ? kNegInf : a - 1, hi = all ? kPosInf : a + 1;
      ia_.insert(lo, hi);
      ++counters_.insertions;
      ++counters_.backtracks;
      if (trace_) emit("backtrack <(" + formatValue(lo) + "," + formatValue(hi) + "),*,*>");
    };

    // B
    const IntervalList& iA = listOrEmpty(iEqA_, a);
    if (nextUnion(iA, iStar_, -1) == kPosInf) {
      ruleOutA();
      continue;
    }

    // C
    const IntervalList& iAStar = listOrEmpty(iEqAStar_, a);
    if (iAStar.next(-1) == kPosInf) {
      ruleOutA();
      continue;
    }
    std::optional<std::size_t> x = dyadic_.root();
    while (x) {
      std::size_t node = *x;
      ClosedRange br = dyadic_.range(node);
      if (bRangeDead(listOrEmpty(iEqA_, a), br)) {
        x = dyadic_.nextSibling(node);
        continue;
      }
      Value c;
      if (dyadic_.isLeaf(node)) {
        Value b = br.first;
        auto ab = iEqAB_.find({a, b});
        std::vector<const IntervalList*> lists{&iAStar, &dyadic_.list(node)};
        if (ab != iEqAB_.end()) lists.push_back(&ab->second);
        c = nextUnionAll(lists, getCache(a, node));
        setCache(a, node, c);
        if (c != kPosInf) return Tuple{a, b, c};
      } else {
        c = nextUnion(iAStar, dyadic_.list(node), getCache(a, node));
        setCache(a, node, c);
        if (c != kPosInf) {
          x = 2 * node;
          continue;
        }
      }
      // No C value survives anywhere in this B-range for a.
      insertB(a, pred(br.first), succ(br.second));
      x = dyadic_.nextSibling(node);
    }
    ruleOutA();
  }
}

}  // namespace minesweeper
