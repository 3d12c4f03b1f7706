#include "minesweeper/interval_list.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace minesweeper {

thread_local std::uint64_t IntervalList::nextCalls_ = 0;

Value IntervalList::next(Value v) const {
  ++nextCalls_;
  auto it = ends_.lub(v);
  if (it == ends_.end()) return v;
  if (it->second == Tag::L) return v;
  return it->first;  // v inside a piece ending at it, or v is that endpoint
}

bool IntervalList::covers(Value v) const {
  auto it = ends_.lub(v);
  if (it == ends_.end() || it->second == Tag::L) return false;
  return it->first != v;
}

void IntervalList::insert(Value lo, Value hi) {
  if (lo >= hi)
    throw std::invalid_argument("malformed interval (" + formatValue(lo) + "," + formatValue(hi) + ")");
  const bool loCovered = covers(lo);
  const bool hiCovered = covers(hi);
  ends_.eraseInterval(lo, hi);
  if (!loCovered) {
    if (Tag* t = ends_.get(lo)) {
      if (*t == Tag::R) *t = Tag::M;
    } else {
      ends_.insert(lo, Tag::L);
    }
  }
  if (!hiCovered) {
    if (Tag* t = ends_.get(hi)) {
      if (*t == Tag::L) *t = Tag::M;
    } else {
      ends_.insert(hi, Tag::R);
    }
  }
}

std::vector<std::pair<Value, Value>> IntervalList::pieces() const {
  std::vector<std::pair<Value, Value>> out;
  Value left = 0;
  for (const auto& [v, tag] : ends_) {
    if (tag != Tag::L) out.emplace_back(left, v);
    left = v;
  }
  return out;
}

std::vector<ClosedRange> IntervalList::coveredRanges(Value a, Value b) const {
  std::vector<ClosedRange> out;
  if (a > b) return out;
  auto it = ends_.after(a);
  if (it == ends_.end()) return out;
  if (it->second != Tag::L) --it;  // predecessor opens the piece containing a
  while (it != ends_.end() && it->first < b) {
    auto nxt = std::next(it);
    Value lo = std::max(a, succ(it->first));
    Value hi = std::min(b, pred(nxt->first));
    if (lo <= hi) out.emplace_back(lo, hi);
    it = nxt->second == Tag::M ? nxt : std::next(nxt);
  }
  return out;
}

std::vector<ClosedRange> IntervalList::uncoveredRanges(Value a, Value b) const {
  std::vector<ClosedRange> out;
  if (a > b) return out;
  Value cur = a;
  for (const auto& [lo, hi] : coveredRanges(a, b)) {
    if (cur < lo) out.emplace_back(cur, lo - 1);
    cur = hi == kPosInf ? hi : hi + 1;
    if (hi == kPosInf) return out;
  }
  if (cur <= b) out.emplace_back(cur, b);
  return out;
}

bool IntervalList::coversRange(Value a, Value b) const {
  if (a > b) return true;
  auto c = coveredRanges(a, b);
  return c.size() == 1 && c.front().first == a && c.front().second == b;
}

std::string IntervalList::toString() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [lo, hi] : pieces()) {
    if (!first) os << ' ';
    first = false;
    os << '(' << formatValue(lo) << ',' << formatValue(hi) << ')';
  }
  return os.str();
}

Value nextUnion(const IntervalList& a, const IntervalList& b, Value v) {
  Value cur = v;
  while (true) {
    Value x = a.next(cur);
    Value y = b.next(x);
    if (y == x) return x;
    cur = y;
  }
}

}  // namespace minesweeper
