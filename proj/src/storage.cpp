#include "minesweeper/storage.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace minesweeper {

void Relation::normalize() {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

Relation alignedTo(const Relation& rel, const Gao& gao) {
  std::vector<std::size_t> perm(rel.attrs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return gao.positionOf(rel.attrs[a]) < gao.positionOf(rel.attrs[b]);
  });
  Relation out;
  out.name = rel.name;
  for (std::size_t j : perm) out.attrs.push_back(rel.attrs[j]);
  out.tuples.reserve(rel.tuples.size());
  for (const auto& t : rel.tuples) {
    if (t.size() != rel.attrs.size())
      throw std::invalid_argument("tuple arity mismatch in relation " + rel.name);
    std::vector<Value> row;
    row.reserve(t.size());
    for (std::size_t j : perm) row.push_back(t[j]);
    out.tuples.push_back(std::move(row));
  }
  return out;
}

TrieIndex TrieIndex::build(const Relation& rel, const Gao& gao) {
  TrieIndex idx;
  idx.name_ = rel.name;
  const std::size_t k = rel.attrs.size();
  for (std::size_t j = 0; j < k; ++j) {
    if (rel.attrs[j] < 0 || rel.attrs[j] >= gao.size())
      throw std::invalid_argument("relation " + rel.name + " uses an attribute outside the GAO");
    int pos = gao.positionOf(rel.attrs[j]);
    if (!idx.positions_.empty() && pos <= idx.positions_.back())
      throw std::invalid_argument("relation " + rel.name +
                                  " has attributes out of GAO order");
    idx.positions_.push_back(pos);
  }

  std::vector<std::vector<Value>> rows = rel.tuples;
  for (const auto& r : rows) {
    if (r.size() != k) throw std::invalid_argument("tuple arity mismatch in relation " + rel.name);
    for (Value v : r)
      if (v < 0 || v > kMaxStoredValue) throw DataError("value out of range in relation " + rel.name);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  idx.levels_.resize(k);
  // Level j gets a new node whenever the length-(j+1) prefix changes.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t firstNew = 0;
    if (i > 0) {
      while (firstNew < k && rows[i][firstNew] == rows[i - 1][firstNew]) ++firstNew;
    }
    for (std::size_t j = firstNew; j < k; ++j) {
      Level& lv = idx.levels_[j];
      lv.values.push_back(rows[i][j]);
      if (j + 1 < k) lv.childBegin.push_back(idx.levels_[j + 1].values.size());
    }
  }
  for (std::size_t j = 0; j + 1 < k; ++j)
    idx.levels_[j].childBegin.push_back(idx.levels_[j + 1].values.size());
  return idx;
}

TrieRange TrieIndex::rootRange() const {
  if (levels_.empty()) return {};
  return {0, levels_[0].values.size()};
}

TrieRange TrieIndex::childRange(int level, std::size_t pos) const {
  const Level& lv = levels_[static_cast<std::size_t>(level)];
  return {lv.childBegin[pos], lv.childBegin[pos + 1]};
}

Gap TrieIndex::findGapIn(int level, TrieRange range, Value a) const {
  const auto& vals = levels_[static_cast<std::size_t>(level)].values;
  std::size_t lo = range.begin, hi = range.end;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    ++comparisons_;
    if (vals[mid] < a)
      lo = mid + 1;
    else
      hi = mid;
  }
  int plus = static_cast<int>(lo - range.begin) + 1;
  if (lo < range.end) {
    ++comparisons_;
    if (vals[lo] == a) return {plus, plus};
  }
  return {plus - 1, plus};
}

std::size_t TrieIndex::seek(int level, TrieRange range, Value a) const {
  const auto& vals = levels_[static_cast<std::size_t>(level)].values;
  std::size_t step = 1, lo = range.begin, hi = range.begin;
  while (hi < range.end) {
    ++comparisons_;
    if (vals[hi] >= a) break;
    lo = hi + 1;
    hi = range.begin + step;
    step *= 2;
  }
  hi = std::min(hi, range.end);
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    ++comparisons_;
    if (vals[mid] < a)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

TrieRange TrieIndex::resolve(const IndexTuple& x, std::size_t len) const {
  if (len > levels_.size()) throw ShapeMismatch("index tuple longer than the relation arity");
  TrieRange r = rootRange();
  for (std::size_t j = 0; j < len; ++j) {
    if (x[j] < 1 || static_cast<std::size_t>(x[j]) > r.size())
      throw ShapeMismatch("index tuple coordinate out of range in " + name_);
    std::size_t pos = r.begin + static_cast<std::size_t>(x[j]) - 1;
    if (j + 1 < levels_.size())
      r = childRange(static_cast<int>(j), pos);
    else
      r = {pos, pos + 1};
  }
  return r;
}

std::size_t TrieIndex::fanout(const IndexTuple& x) const {
  if (levels_.empty()) return 0;
  TrieRange r = resolve(x, x.size());
  return x.size() == levels_.size() ? 0 : r.size();
}

Value TrieIndex::access(const IndexTuple& x) const {
  if (x.empty() || x.size() > levels_.size())
    throw ShapeMismatch("index tuple length must be 1..arity");
  TrieRange r = resolve(x, x.size() - 1);
  int last = x.back();
  if (last == 0) return kNegInf;
  if (static_cast<std::size_t>(last) == r.size() + 1) return kPosInf;
  if (last < 0 || static_cast<std::size_t>(last) > r.size() + 1)
    throw ShapeMismatch("index tuple coordinate out of range in " + name_);
  return levels_[x.size() - 1].values[r.begin + static_cast<std::size_t>(last) - 1];
}

Gap TrieIndex::findGap(const IndexTuple& x, Value a) const {
  if (x.size() >= levels_.size()) throw ShapeMismatch("findGap prefix must be shorter than the arity");
  return findGapIn(static_cast<int>(x.size()), resolve(x, x.size()), a);
}

IndexTuple TrieIndex::locate(const std::vector<Value>& tuple) const {
  if (tuple.size() != levels_.size()) throw ShapeMismatch("tuple arity mismatch in " + name_);
  IndexTuple x;
  TrieRange r = rootRange();
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    Gap g = findGapIn(static_cast<int>(j), r, tuple[j]);
    if (g.lo != g.hi) throw ShapeMismatch("tuple not present in " + name_);
    x.push_back(g.lo);
    std::size_t pos = r.begin + static_cast<std::size_t>(g.lo) - 1;
    if (j + 1 < tuple.size()) r = childRange(static_cast<int>(j), pos);
  }
  return x;
}

std::vector<IndexTuple> TrieIndex::indexTuples(int len) const {
  std::vector<IndexTuple> out;
  if (len < 1 || len > arity()) return out;
  IndexTuple cur;
  auto rec = [&](auto& self, int level, TrieRange r) -> void {
    for (std::size_t p = r.begin; p < r.end; ++p) {
      cur.push_back(static_cast<int>(p - r.begin) + 1);
      if (level + 1 == len)
        out.push_back(cur);
      else
        self(self, level + 1, childRange(level, p));
      cur.pop_back();
    }
  };
  rec(rec, 0, rootRange());
  return out;
}

std::int64_t Dictionary::parseNumber(const std::string& raw) const {
  std::int64_t v = 0;
  const char* first = raw.data();
  const char* last = raw.data() + raw.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (raw.empty() || ec != std::errc() || ptr != last)
    throw DataError("value '" + raw + "' is not an integer (numeric ordering requested)");
  return v;
}

void Dictionary::add(const std::string& raw) {
  if (finalized_) throw std::logic_error("dictionary already finalized");
  if (order_ == Order::Numeric) {
    std::int64_t v = parseNumber(raw);
    numCodes_.emplace(v, 0);
    numSpelling_.emplace(v, raw);
  } else {
    lexCodes_.emplace(raw, 0);
  }
}

void Dictionary::finalize() {
  Value next = 0;
  if (order_ == Order::Numeric) {
    for (auto& [v, code] : numCodes_) {
      code = next++;
      decoded_.push_back(numSpelling_[v]);
    }
  } else {
    for (auto& [raw, code] : lexCodes_) {
      code = next++;
      decoded_.push_back(raw);
    }
  }
  finalized_ = true;
}

Value Dictionary::encode(const std::string& raw) const {
  if (!finalized_) throw std::logic_error("dictionary not finalized");
  if (order_ == Order::Numeric) {
    auto it = numCodes_.find(parseNumber(raw));
    if (it == numCodes_.end()) throw DataError("unknown value '" + raw + "'");
    return it->second;
  }
  auto it = lexCodes_.find(raw);
  if (it == lexCodes_.end()) throw DataError("unknown value '" + raw + "'");
  return it->second;
}

const std::string& Dictionary::decode(Value code) const {
  if (code < 0 || static_cast<std::size_t>(code) >= decoded_.size())
    throw std::out_of_range("dictionary code out of range");
  return decoded_[static_cast<std::size_t>(code)];
}

}  // namespace minesweeper
