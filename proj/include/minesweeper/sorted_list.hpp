#pragma once

#include <iterator>
#include <map>
#include <optional>
#include <utility>

#include "minesweeper/types.hpp"

namespace minesweeper {

/// Ordered map from values to payloads (balanced tree underneath).
template <class Payload>
class SortedList {
 public:
  using Map = std::map<Value, Payload>;
  using iterator = typename Map::iterator;
  using const_iterator = typename Map::const_iterator;

  bool find(Value v) const { return items_.count(v) != 0; }

  Payload* get(Value v) {
    auto it = items_.find(v);
    return it == items_.end() ? nullptr : &it->second;
  }
  const Payload* get(Value v) const {
    auto it = items_.find(v);
    return it == items_.end() ? nullptr : &it->second;
  }

  /// Least key >= v.
  std::optional<Value> findLub(Value v) const {
    auto it = items_.lower_bound(v);
    if (it == items_.end()) return std::nullopt;
    return it->first;
  }
  const_iterator lub(Value v) const { return items_.lower_bound(v); }
  const_iterator after(Value v) const { return items_.upper_bound(v); }

  /// No-op if the key is already present.
  Payload& insert(Value v, Payload p) { return items_.try_emplace(v, std::move(p)).first->second; }

  bool erase(Value v) { return items_.erase(v) != 0; }

  /// Removes every key strictly inside (lo, hi); returns how many went.
  std::size_t eraseInterval(Value lo, Value hi) {
    if (lo >= hi) return 0;
    auto first = items_.upper_bound(lo);
    auto last = items_.lower_bound(hi);
    std::size_t n = static_cast<std::size_t>(std::distance(first, last));
    items_.erase(first, last);
    return n;
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  iterator begin() { return items_.begin(); }
  iterator end() { return items_.end(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

 private:
  Map items_;
};

}  // namespace minesweeper
