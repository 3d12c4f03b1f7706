#include "minesweeper/constraint_tree.hpp"

#include <sstream>
#include <stdexcept>
#include <tuple>

namespace minesweeper {

namespace {

// Wildcards sort before equalities so canonical orderings are stable.
int componentRank(const Component& c) { return c ? 1 : 0; }

}  // namespace

bool Constraint::operator<(const Constraint& o) const {
  if (prefix.size() != o.prefix.size()) return prefix.size() < o.prefix.size();
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    int ra = componentRank(prefix[i]), rb = componentRank(o.prefix[i]);
    if (ra != rb) return ra < rb;
    if (prefix[i] && *prefix[i] != *o.prefix[i]) return *prefix[i] < *o.prefix[i];
  }
  return std::tie(lo, hi) < std::tie(o.lo, o.hi);
}

std::string formatPattern(const Pattern& p) {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    if (p[i])
      os << '=' << formatValue(*p[i]);
    else
      os << '*';
  }
  os << '>';
  return os.str();
}

std::string formatConstraint(const Constraint& c, int n) {
  std::ostringstream os;
  os << '<';
  for (const auto& comp : c.prefix) {
    if (comp)
      os << '=' << formatValue(*comp) << ',';
    else
      os << "*,";
  }
  os << '(' << formatValue(c.lo) << ',' << formatValue(c.hi) << ')';
  for (int i = c.position() + 1; i < n; ++i) os << ",*";
  os << '>';
  return os.str();
}

bool satisfies(const Tuple& t, const Constraint& c) {
  if (t.size() <= c.prefix.size()) return false;
  for (std::size_t i = 0; i < c.prefix.size(); ++i)
    if (c.prefix[i] && *c.prefix[i] != t[i]) return false;
  Value v = t[c.prefix.size()];
  return c.lo < v && v < c.hi;
}

bool generalizes(const Pattern& p, const Pattern& q) {
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] && (!q[i] || *q[i] != *p[i])) return false;
  return true;
}

Pattern meet(const Pattern& p, const Pattern& q) {
  if (p.size() != q.size()) throw std::logic_error("meet of patterns with different lengths");
  Pattern out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] && q[i] && *p[i] != *q[i]) throw std::logic_error("meet of conflicting patterns");
    out[i] = p[i] ? p[i] : q[i];
  }
  return out;
}

int equalityCount(const Pattern& p) {
  int k = 0;
  for (const auto& c : p) k += c ? 1 : 0;
  return k;
}

ConstraintTree::ConstraintTree(int n) : n_(n), root_(std::make_unique<Node>()) {
  if (n < 1) throw std::invalid_argument("constraint tree needs at least one attribute");
}

bool ConstraintTree::insert(const Constraint& c) {
  if (c.position() >= n_) throw std::invalid_argument("constraint prefix too long");
  Value lo = c.lo < 0 ? kNegInf : c.lo;
  if (lo >= c.hi)
    throw std::invalid_argument("malformed constraint interval (" + formatValue(c.lo) + "," +
                                formatValue(c.hi) + ")");
  ++insertCalls_;
  Node* v = root_.get();
  for (const auto& comp : c.prefix) {
    if (comp) {
      if (v->intervals.covers(*comp)) return false;
      auto* slot = v->equalities.get(*comp);
      if (!slot) {
        auto child = std::make_unique<Node>();
        child->pattern = v->pattern;
        child->pattern.push_back(comp);
        slot = &v->equalities.insert(*comp, std::move(child));
        ++nodesCreated_;
      }
      v = slot->get();
    } else {
      if (!v->star) {
        v->star = std::make_unique<Node>();
        v->star->pattern = v->pattern;
        v->star->pattern.push_back(std::nullopt);
        ++nodesCreated_;
      }
      v = v->star.get();
    }
  }
  v->intervals.insert(lo, c.hi);
  v->equalities.eraseInterval(lo, c.hi);
  return true;
}

ConstraintTree::Node* ConstraintTree::find(const Pattern& p) {
  Node* v = root_.get();
  for (const auto& comp : p) {
    if (comp) {
      auto* slot = v->equalities.get(*comp);
      if (!slot) return nullptr;
      v = slot->get();
    } else {
      if (!v->star) return nullptr;
      v = v->star.get();
    }
  }
  return v;
}

std::vector<ConstraintTree::Node*> ConstraintTree::principalFilter(const Tuple& prefix) {
  std::vector<Node*> out;
  const std::size_t depth = prefix.size();
  auto rec = [&](auto& self, Node* v) -> void {
    if (v->pattern.size() == depth) {
      if (!v->intervals.empty()) out.push_back(v);
      return;
    }
    Value t = prefix[v->pattern.size()];
    if (auto* slot = v->equalities.get(t)) self(self, slot->get());
    if (v->star) self(self, v->star.get());
  };
  rec(rec, root_.get());
  return out;
}

std::string ConstraintTree::dump() const {
  std::ostringstream os;
  auto rec = [&](auto& self, const Node* v) -> void {
    os << formatPattern(v->pattern) << " | " << v->intervals.toString() << " |";
    if (v->star) os << " *";
    for (const auto& [label, child] : v->equalities) os << " =" << formatValue(label);
    os << '\n';
    if (v->star) self(self, v->star.get());
    for (const auto& [label, child] : v->equalities) self(self, child.get());
  };
  rec(rec, root_.get());
  return os.str();
}

}  // namespace minesweeper
