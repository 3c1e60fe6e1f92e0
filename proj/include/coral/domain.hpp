#ifndef CORAL_DOMAIN_HPP
#define CORAL_DOMAIN_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "coral/observers.hpp"
#include "coral/sets.hpp"

namespace coral {

class Variable;

// Finite integer domain: an immutable value universe (contiguous range or an
// explicit sorted value list) plus the set of currently present indexes.
// All search-time mutation is by index; removals are stamped with the level
// they happened at and undone by restoreBefore(). A 0/1 domain is just the
// range form with capacity 2.
class Domain {
 public:
  Domain(int lo, int hi)
      : lo_(lo), present_(hi - lo + 1) {
    assert(lo <= hi);
  }
  // values must be strictly increasing.
  explicit Domain(std::vector<int> values)
      : values_(std::move(values)), present_(static_cast<int>(values_.size())) {
    assert(!values_.empty());
    assert(std::adjacent_find(values_.begin(), values_.end(),
                              [](int a, int b) { return a >= b; }) == values_.end());
    if (values_.back() - values_.front() + 1 == static_cast<int>(values_.size())) {
      lo_ = values_.front();  // contiguous: collapse to range form
      values_.clear();
    }
  }

  // --- universe ------------------------------------------------------------
  int initialSize() const { return present_.capacity(); }
  bool rangeForm() const { return values_.empty(); }
  int toVal(int idx) const {
    assert(0 <= idx && idx < initialSize());
    return rangeForm() ? lo_ + idx : values_[idx];
  }
  // -1 when v is not in the universe.
  int toIdx(int v) const {
    if (rangeForm())
      return v >= lo_ && v <= lo_ + initialSize() - 1 ? v - lo_ : -1;
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    return it != values_.end() && *it == v ? static_cast<int>(it - values_.begin()) : -1;
  }

  // --- presence ------------------------------------------------------------
  int size() const { return present_.size(); }
  bool contains(int idx) const { return present_.contains(idx); }
  bool containsValue(int v) const {
    int idx = toIdx(v);
    return idx >= 0 && present_.contains(idx);
  }
  int first() const { return present_.first(); }
  int last() const { return present_.last(); }
  int next(int idx) const { return present_.next(idx); }
  int prev(int idx) const { return present_.prev(idx); }
  int firstValue() const { return toVal(first()); }
  int lastValue() const { return toVal(last()); }
  int singleValue() const { assert(size() == 1); return firstValue(); }

  // Removed-index view, newest first (drives delta-based propagators).
  int lastRemoved() const { return present_.lastRemoved(); }
  int prevRemoved(int idx) const { return present_.prevRemoved(idx); }
  int removedLevel(int idx) const { return present_.removedLevel(idx); }

  // Bumped by every removal and every restore; lets propagators detect any
  // change since their previous call, including across backtracks.
  uint64_t modCount() const { return mods_; }

  // --- mutation (all return true on wipeout) -------------------------------
  bool removeIdx(int idx, int level) {
    assert(contains(idx));
    present_.remove(idx, level);
    ++mods_;
    notify(idx);
    return present_.empty();
  }
  bool removeValue(int v, int level) {
    int idx = toIdx(v);
    if (idx < 0 || !contains(idx)) return false;
    return removeIdx(idx, level);
  }
  // Keep only idx. If idx is absent (or -1, a failed toIdx), the domain is
  // left untouched and the wipeout flag is returned.
  bool reduceToIdx(int idx, int level) {
    if (idx < 0 || !contains(idx)) return true;
    for (int a = first(); a != -1; a = next(a))
      if (a != idx) removeIdx(a, level);
    return false;
  }
  bool removeValuesBelow(int v, int level) {  // remove all values < v
    for (int a = first(); a != -1 && toVal(a) < v; a = next(a))
      if (removeIdx(a, level)) return true;
    return false;
  }
  bool removeValuesAbove(int v, int level) {  // remove all values > v
    for (int a = last(); a != -1 && toVal(a) > v;) {
      int p = prev(a);  // before removal: removing reuses prev_ for the undo chain
      if (removeIdx(a, level)) return true;
      a = p;
    }
    return false;
  }

  void restoreBefore(int level) {
    if (present_.restoreBefore(level) > 0) ++mods_;
  }

  std::vector<int> presentValues() const {
    std::vector<int> out;
    out.reserve(size());
    for (int a = first(); a != -1; a = next(a)) out.push_back(toVal(a));
    return out;
  }

  // Wired by Problem so removals reach the propagation queue and statistics.
  void bind(Variable* var, ObserverHub** hub) { var_ = var; hub_ = hub; }

 private:
  void notify(int idx) {
    if (hub_ && *hub_) (*hub_)->fireAfterRemoval(*var_, idx);
  }

  std::vector<int> values_;  // empty in range form
  int lo_ = 0;
  SetLinkedFinite present_;
  uint64_t mods_ = 0;
  Variable* var_ = nullptr;
  ObserverHub** hub_ = nullptr;
};

}  // namespace coral

#endif
