#include "coral/nogoods.hpp"

#include <cassert>

namespace coral {

bool NogoodReasoner::installPending() {
  assert(pb_.level == 0);
  for (auto& raw : pending_) {
    std::vector<int64_t> lits;
    bool skip = false;
    for (int64_t k : raw) {
      if (satisfied(k)) { skip = true; break; }  // already true at root
      if (!falsified(k)) lits.push_back(k);      // falsified at root: drop
    }
    if (skip) continue;
    if (lits.empty()) {
      pending_.clear();
      conflictVar_ = &varOf(raw.front());
      return false;
    }
    if (lits.size() == 1) {
      units_.push_back(lits[0]);
      Variable& x = varOf(lits[0]);
      if (x.dom.removeIdx(idxOf(lits[0]), 0)) {
        pending_.clear();
        conflictVar_ = &x;
        return false;
      }
      continue;
    }
    int id = static_cast<int>(store_.size());
    watches_[lits[0]].push_back(id);
    watches_[lits[1]].push_back(id);
    store_.push_back({std::move(lits), 0, 1});
    ++stored_;
  }
  pending_.clear();
  return true;
}

bool NogoodReasoner::applyUnits() {
  assert(pb_.level == 0);
  for (int64_t k : units_) {
    Variable& x = varOf(k);
    int idx = idxOf(k);
    if (!x.dom.contains(idx)) continue;
    if (x.dom.removeIdx(idx, 0)) {
      conflictVar_ = &x;
      return false;
    }
  }
  return true;
}

bool NogoodReasoner::propagateOnSingleton(Variable& x) {
  int64_t k = key(x, x.dom.first());
  auto& list = watches_[k];
  size_t i = 0;
  while (i < list.size()) {
    Nogood& ng = store_[list[i]];
    int self = ng.lits[ng.w1] == k ? ng.w1 : ng.w2;
    int other = self == ng.w1 ? ng.w2 : ng.w1;

    int repl = -1;
    for (int j = 0; j < static_cast<int>(ng.lits.size()); ++j) {
      if (j == ng.w1 || j == ng.w2) continue;
      if (!falsified(ng.lits[j])) { repl = j; break; }
    }
    if (repl != -1) {
      (self == ng.w1 ? ng.w1 : ng.w2) = repl;
      watches_[ng.lits[repl]].push_back(list[i]);
      list[i] = list.back();
      list.pop_back();
      continue;
    }

    int64_t ko = ng.lits[other];
    Variable& y = varOf(ko);
    if (satisfied(ko)) { ++i; continue; }
    if (falsified(ko)) {  // every literal falsified
      conflictVar_ = &y;
      return false;
    }
    if (y.dom.removeIdx(idxOf(ko), pb_.level)) {
      conflictVar_ = &y;
      return false;
    }
    ++i;
  }
  return true;
}

}  // namespace coral
