#ifndef CORAL_NOGOODS_HPP
#define CORAL_NOGOODS_HPP

#include <cstdint>
#include <vector>

#include "coral/problem.hpp"

namespace coral {

// Nogoods extracted from the rightmost branch at restarts. Each one is a
// disjunction of refutations "x != a" that every solution must satisfy; it is
// propagated with two watched literals. A literal is keyed as id*stride+idx;
// it is falsified when its variable's domain is reduced to exactly that index
// and satisfied when the index is gone.
class NogoodReasoner {
 public:
  explicit NogoodReasoner(Problem& pb, size_t capacity = 100000)
      : pb_(pb), stride_(pb.maxDomSize()), capacity_(capacity),
        watches_(static_cast<size_t>(pb.varCount()) * stride_) {}

  int64_t key(const Variable& x, int idx) const {
    return static_cast<int64_t>(x.id) * stride_ + idx;
  }

  // Queues a raw clause; literals are installed against root state later.
  // Returns false when the store is at capacity and the clause is dropped.
  bool recordClause(std::vector<int64_t> lits) {
    if (stored_ + pending_.size() >= capacity_) return false;
    pending_.push_back(std::move(lits));
    return true;
  }

  // Must be called with the problem restored to the root level: simplifies
  // each pending clause, turning empty ones into failure, unit ones into
  // permanent removals, and the rest into watched nogoods. False on wipeout.
  bool installPending();

  // Re-applies the permanent unit removals (after a full restore).
  bool applyUnits();

  // Watched-literal propagation for a variable whose domain became singleton.
  bool propagateOnSingleton(Variable& x);

  Variable* conflictVar() const { return conflictVar_; }

  size_t storeSize() const { return stored_; }
  size_t unitCount() const { return units_.size(); }

  void clear() {
    store_.clear();
    pending_.clear();
    units_.clear();
    for (auto& w : watches_) w.clear();
    stored_ = 0;
  }

 private:
  struct Nogood {
    std::vector<int64_t> lits;
    int w1, w2;  // positions of the watched literals
  };

  Variable& varOf(int64_t k) { return pb_.var(static_cast<int>(k / stride_)); }
  int idxOf(int64_t k) const { return static_cast<int>(k % stride_); }
  bool falsified(int64_t k) {
    Variable& x = varOf(k);
    return x.dom.size() == 1 && x.dom.contains(idxOf(k));
  }
  bool satisfied(int64_t k) {
    return !varOf(k).dom.contains(idxOf(k));
  }

  Problem& pb_;
  int stride_;
  size_t capacity_;
  std::vector<Nogood> store_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::vector<int64_t>> pending_;
  std::vector<int64_t> units_;
  size_t stored_ = 0;
  Variable* conflictVar_ = nullptr;
};

}  // namespace coral

#endif
