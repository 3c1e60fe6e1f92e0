#include "coral/propagation.hpp"

#include "coral/nogoods.hpp"

namespace coral {

bool Propagation::propagate() {
  while (!fifo_.empty()) {
    int id;
    if (lifo_) {
      id = fifo_.back();
      fifo_.pop_back();
    } else {
      id = fifo_.front();
      fifo_.pop_front();
    }
    if (!queued_.contains(id)) continue;
    queued_.remove(id);
    Variable& evt = pb_.var(id);

    if (reasoner_ && evt.dom.size() == 1 && !reasoner_->propagateOnSingleton(evt))
      return conflict(nullptr, *reasoner_->conflictVar());

    for (Constraint* c : evt.ctrs) {
      if (!c->enabled) continue;
      // A constraint guaranteeing arc consistency is entailed once its whole
      // scope is assigned (the last assignment was filtered through it).
      if (c->tagAC && c->futvars() == 0) continue;
      ++stats_->propagatorCalls;
      if (!c->runPropagator(evt)) return conflict(c, *c->wipeoutVar);
    }
  }
  return true;
}

bool Propagation::forwardCheck(Variable& x) {
  // Learned clauses still watch assignments under forward checking; their
  // pruning cascade is not chased, which costs strength but not soundness.
  if (reasoner_ && x.dom.size() == 1 && !reasoner_->propagateOnSingleton(x))
    return conflict(nullptr, *reasoner_->conflictVar());
  for (Constraint* c : x.ctrs) {
    if (!c->enabled || c->futvars() != 1) continue;
    ++stats_->propagatorCalls;
    if (!c->runPropagator(x)) return conflict(c, *c->wipeoutVar);
  }
  clearQueue();  // FC ignores the removals it queued
  return true;
}

}  // namespace coral
