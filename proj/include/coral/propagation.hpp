#ifndef CORAL_PROPAGATION_HPP
#define CORAL_PROPAGATION_HPP

#include <deque>

#include "coral/observers.hpp"
#include "coral/problem.hpp"
#include "coral/sets.hpp"
#include "coral/stats.hpp"

namespace coral {

class NogoodReasoner;

enum class PropagationKind { AC, FC };

// Variable-oriented propagation: a FIFO of touched variables feeds the
// propagators of each popped variable until either a fixpoint is reached or
// some constraint reports a wipeout. The engine registers itself for removal
// events so any domain reduction re-queues its variable.
class Propagation : public RemovalObserver {
 public:
  Propagation(Problem& pb, ObserverHub& hub, Statistics& stats)
      : pb_(pb), hub_(&hub), stats_(&stats), queued_(pb.varCount()) {
    hub.removals.push_back(this);
  }

  void afterRemoval(Variable& x, int) override {
    ++stats_->removals;
    enqueue(x);
  }

  void enqueue(Variable& x) {
    if (!queued_.contains(x.id)) {
      queued_.add(x.id);
      fifo_.push_back(x.id);
    }
  }

  void clearQueue() {
    fifo_.clear();
    queued_.clear();
  }

  void setNogoodReasoner(NogoodReasoner* r) { reasoner_ = r; }
  // Test hook: flips the pick order (correctness must not depend on it).
  void setLifoPick(bool lifo) { lifo_ = lifo; }

  // Arc consistency to fixpoint from the pending queue. False on wipeout
  // (conflict observers fired, queue cleared).
  bool propagate();

  // Queues every variable and propagates; the root/preprocessing call.
  bool propagateAll() {
    for (int i = 0; i < pb_.varCount(); ++i) enqueue(pb_.var(i));
    return propagate();
  }

  // Forward checking after assigning x: only constraints of x with exactly
  // one other unassigned variable run, once, with no fixpoint loop.
  bool forwardCheck(Variable& x);

 private:
  bool conflict(Constraint* c, Variable& x) {
    hub_->fireWhenWipeout(c, x);
    clearQueue();
    return false;
  }

  Problem& pb_;
  ObserverHub* hub_;
  Statistics* stats_;
  SetSparse queued_;
  std::deque<int> fifo_;
  NogoodReasoner* reasoner_ = nullptr;
  bool lifo_ = false;
};

}  // namespace coral

#endif
