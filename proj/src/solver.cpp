#include "coral/solver.hpp"

#include <cassert>

#include "coral/objective.hpp"

namespace coral {

Solver::Solver(Problem& pb, const SolverOptions& opts)
    : pb_(pb),
      opts_(opts),
      prop_(pb, hub_, stats_),
      ng_(pb),
      weights_(pb, opts.weightMode),
      decs_(pb),
      rng_(opts.seed) {
  pb_.hub = &hub_;
  hub_.conflicts.push_back(&weights_);
  if (opts_.nogoods) prop_.setNogoodReasoner(&ng_);
}

bool Solver::prepareRoot() {
  hub_.fireBeforePreprocessing();
  bool ok = !pb_.triviallyFalse && prop_.propagateAll();
  // Permanent removals learned in earlier launches are reapplied here.
  if (ok && opts_.nogoods && ng_.unitCount() > 0)
    ok = ng_.applyUnits() && prop_.propagate();
  hub_.fireAfterPreprocessing();
  prepared_ = true;
  rootFailed_ = !ok;
  return ok;
}

void Solver::resetForNextLaunch(bool clearNogoods) {
  pb_.restoreFull();
  decs_.clear();
  lcVar_ = nullptr;
  prop_.clearQueue();
  if (clearNogoods) ng_.clear();
  prepared_ = false;
  rootFailed_ = false;
}

StopCause Solver::launch(SearchMode mode) {
  mode_ = mode;
  if (!prepared_) prepareRoot();
  if (rootFailed_) return StopCause::Exhausted;

  hub_.fireBeforeSearch();
  bool restartsOn = opts_.restarts.enabled();
  // Without nogoods a restarted enumeration would revisit solutions.
  if (mode_ == SearchMode::AllSolutions && !opts_.nogoods) restartsOn = false;

  StopCause out = StopCause::Exhausted;
  int run = 0;
  while (true) {
    ++stats_.runs;
    hub_.fireBeforeRun(run);
    wrongThisRun_ = 0;
    long long cutoff = restartsOn ? opts_.restarts.cutoff(run) : -1;
    RunResult rc = runOnce(cutoff);
    hub_.fireAfterRun(run);
    if (rc == RunResult::Stop) { out = StopCause::SolutionStop; break; }
    if (rc == RunResult::Deadline) { out = StopCause::Deadline; break; }
    if (rc == RunResult::NodeLimit) { out = StopCause::NodeLimit; break; }
    if (rc == RunResult::Exhausted) { out = StopCause::Exhausted; break; }
    // Cutoff reached: learn from the abandoned branch, restart from the root.
    if (opts_.nogoods) recordBranchNogoods();
    if (!resetToRoot()) {
      rootFailed_ = true;
      out = StopCause::Exhausted;
      break;
    }
    ++run;
  }
  hub_.fireAfterSearch();
  return out;
}

bool Solver::resetToRoot() {
  pb_.restoreBefore(1);
  pb_.level = 0;
  for (int i = 0; i < pb_.varCount(); ++i) pb_.var(i).assignmentLevel = -1;
  decs_.clear();
  prop_.clearQueue();
  if (opts_.nogoods) {
    if (!ng_.installPending()) return false;
    if (!prop_.propagate()) return false;
  }
  return true;
}

bool Solver::outOfTime() {
  return hasDeadline_ && std::chrono::steady_clock::now() >= deadline_;
}

Solver::RunResult Solver::runOnce(long long cutoff) {
  long long poll = 0;
  while (true) {
    if (hasDeadline_ && (++poll & 127) == 1 && outOfTime())
      return RunResult::Deadline;
    if (opts_.nodeLimit >= 0 && stats_.nodes >= opts_.nodeLimit)
      return RunResult::NodeLimit;
    if (cutoff >= 0 && wrongThisRun_ >= cutoff)
      return RunResult::Cutoff;

    Variable* x = selectVariable();
    if (x == nullptr) {
      bool stop = false;
      if (leafSolution(&stop) && stop) return RunResult::Stop;
      if (!repairConflict()) return RunResult::Exhausted;
      continue;
    }

    int idx = selectValueIndex(*x);
    if (idx < 0) {
      // Value probing refuted every candidate and emptied the domain.
      hub_.fireWhenWipeout(nullptr, *x);
      if (!repairConflict()) return RunResult::Exhausted;
      continue;
    }

    if (decidePositive(*x, idx)) {
      if (lcVar_ == x) lcVar_ = nullptr;
    } else {
      if (opts_.lastConflict) lcVar_ = x;
      if (!repairConflict()) return RunResult::Exhausted;
    }
  }
}

bool Solver::decidePositive(Variable& x, int idx) {
  ++pb_.level;
  hub_.fireBeforePositiveDecision(x, idx);
  ++stats_.nodes;
  decs_.push(decs_.encode(x, idx));
  x.dom.reduceToIdx(idx, pb_.level);
  x.assignmentLevel = pb_.level;
  hub_.fireAfterAssignment(x, idx);
  if (opts_.propagation == PropagationKind::FC) return prop_.forwardCheck(x);
  return prop_.propagate();
}

bool Solver::repairConflict() {
  while (!decs_.empty()) {
    int d = decs_.top();
    Variable& x = decs_.varOf(d);
    int idx = decs_.idxOf(d);
    if (!DecisionStack::isPositive(d)) {
      // A refutation's removal is tagged one level below; the enclosing
      // positive decision's restore will undo it.
      decs_.pop();
      continue;
    }
    ++stats_.backtracks;
    hub_.fireWhenBacktrack();
    pb_.restoreBefore(pb_.level);
    --pb_.level;
    x.assignmentLevel = -1;
    hub_.fireAfterUnassignment(x);
    decs_.pop();
    ++stats_.wrongDecisions;
    ++wrongThisRun_;

    hub_.fireBeforeNegativeDecision(x, idx);
    ++stats_.nodes;
    decs_.push(-decs_.encode(x, idx));
    if (x.dom.removeIdx(idx, pb_.level)) {
      hub_.fireWhenWipeout(nullptr, x);
      continue;
    }
    if (opts_.propagation == PropagationKind::FC) {
      // Forward checking reacts to assignments only.
      prop_.clearQueue();
      return true;
    }
    if (prop_.propagate()) return true;
  }
  return false;
}

Variable* Solver::selectVariable() {
  if (opts_.lastConflict && lcVar_ != nullptr && !lcVar_->assigned())
    return lcVar_;

  if (opts_.varh == VarhKind::Rand) {
    int n = 0;
    for (int i = 0; i < pb_.varCount(); ++i)
      if (!pb_.var(i).assigned()) ++n;
    if (n == 0) return nullptr;
    int k = static_cast<int>(rng_() % static_cast<std::uint64_t>(n));
    for (int i = 0; i < pb_.varCount(); ++i) {
      Variable& x = pb_.var(i);
      if (!x.assigned() && k-- == 0) return &x;
    }
    return nullptr;
  }

  Variable* best = nullptr;
  double bestScore = 0.0;
  for (int i = 0; i < pb_.varCount(); ++i) {
    Variable& x = pb_.var(i);
    if (x.assigned()) continue;
    double s = varhScore(opts_.varh, x, weights_);
    if (opts_.antiVarh) s = -s;
    if (best == nullptr || s > bestScore) {  // ties keep the smallest id
      best = &x;
      bestScore = s;
    }
  }
  return best;
}

int Solver::selectValueIndex(Variable& x) {
  Domain& d = x.dom;
  if (pb_.objective != nullptr && opts_.solutionSaving && sols_.any()) {
    int i = d.toIdx(sols_.values()[x.id]);
    if (i >= 0 && d.contains(i)) return i;
    return d.first();
  }
  switch (opts_.valh) {
    case ValhKind::First:
      return d.first();
    case ValhKind::Last:
      return d.last();
    case ValhKind::Rand: {
      int k = static_cast<int>(rng_() % static_cast<std::uint64_t>(d.size()));
      int i = d.first();
      while (k-- > 0) i = d.next(i);
      return i;
    }
    case ValhKind::Bivs:
      if (pb_.objective == nullptr || d.size() > 100) return d.first();
      return bivsProbe(x);
  }
  return d.first();
}

int Solver::bivsProbe(Variable& x) {
  ObjectiveConstraint* obj = pb_.objective;
  Domain& d = x.dom;
  std::vector<int> idxs;
  for (int i = d.first(); i != -1; i = d.next(i)) idxs.push_back(i);

  int best = -1;
  long long bestBound = 0;
  for (int idx : idxs) {
    if (!d.contains(idx)) continue;  // removed by an earlier failed probe
    ++pb_.level;
    d.reduceToIdx(idx, pb_.level);
    bool ok = prop_.propagate();
    long long bound = 0;
    if (ok) bound = obj->minimize ? obj->lowerBound() : obj->upperBound();
    pb_.restoreBefore(pb_.level);
    --pb_.level;
    if (!ok) {
      // The candidate is inconsistent: discard it at the current level.
      if (d.removeIdx(idx, pb_.level)) return -1;
      continue;
    }
    if (best == -1 || (obj->minimize ? bound < bestBound : bound > bestBound)) {
      best = idx;
      bestBound = bound;
    }
  }
  return best;
}

bool Solver::leafSolution(bool* stop) {
  std::vector<int> vals(pb_.varCount());
  for (int i = 0; i < pb_.varCount(); ++i)
    vals[i] = pb_.var(i).dom.singleValue();

  // Full re-check of every constraint: propagators may be optimistic (forward
  // checking, bounds reasoning), so a leaf only counts once verified.
  std::vector<int> sv;
  for (int c = 0; c < pb_.ctrCount(); ++c) {
    Constraint& ctr = pb_.ctr(c);
    if (!ctr.enabled) continue;
    sv.resize(ctr.scope.size());
    for (size_t j = 0; j < ctr.scope.size(); ++j)
      sv[j] = vals[ctr.scope[j]->id];
    if (!ctr.checkValues(sv)) return false;
  }

  long long cost = 0;
  if (pb_.objective != nullptr) {
    ObjectiveConstraint* obj = pb_.objective;
    sv.resize(obj->scope.size());
    for (size_t j = 0; j < obj->scope.size(); ++j)
      sv[j] = vals[obj->scope[j]->id];
    cost = obj->cost(sv);
  }
  sols_.record(vals, cost);
  ++stats_.solutions;

  switch (mode_) {
    case SearchMode::FirstSolution:
      *stop = true;
      break;
    case SearchMode::AllSolutions:
      *stop = false;
      break;
    case SearchMode::DecreasingCop: {
      ObjectiveConstraint* obj = pb_.objective;
      obj->setLimit(obj->minimize ? cost - 1 : cost + 1);
      *stop = false;
      break;
    }
  }
  return true;
}

void Solver::recordBranchNogoods() {
  std::vector<int64_t> positives;
  for (int i = 0; i < decs_.size(); ++i) {
    int d = decs_.at(i);
    Variable& x = decs_.varOf(d);
    int64_t k = ng_.key(x, decs_.idxOf(d));
    if (DecisionStack::isPositive(d)) {
      positives.push_back(k);
    } else {
      std::vector<int64_t> clause = positives;
      clause.push_back(k);
      if (ng_.recordClause(std::move(clause))) ++stats_.nogoodsRecorded;
    }
  }
}

}  // namespace coral
