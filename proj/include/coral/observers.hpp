#ifndef CORAL_OBSERVERS_HPP
#define CORAL_OBSERVERS_HPP

#include <vector>

namespace coral {

class Constraint;
class Variable;

// Event interfaces the search engine fires at well-defined points. Components
// (weight stores, statistics, tests) subscribe to the hub for what they need.

struct SolvingObserver {
  virtual ~SolvingObserver() = default;
  virtual void beforeSolving() {}
  virtual void beforePreprocessing() {}
  virtual void afterPreprocessing() {}
  virtual void beforeSearch() {}
  virtual void afterSearch() {}
  virtual void afterSolving() {}
};

struct RunObserver {
  virtual ~RunObserver() = default;
  virtual void beforeRun(int run) { (void)run; }
  virtual void afterRun(int run) { (void)run; }
};

struct BacktrackObserver {
  virtual ~BacktrackObserver() = default;
  // Undo every effect recorded at a level >= level.
  virtual void restoreBefore(int level) = 0;
};

struct DecisionObserver {
  virtual ~DecisionObserver() = default;
  virtual void beforePositiveDecision(Variable& x, int idx) { (void)x; (void)idx; }
  virtual void beforeNegativeDecision(Variable& x, int idx) { (void)x; (void)idx; }
};

struct AssignmentObserver {
  virtual ~AssignmentObserver() = default;
  virtual void afterAssignment(Variable& x, int idx) { (void)x; (void)idx; }
  virtual void afterUnassignment(Variable& x) { (void)x; }
};

struct RemovalObserver {
  virtual ~RemovalObserver() = default;
  virtual void afterRemoval(Variable& x, int idx) { (void)x; (void)idx; }
};

struct ConflictObserver {
  virtual ~ConflictObserver() = default;
  // c is null when the wipeout came from a decision or a learned nogood.
  virtual void whenWipeout(Constraint* c, Variable& x) { (void)c; (void)x; }
  virtual void whenBacktrack() {}
};

class ObserverHub {
 public:
  std::vector<SolvingObserver*> solving;
  std::vector<RunObserver*> runs;
  std::vector<BacktrackObserver*> backtracks;
  std::vector<DecisionObserver*> decisions;
  std::vector<AssignmentObserver*> assignments;
  std::vector<RemovalObserver*> removals;
  std::vector<ConflictObserver*> conflicts;

  void fireBeforeSolving() { for (auto* o : solving) o->beforeSolving(); }
  void fireBeforePreprocessing() { for (auto* o : solving) o->beforePreprocessing(); }
  void fireAfterPreprocessing() { for (auto* o : solving) o->afterPreprocessing(); }
  void fireBeforeSearch() { for (auto* o : solving) o->beforeSearch(); }
  void fireAfterSearch() { for (auto* o : solving) o->afterSearch(); }
  void fireAfterSolving() { for (auto* o : solving) o->afterSolving(); }
  void fireBeforeRun(int r) { for (auto* o : runs) o->beforeRun(r); }
  void fireAfterRun(int r) { for (auto* o : runs) o->afterRun(r); }
  void fireRestoreBefore(int level) { for (auto* o : backtracks) o->restoreBefore(level); }
  void fireBeforePositiveDecision(Variable& x, int a) { for (auto* o : decisions) o->beforePositiveDecision(x, a); }
  void fireBeforeNegativeDecision(Variable& x, int a) { for (auto* o : decisions) o->beforeNegativeDecision(x, a); }
  void fireAfterAssignment(Variable& x, int a) { for (auto* o : assignments) o->afterAssignment(x, a); }
  void fireAfterUnassignment(Variable& x) { for (auto* o : assignments) o->afterUnassignment(x); }
  void fireAfterRemoval(Variable& x, int a) { for (auto* o : removals) o->afterRemoval(x, a); }
  void fireWhenWipeout(Constraint* c, Variable& x) { for (auto* o : conflicts) o->whenWipeout(c, x); }
  void fireWhenBacktrack() { for (auto* o : conflicts) o->whenBacktrack(); }
};

}  // namespace coral

#endif
