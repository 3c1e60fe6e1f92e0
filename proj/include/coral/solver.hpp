#ifndef CORAL_SOLVER_HPP
#define CORAL_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <random>
#include <vector>

#include "coral/decisions.hpp"
#include "coral/heuristics.hpp"
#include "coral/nogoods.hpp"
#include "coral/observers.hpp"
#include "coral/problem.hpp"
#include "coral/propagation.hpp"
#include "coral/restarter.hpp"
#include "coral/solutions.hpp"
#include "coral/stats.hpp"

namespace coral {

struct SolverOptions {
  PropagationKind propagation = PropagationKind::AC;
  VarhKind varh = VarhKind::WdegOnDom;
  WeightMode weightMode = WeightMode::Cacd;
  bool antiVarh = false;          // invert the variable ordering
  bool lastConflict = true;       // LC(1): retry the last failing variable first
  ValhKind valh = ValhKind::First;
  bool solutionSaving = true;     // COP: branch on the last solution's values
  bool nogoods = true;            // record nld-nogoods at restarts
  RestartPolicy restarts{};
  long long timeLimitMs = -1;     // <0: none
  long long nodeLimit = -1;       // <0: none
  std::uint64_t seed = 0;
};

enum class SearchMode {
  FirstSolution,   // stop at the first solution
  AllSolutions,    // enumerate: treat each solution as a conflict
  DecreasingCop,   // tighten the objective limit at each solution and go on
};

enum class StopCause { Exhausted, SolutionStop, Deadline, NodeLimit };

// Restart-driven backtrack search over one Problem. A Solver may be launched
// several times (optimization probes); resetForNextLaunch() rolls everything
// back to a fresh root in between.
class Solver {
 public:
  Solver(Problem& pb, const SolverOptions& opts);
  ~Solver() {
    if (pb_.hub == &hub_) pb_.hub = nullptr;  // don't leave a dangling hub
  }
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  // Root propagation (always AC). False means the instance is unsatisfiable.
  bool prepareRoot();
  StopCause launch(SearchMode mode);
  void resetForNextLaunch(bool clearNogoods);

  void setDeadline(std::chrono::steady_clock::time_point t) {
    hasDeadline_ = true;
    deadline_ = t;
  }

  bool rootFailed() const { return rootFailed_; }
  Statistics& stats() { return stats_; }
  SolutionStore& solutions() { return sols_; }
  NogoodReasoner& nogoods() { return ng_; }
  WeightStore& weights() { return weights_; }
  ObserverHub& hub() { return hub_; }
  Propagation& propagation() { return prop_; }
  const SolverOptions& options() const { return opts_; }

 private:
  enum class RunResult { Exhausted, Stop, Cutoff, Deadline, NodeLimit };

  RunResult runOnce(long long cutoff);
  bool decidePositive(Variable& x, int idx);
  bool repairConflict();
  Variable* selectVariable();
  int selectValueIndex(Variable& x);
  int bivsProbe(Variable& x);
  bool leafSolution(bool* stop);
  void recordBranchNogoods();
  bool resetToRoot();  // restart bookkeeping; false: nogood install refuted root
  bool outOfTime();

  Problem& pb_;
  SolverOptions opts_;
  ObserverHub hub_;
  Statistics stats_;
  Propagation prop_;
  NogoodReasoner ng_;
  WeightStore weights_;
  DecisionStack decs_;
  SolutionStore sols_;
  std::mt19937_64 rng_;
  SearchMode mode_ = SearchMode::FirstSolution;
  Variable* lcVar_ = nullptr;
  bool prepared_ = false;
  bool rootFailed_ = false;
  long long wrongThisRun_ = 0;
  bool hasDeadline_ = false;
  std::chrono::steady_clock::time_point deadline_{};
};

}  // namespace coral

#endif
