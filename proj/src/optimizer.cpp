#include "coral/optimizer.hpp"

#include "coral/objective.hpp"

namespace coral {

const char* verdictName(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SATISFIABLE";
    case Verdict::Unsat: return "UNSATISFIABLE";
    case Verdict::Optimum: return "OPTIMUM FOUND";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

const char* strategyName(OptimizeStrategy s) {
  switch (s) {
    case OptimizeStrategy::Decreasing: return "decreasing";
    case OptimizeStrategy::Increasing: return "increasing";
    case OptimizeStrategy::Dichotomic: return "dichotomic";
  }
  return "?";
}

bool strategyFromName(const std::string& s, OptimizeStrategy* out) {
  if (s == "decreasing") *out = OptimizeStrategy::Decreasing;
  else if (s == "increasing") *out = OptimizeStrategy::Increasing;
  else if (s == "dichotomic") *out = OptimizeStrategy::Dichotomic;
  else return false;
  return true;
}

namespace {

void harvest(Solver& solver, SolveReport& rep) {
  rep.solutionCount = solver.solutions().count();
  rep.hasSolution = solver.solutions().any();
  if (rep.hasSolution) {
    rep.values = solver.solutions().values();
    rep.cost = solver.solutions().cost();
  }
}

void runCsp(Solver& solver, bool countAll, SolveReport& rep) {
  StopCause rc = solver.launch(countAll ? SearchMode::AllSolutions
                                        : SearchMode::FirstSolution);
  harvest(solver, rep);
  if (rc == StopCause::SolutionStop) {
    rep.verdict = Verdict::Sat;
  } else if (rc == StopCause::Exhausted) {
    rep.complete = true;
    rep.verdict = rep.hasSolution ? Verdict::Sat : Verdict::Unsat;
  } else {
    rep.verdict = rep.hasSolution ? Verdict::Sat : Verdict::Unknown;
  }
}

void runDecreasing(Solver& solver, SolveReport& rep) {
  StopCause rc = solver.launch(SearchMode::DecreasingCop);
  harvest(solver, rep);
  if (rc == StopCause::Exhausted) {
    rep.complete = true;
    rep.verdict = rep.hasSolution ? Verdict::Optimum : Verdict::Unsat;
  } else {
    rep.verdict = rep.hasSolution ? Verdict::Sat : Verdict::Unknown;
  }
}

void runIncreasing(Problem& pb, Solver& solver, SolveReport& rep) {
  if (!solver.prepareRoot()) {
    rep.complete = true;
    rep.verdict = Verdict::Unsat;
    return;
  }
  ObjectiveConstraint* obj = pb.objective;
  long long lo = obj->lowerBound();
  long long hi = obj->upperBound();
  bool minimize = obj->minimize;
  // Walk bounds from the optimistic end; since every earlier bound was
  // refuted, the first satisfiable probe yields the optimum.
  for (long long b = minimize ? lo : hi; minimize ? b <= hi : b >= lo;
       minimize ? ++b : --b) {
    obj->setLimit(b);
    StopCause rc = solver.launch(SearchMode::FirstSolution);
    if (rc == StopCause::SolutionStop) {
      harvest(solver, rep);
      rep.complete = true;
      rep.verdict = Verdict::Optimum;
      return;
    }
    if (rc != StopCause::Exhausted) {  // deadline or node limit mid-probe
      harvest(solver, rep);
      rep.verdict = Verdict::Unknown;
      return;
    }
    solver.resetForNextLaunch(/*clearNogoods=*/true);
  }
  harvest(solver, rep);
  rep.complete = true;
  rep.verdict = Verdict::Unsat;
}

void runDichotomic(Problem& pb, Solver& solver, SolveReport& rep) {
  if (!solver.prepareRoot()) {
    rep.complete = true;
    rep.verdict = Verdict::Unsat;
    return;
  }
  ObjectiveConstraint* obj = pb.objective;
  long long lo = obj->lowerBound();
  long long hi = obj->upperBound();
  bool minimize = obj->minimize;
  while (lo <= hi) {
    long long mid = lo + (hi - lo) / 2;
    obj->setLimit(mid);
    StopCause rc = solver.launch(SearchMode::FirstSolution);
    if (rc == StopCause::SolutionStop) {
      long long c = solver.solutions().cost();
      if (minimize) hi = c - 1; else lo = c + 1;
      // The bound only tightens from here on, so learned nogoods stay valid.
      solver.resetForNextLaunch(/*clearNogoods=*/false);
    } else if (rc == StopCause::Exhausted) {
      if (minimize) lo = mid + 1; else hi = mid - 1;
      // The next bound is looser than the one these nogoods assumed.
      solver.resetForNextLaunch(/*clearNogoods=*/true);
    } else {
      harvest(solver, rep);
      rep.verdict = rep.hasSolution ? Verdict::Sat : Verdict::Unknown;
      return;
    }
  }
  harvest(solver, rep);
  rep.complete = true;
  rep.verdict = rep.hasSolution ? Verdict::Optimum : Verdict::Unsat;
}

}  // namespace

SolveReport solveProblem(
    Problem& pb, const SolverOptions& opts, bool countAll,
    OptimizeStrategy strategy,
    const std::function<void(const std::vector<int>&, long long)>& onSolution) {
  SolveReport rep;
  if (opts.timeLimitMs == 0) return rep;  // zero budget: report UNKNOWN untouched
  Solver solver(pb, opts);
  solver.solutions().onRecord = onSolution;
  solver.stats().startTimer();
  if (opts.timeLimitMs >= 0)
    solver.setDeadline(std::chrono::steady_clock::now() +
                       std::chrono::milliseconds(opts.timeLimitMs));
  solver.hub().fireBeforeSolving();
  if (pb.objective == nullptr) {
    runCsp(solver, countAll, rep);
  } else {
    switch (strategy) {
      case OptimizeStrategy::Decreasing: runDecreasing(solver, rep); break;
      case OptimizeStrategy::Increasing: runIncreasing(pb, solver, rep); break;
      case OptimizeStrategy::Dichotomic: runDichotomic(pb, solver, rep); break;
    }
  }
  solver.hub().fireAfterSolving();
  solver.stats().stopTimer();
  rep.stats = solver.stats();
  // Hand the problem back untouched so it can be solved again: search-time
  // prunings (and enumeration nogoods, which exclude reported solutions)
  // must not leak into a later call.
  pb.restoreFull();
  if (pb.objective != nullptr) pb.objective->resetLimit();
  return rep;
}

}  // namespace coral
