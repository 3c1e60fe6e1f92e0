#ifndef CORAL_OPTIMIZER_HPP
#define CORAL_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "coral/solver.hpp"

namespace coral {

enum class Verdict { Sat, Unsat, Optimum, Unknown };

// How the objective bound is driven across solutions/probes:
//   decreasing  one search; each solution tightens the bound and goes on;
//   increasing  probe bounds from the optimistic end, first hit is optimal;
//   dichotomic  bisect the bound interval with satisfiability probes.
enum class OptimizeStrategy { Decreasing, Increasing, Dichotomic };

const char* verdictName(Verdict v);
const char* strategyName(OptimizeStrategy s);
bool strategyFromName(const std::string& s, OptimizeStrategy* out);

struct SolveReport {
  Verdict verdict = Verdict::Unknown;
  bool complete = false;  // the search space was exhausted (proof, not luck)
  long long solutionCount = 0;
  bool hasSolution = false;
  std::vector<int> values;  // by variable id
  long long cost = 0;
  Statistics stats;
};

// Entry point shared by the CLI and the tests: decides CSP / COP treatment,
// runs the search, and condenses the outcome. onSolution (optional) fires on
// every recorded solution, letting a front end stream improving bounds.
// The problem is returned in its initial state, so repeated calls (with any
// options) are independent.
SolveReport solveProblem(
    Problem& pb, const SolverOptions& opts, bool countAll = false,
    OptimizeStrategy strategy = OptimizeStrategy::Decreasing,
    const std::function<void(const std::vector<int>&, long long)>& onSolution = {});

}  // namespace coral

#endif
