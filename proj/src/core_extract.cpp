#include "coral/core_extract.hpp"

namespace coral {

namespace {

enum class ProbeOutcome { Sat, Unsat, Timeout };

ProbeOutcome probe(Problem& pb, const SolverOptions& opts,
                   bool hasDeadline,
                   std::chrono::steady_clock::time_point deadline) {
  pb.restoreFull();
  Solver solver(pb, opts);
  if (hasDeadline) solver.setDeadline(deadline);
  StopCause rc = solver.launch(SearchMode::FirstSolution);
  if (rc == StopCause::SolutionStop) return ProbeOutcome::Sat;
  if (rc == StopCause::Exhausted) return ProbeOutcome::Unsat;
  return ProbeOutcome::Timeout;
}

}  // namespace

CoreResult extractCore(Problem& pb, const SolverOptions& opts) {
  CoreResult res;
  // Each probe is a fresh solver; the global deadline is shared by all.
  bool hasDeadline = opts.timeLimitMs >= 0;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(hasDeadline ? opts.timeLimitMs : 0);
  SolverOptions popts = opts;
  popts.timeLimitMs = -1;  // the absolute deadline replaces the per-run limit

  switch (probe(pb, popts, hasDeadline, deadline)) {
    case ProbeOutcome::Sat:
      res.satisfiable = true;
      pb.restoreFull();
      return res;
    case ProbeOutcome::Timeout:
      // Could not even confirm unsatisfiability: everything is a candidate.
      res.interrupted = true;
      for (int i = 0; i < pb.ctrCount(); ++i) res.core.push_back(i);
      pb.restoreFull();
      return res;
    case ProbeOutcome::Unsat:
      break;
  }

  for (int i = 0; i < pb.ctrCount(); ++i) {
    Constraint& c = pb.ctr(i);
    c.enabled = false;
    ProbeOutcome out = probe(pb, popts, hasDeadline, deadline);
    if (out == ProbeOutcome::Unsat) continue;  // c is redundant: stays disabled
    c.enabled = true;                          // needed (or unproven)
    if (out == ProbeOutcome::Timeout) {
      res.interrupted = true;
      // Keep every untested constraint too; the core stays unsatisfiable.
      break;
    }
  }
  for (int i = 0; i < pb.ctrCount(); ++i)
    if (pb.ctr(i).enabled) res.core.push_back(i);
  for (int i = 0; i < pb.ctrCount(); ++i) pb.ctr(i).enabled = true;
  pb.restoreFull();
  return res;
}

}  // namespace coral
