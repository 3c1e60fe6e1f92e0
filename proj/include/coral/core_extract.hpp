#ifndef CORAL_CORE_EXTRACT_HPP
#define CORAL_CORE_EXTRACT_HPP

#include <vector>

#include "coral/solver.hpp"

namespace coral {

struct CoreResult {
  bool satisfiable = false;  // the instance has a solution: no core exists
  bool interrupted = false;  // budget ran out: the core may not be minimal
  std::vector<int> core;     // constraint ids, in declaration order
};

// Deletion-based unsatisfiable-core extraction on a CSP (no objective):
// constraints are scanned in declaration order, each one tentatively disabled
// and kept out when the rest stays unsatisfiable. The result is unsatisfiable
// and, unless interrupted, minimal w.r.t. removing any single member.
// opts.timeLimitMs (when set) bounds the whole extraction; the problem is
// left fully restored with every constraint re-enabled.
CoreResult extractCore(Problem& pb, const SolverOptions& opts);

}  // namespace coral

#endif
