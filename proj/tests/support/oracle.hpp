#ifndef CORAL_TESTS_SUPPORT_ORACLE_HPP
#define CORAL_TESTS_SUPPORT_ORACLE_HPP

// Reference answers by exhaustive enumeration. Nothing here touches the
// propagation queue, the trail or the search loop: verdicts come from walking
// the full cross product of the initial universes and applying plain
// predicates.

#include <climits>
#include <functional>
#include <vector>

#include "coral/problem.hpp"

namespace testsup {

using Check = std::function<bool(const std::vector<int>&)>;

// Visits every assignment (values indexed by variable id) accepted by all
// checks. visit may return false to stop early; returns the number of accepted
// assignments visited.
inline long long enumerate(
    const coral::Problem& pb, const std::vector<Check>& checks,
    const std::function<bool(const std::vector<int>&)>& visit = {}) {
  int n = pb.varCount();
  std::vector<int> vals(n);
  long long count = 0;
  bool stop = false;
  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == n) {
      for (const auto& c : checks)
        if (!c(vals)) return;
      ++count;
      if (visit && !visit(vals)) stop = true;
      return;
    }
    const coral::Domain& d = pb.var(i).dom;
    for (int idx = 0; idx < d.initialSize() && !stop; ++idx) {
      vals[i] = d.toVal(idx);
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

inline long long countSolutions(const coral::Problem& pb,
                                const std::vector<Check>& checks) {
  return enumerate(pb, checks);
}

inline bool satisfiable(const coral::Problem& pb,
                        const std::vector<Check>& checks) {
  bool found = false;
  enumerate(pb, checks, [&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

struct BruteOptimum {
  bool sat = false;
  long long best = 0;
};

inline BruteOptimum bruteOptimum(
    const coral::Problem& pb, const std::vector<Check>& checks,
    const std::function<long long(const std::vector<int>&)>& cost,
    bool minimize) {
  BruteOptimum out;
  out.best = minimize ? LLONG_MAX : LLONG_MIN;
  enumerate(pb, checks, [&](const std::vector<int>& vals) {
    long long c = cost(vals);
    if (!out.sat || (minimize ? c < out.best : c > out.best)) out.best = c;
    out.sat = true;
    return true;
  });
  return out;
}

// Wraps each enabled constraint's decision procedure as a value-space check.
// Used for instances read from files, where no independently generated
// predicate exists; everywhere else prefer the generator's own checks.
inline std::vector<Check> checksFromConstraints(coral::Problem& pb) {
  std::vector<Check> out;
  for (int i = 0; i < pb.ctrCount(); ++i) {
    coral::Constraint* c = &pb.ctr(i);
    if (!c->enabled) continue;
    out.push_back([c](const std::vector<int>& vals) {
      std::vector<int> scoped(c->scope.size());
      for (size_t p = 0; p < c->scope.size(); ++p)
        scoped[p] = vals[c->scope[p]->id];
      return c->checkValues(scoped);
    });
  }
  return out;
}

// Arc-consistent fixpoint by definition over index lists: repeatedly delete
// any index with no accepting extension. doms holds the present indexes per
// position; acceptsIdxs decides full index tuples.
inline void bruteAcFixpoint(
    std::vector<std::vector<int>>* doms,
    const std::function<bool(const std::vector<int>&)>& acceptsIdxs) {
  int arity = static_cast<int>(doms->size());
  std::vector<int> tuple(arity);
  std::function<bool(int, int)> supported = [&](int fixedPos, int i) -> bool {
    if (i == arity) return acceptsIdxs(tuple);
    if (i == fixedPos) return supported(fixedPos, i + 1);
    for (int idx : (*doms)[i]) {
      tuple[i] = idx;
      if (supported(fixedPos, i + 1)) return true;
    }
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < arity; ++p) {
      auto& list = (*doms)[p];
      for (size_t k = 0; k < list.size();) {
        tuple[p] = list[k];
        if (supported(p, 0)) {
          ++k;
        } else {
          list.erase(list.begin() + k);
          changed = true;
        }
      }
      if (list.empty()) return;  // wiped out; fixpoint is moot
    }
  }
}

// Present-index snapshot of every domain, for byte-wise state comparison.
inline std::vector<std::vector<char>> snapshotDomains(const coral::Problem& pb) {
  std::vector<std::vector<char>> out(pb.varCount());
  for (int i = 0; i < pb.varCount(); ++i) {
    const coral::Domain& d = pb.var(i).dom;
    out[i].assign(d.initialSize(), 0);
    for (int a = d.first(); a != -1; a = d.next(a)) out[i][a] = 1;
  }
  return out;
}

inline std::vector<int> presentIdxs(const coral::Domain& d) {
  std::vector<int> out;
  for (int a = d.first(); a != -1; a = d.next(a)) out.push_back(a);
  return out;
}

}  // namespace testsup

#endif
