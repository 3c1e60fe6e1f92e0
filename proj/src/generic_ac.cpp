#include "coral/generic_ac.hpp"

#include "coral/problem.hpp"

namespace coral {

GenericACConstraint::GenericACConstraint(Problem& pb, std::vector<Variable*> scope)
    : Constraint(pb, std::move(scope)), iter_(this->scope) {
  tagAC = true;
  tagCallCompleteFiltering = true;
  residues_.resize(arity());
  for (int p = 0; p < arity(); ++p)
    residues_[p].resize(this->scope[p]->dom.initialSize());
}

bool GenericACConstraint::residueValid(const std::vector<int>& tuple) const {
  if (tuple.empty()) return false;
  for (int p = 0; p < arity(); ++p)
    if (!scope[p]->dom.contains(tuple[p])) return false;
  return true;
}

bool GenericACConstraint::runPropagator(Variable&) {
  // A removal made while revising one variable can kill supports recorded for
  // another, so passes repeat until none of them prunes.
  bool changedOverall;
  do {
    changedOverall = false;
    for (int p = 0; p < arity(); ++p) {
      Domain& d = scope[p]->dom;
      for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
        if (useResidues_ && residueValid(residues_[p][idx])) continue;
        ++seeks_;
        bool found = false;
        if (iter_.firstValidWith(p, idx)) {
          do {
            if (acceptsIdxs(iter_.current())) {
              found = true;
              break;
            }
          } while (iter_.nextValid());
        }
        if (found) {
          const std::vector<int>& t = iter_.current();
          for (int q = 0; q < arity(); ++q) residues_[q][t[q]] = t;
        } else {
          changedOverall = true;
          if (d.removeIdx(idx, level())) return fail(*scope[p]);
        }
      }
    }
  } while (changedOverall);
  return true;
}

}  // namespace coral
