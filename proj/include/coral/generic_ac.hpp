#ifndef CORAL_GENERIC_AC_HPP
#define CORAL_GENERIC_AC_HPP

#include <vector>

#include "coral/constraint.hpp"
#include "coral/tuple_iterator.hpp"

namespace coral {

// Arc-consistency scheme for any constraint that can answer "does this index
// tuple satisfy you?". Each (position, index) keeps the last support found;
// a still-valid residue short-circuits the seek, otherwise supports are
// searched in lexicographic order over the current domains and recorded for
// every literal of the found tuple.
class GenericACConstraint : public Constraint {
 public:
  GenericACConstraint(Problem& pb, std::vector<Variable*> scope);

  bool runPropagator(Variable& evt) override;

  void setUseResidues(bool on) { useResidues_ = on; }  // test hook
  long long supportSeeks() const { return seeks_; }

 protected:
  virtual bool acceptsIdxs(const std::vector<int>& idxs) const = 0;

 private:
  bool reviseAll();
  bool residueValid(const std::vector<int>& tuple) const;

  std::vector<std::vector<std::vector<int>>> residues_;  // [pos][idx] -> tuple
  TupleIterator iter_;
  bool useResidues_ = true;
  long long seeks_ = 0;
};

}  // namespace coral

#endif
