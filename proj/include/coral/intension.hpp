#ifndef CORAL_INTENSION_HPP
#define CORAL_INTENSION_HPP

#include <memory>
#include <string>
#include <vector>

#include "coral/constraint.hpp"
#include "coral/expr.hpp"
#include "coral/generic_ac.hpp"

namespace coral {

// Predicate constraint driven by an expression tree; filtered by the generic
// arc-consistency scheme (supports sought tuple by tuple).
class IntensionConstraint : public GenericACConstraint {
 public:
  IntensionConstraint(Problem& pb, std::unique_ptr<ExprNode> tree,
                      std::vector<Variable*> scope);

  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "intension"; }
  const ExprNode& tree() const { return *tree_; }

 protected:
  bool acceptsIdxs(const std::vector<int>& idxs) const override;

 private:
  std::unique_ptr<ExprNode> tree_;
  mutable std::vector<int> vals_;  // idx->value scratch
};

// x <op> k. One pass of value filtering settles it for good.
class UnaryCmpConstraint : public Constraint {
 public:
  UnaryCmpConstraint(Problem& pb, Variable* x, CmpOp op, long long k);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "intension(unary)"; }

 private:
  CmpOp op_;
  long long k_;
};

// x + k <op> y over two distinct variables; arc consistent (bounds reasoning
// for the order operators, value-wise for eq/ne).
class BinaryCmpConstraint : public Constraint {
 public:
  BinaryCmpConstraint(Problem& pb, Variable* x, long long k, CmpOp op, Variable* y);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "intension(binary)"; }

  long long offset() const { return k_; }
  CmpOp op() const { return op_; }

 private:
  long long k_;
  CmpOp op_;
};

// Posts the given predicate: a specialized propagator when the tree matches a
// recognized shape (x op k, x + k op y), the generic scheme otherwise.
// Constant-truth trees post nothing and set Problem::triviallyFalse as needed.
Constraint* postIntension(Problem& pb, std::unique_ptr<ExprNode> tree,
                          const std::string& name = "");

}  // namespace coral

#endif
