#ifndef CORAL_GLOBALS_HPP
#define CORAL_GLOBALS_HPP

#include <string>
#include <vector>

#include "coral/constraint.hpp"

namespace coral {

// sum(coeffs . vars) <op> k, with a variable right-hand side folded in as a
// -1 coefficient term. Order operators get exact per-value bounds filtering to
// a fixpoint; eq additionally runs an exact reachable-sum pass when the span
// is small enough.
class SumConstraint : public Constraint {
 public:
  SumConstraint(Problem& pb, std::vector<Variable*> vars,
                std::vector<long long> coeffs, Condition cond);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "sum"; }

  static constexpr long long kExactSpanCap = 10000;

 private:
  bool boundsPass(bool forLe, bool* changed);
  bool exactEqPass();

  std::vector<long long> coeffs_;  // aligned with scope
  CmpOp op_;
  long long k_;
};

class AllDifferentConstraint : public Constraint {
 public:
  AllDifferentConstraint(Problem& pb, std::vector<Variable*> vars);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "allDifferent"; }
};

class AllEqualConstraint : public Constraint {
 public:
  AllEqualConstraint(Problem& pb, std::vector<Variable*> vars);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "allEqual"; }
};

// list[index] == value, with value either a constant or a variable; index
// values count from startIndex.
class ElementConstraint : public Constraint {
 public:
  ElementConstraint(Problem& pb, std::vector<Variable*> list, Variable* index,
                    Variable* valueVar, long long valueConst, int startIndex);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "element"; }

 private:
  bool valueHas(int v) const;   // value operand may take v
  int n_;                       // list length
  int indexPos_;                // position of index in scope
  int valuePos_;                // position of value var in scope, -1 if constant
  long long valueConst_;
  int startIndex_;
};

// |{i : x_i in values}| <op> k (constant operand only).
class CountConstraint : public Constraint {
 public:
  CountConstraint(Problem& pb, std::vector<Variable*> vars,
                  std::vector<int> values, CmpOp op, long long k);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "count"; }

 private:
  bool inValues(int v) const;
  bool domainSubset(const Domain& d) const;
  bool domainMeets(const Domain& d) const;
  bool forceVar(int i);   // keep only listed values
  bool forbidVar(int i);  // drop listed values
  std::vector<int> values_;  // sorted
  CmpOp op_;
  long long k_;
  int nList_;
};

// min/max of the list <op> operand (constant or variable).
class MinimumConstraint : public Constraint {
 public:
  MinimumConstraint(Problem& pb, std::vector<Variable*> list, Condition cond);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "minimum"; }

 private:
  int n_;
  CmpOp op_;
  long long k_;
  int condPos_;  // -1 when the operand is constant
};

class MaximumConstraint : public Constraint {
 public:
  MaximumConstraint(Problem& pb, std::vector<Variable*> list, Condition cond);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "maximum"; }

 private:
  int n_;
  CmpOp op_;
  long long k_;
  int condPos_;
};

// x1 <op> x2 <op> ... for an order operator; gt/ge run the list reversed.
class OrderedConstraint : public Constraint {
 public:
  OrderedConstraint(Problem& pb, std::vector<Variable*> list, CmpOp op);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "ordered"; }

 private:
  CmpOp op_;      // as given
  bool strict_;   // lt/gt
  bool reversed_; // original op was gt/ge
};

// X <=lex Y (or <lex); ge/gt swap the rows. Scope is X followed by Y.
class LexConstraint : public Constraint {
 public:
  LexConstraint(Problem& pb, std::vector<Variable*> xs, std::vector<Variable*> ys,
                CmpOp op);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "lex"; }

 private:
  int n_;
  bool strict_;
  bool swapped_;
};

// Each listed value t may only appear after the one before it has appeared.
class PrecedenceConstraint : public Constraint {
 public:
  PrecedenceConstraint(Problem& pb, std::vector<Variable*> list,
                       std::vector<int> values);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "precedence"; }

 private:
  std::vector<int> values_;  // in precedence order
};

// Number of distinct values taken by the list <op> operand.
class NValuesConstraint : public Constraint {
 public:
  NValuesConstraint(Problem& pb, std::vector<Variable*> list, Condition cond);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "nValues"; }

 private:
  int distinctLowerBound() const;
  int distinctUpperBound() const;
  bool forceAllEqual();
  int n_;
  CmpOp op_;
  long long k_;
  int condPos_;
};

// x[i] = j  <=>  y[j] = i (value space includes each side's startIndex); with
// a single list the permutation channels itself.
class ChannelConstraint : public Constraint {
 public:
  ChannelConstraint(Problem& pb, std::vector<Variable*> xs, int startX,
                    std::vector<Variable*> ys, int startY);  // ys empty => self
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "channel"; }

 private:
  Domain& xdom(int i) { return scope[i]->dom; }
  Domain& ydom(int j) { return scope[self_ ? j : n_ + j]->dom; }
  const Domain& xdomC(int i) const { return scope[i]->dom; }
  const Domain& ydomC(int j) const { return scope[self_ ? j : n_ + j]->dom; }
  int n_;
  int m_;
  int startX_;
  int startY_;
  bool self_;
};

}  // namespace coral

#endif
