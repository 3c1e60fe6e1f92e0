#ifndef CORAL_OBJECTIVE_HPP
#define CORAL_OBJECTIVE_HPP

#include <climits>
#include <string>
#include <vector>

#include "coral/constraint.hpp"

namespace coral {

// The objective doubles as a constraint: search keeps it propagated against a
// moving limit (cost <= limit when minimizing, >= when maximizing), which is
// how branch-and-bound prunes.
class ObjectiveConstraint : public Constraint {
 public:
  ObjectiveConstraint(Problem& pb, std::vector<Variable*> scope, bool minimize)
      : Constraint(pb, std::move(scope)), minimize(minimize),
        limit_(minimize ? LLONG_MAX : LLONG_MIN) {}

  long long limit() const { return limit_; }
  void setLimit(long long l) { limit_ = l; }
  void resetLimit() { limit_ = minimize ? LLONG_MAX : LLONG_MIN; }
  bool bounded() const {
    return limit_ != (minimize ? LLONG_MAX : LLONG_MIN);
  }
  // The bound a solution must improve on next: cost <= limit / >= limit.
  bool admits(long long cost) const {
    return !bounded() || (minimize ? cost <= limit_ : cost >= limit_);
  }

  virtual long long lowerBound() const = 0;  // least cost the domains still allow
  virtual long long upperBound() const = 0;
  virtual long long cost(const std::vector<int>& scopeVals) const = 0;

  bool checkValues(const std::vector<int>& vals) const override {
    return admits(cost(vals));
  }

  bool minimize;

 protected:
  long long limit_;
};

class ObjectiveVar : public ObjectiveConstraint {
 public:
  ObjectiveVar(Problem& pb, Variable* x, bool minimize);
  bool runPropagator(Variable& evt) override;
  long long lowerBound() const override;
  long long upperBound() const override;
  long long cost(const std::vector<int>& scopeVals) const override;
  std::string kindName() const override { return "objective(var)"; }
};

class ObjectiveSum : public ObjectiveConstraint {
 public:
  ObjectiveSum(Problem& pb, std::vector<Variable*> vars,
               std::vector<long long> coeffs, bool minimize);
  bool runPropagator(Variable& evt) override;
  long long lowerBound() const override;
  long long upperBound() const override;
  long long cost(const std::vector<int>& scopeVals) const override;
  std::string kindName() const override { return "objective(sum)"; }

 private:
  std::vector<long long> coeffs_;
};

class ObjectiveMin : public ObjectiveConstraint {
 public:
  ObjectiveMin(Problem& pb, std::vector<Variable*> list, bool minimize);
  bool runPropagator(Variable& evt) override;
  long long lowerBound() const override;
  long long upperBound() const override;
  long long cost(const std::vector<int>& scopeVals) const override;
  std::string kindName() const override { return "objective(minimum)"; }
};

class ObjectiveMax : public ObjectiveConstraint {
 public:
  ObjectiveMax(Problem& pb, std::vector<Variable*> list, bool minimize);
  bool runPropagator(Variable& evt) override;
  long long lowerBound() const override;
  long long upperBound() const override;
  long long cost(const std::vector<int>& scopeVals) const override;
  std::string kindName() const override { return "objective(maximum)"; }
};

class ObjectiveNValues : public ObjectiveConstraint {
 public:
  ObjectiveNValues(Problem& pb, std::vector<Variable*> list, bool minimize);
  bool runPropagator(Variable& evt) override;
  long long lowerBound() const override;
  long long upperBound() const override;
  long long cost(const std::vector<int>& scopeVals) const override;
  std::string kindName() const override { return "objective(nValues)"; }
};

}  // namespace coral

#endif
