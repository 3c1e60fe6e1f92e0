#ifndef CORAL_CONSTRAINT_HPP
#define CORAL_CONSTRAINT_HPP

#include <string>
#include <vector>

#include "coral/variable.hpp"

namespace coral {

class Problem;

// Comparison operators used by conditions and relational expressions.
enum class CmpOp { Lt, Le, Ge, Gt, Eq, Ne };

const char* cmpOpName(CmpOp op);
bool cmpHolds(CmpOp op, long long lhs, long long rhs);
CmpOp cmpMirror(CmpOp op);   // swap sides: a op b  <=>  b mirror(op) a
CmpOp cmpNegate(CmpOp op);   // logical complement

// Right-hand side of a global constraint: either a constant or a variable.
struct Condition {
  CmpOp op = CmpOp::Eq;
  Variable* var = nullptr;  // null => constant operand
  long long k = 0;
};

class Constraint {
 public:
  Constraint(Problem& pb, std::vector<Variable*> scope);
  virtual ~Constraint() = default;

  // Filters current domains after a change on evt. Returns false on an
  // inconsistency; wipeoutVar then names the domain reported as wiped out.
  virtual bool runPropagator(Variable& evt) = 0;

  // Decision procedure on full instantiations of the scope (values, aligned
  // with scope order). The semantic reference for search and verification.
  virtual bool checkValues(const std::vector<int>& vals) const = 0;
  bool checkIdxs(const std::vector<int>& idxs) const;

  virtual std::string kindName() const = 0;

  int arity() const { return static_cast<int>(scope.size()); }
  int scopePosition(const Variable& x) const;
  int futvars() const;  // unassigned variables in scope

  Problem& pb;
  std::vector<Variable*> scope;
  int id = -1;
  std::string name;
  bool enabled = true;

  // Guarantees, not aspirations: only set when the propagator provides them.
  bool tagAC = false;                // removes every index without support
  bool tagCallCompleteFiltering = false;  // one call reaches its fixpoint
  bool tagSymmetric = false;
  bool tagStarredCompatible = false;

  Variable* wipeoutVar = nullptr;

 protected:
  bool fail(Variable& x) {
    wipeoutVar = &x;
    return false;
  }
  int level() const;
};

}  // namespace coral

#endif
