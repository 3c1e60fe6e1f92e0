#include "coral/constraint.hpp"

#include <cassert>

#include "coral/problem.hpp"

namespace coral {

const char* cmpOpName(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "lt";
    case CmpOp::Le: return "le";
    case CmpOp::Ge: return "ge";
    case CmpOp::Gt: return "gt";
    case CmpOp::Eq: return "eq";
    case CmpOp::Ne: return "ne";
  }
  return "?";
}

bool cmpHolds(CmpOp op, long long lhs, long long rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
  }
  return false;
}

CmpOp cmpMirror(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Le: return CmpOp::Ge;
    case CmpOp::Ge: return CmpOp::Le;
    case CmpOp::Gt: return CmpOp::Lt;
    default: return op;  // eq/ne are symmetric
  }
}

CmpOp cmpNegate(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Ge: return CmpOp::Lt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
  }
  return op;
}

// An empty scope is legal: folding a variable operand into a sum can cancel
// every term, leaving a constant-truth constraint.
Constraint::Constraint(Problem& pb, std::vector<Variable*> scope)
    : pb(pb), scope(std::move(scope)) {}

bool Constraint::checkIdxs(const std::vector<int>& idxs) const {
  std::vector<int> vals(idxs.size());
  for (size_t p = 0; p < idxs.size(); ++p) vals[p] = scope[p]->dom.toVal(idxs[p]);
  return checkValues(vals);
}

int Constraint::scopePosition(const Variable& x) const {
  for (size_t p = 0; p < scope.size(); ++p)
    if (scope[p] == &x) return static_cast<int>(p);
  return -1;
}

int Constraint::futvars() const {
  int n = 0;
  for (Variable* v : scope) n += !v->assigned();
  return n;
}

int Constraint::level() const { return pb.level; }

}  // namespace coral
