#include "coral/intension.hpp"

#include "coral/problem.hpp"
#include "coral/prune.hpp"

namespace coral {

IntensionConstraint::IntensionConstraint(Problem& pb, std::unique_ptr<ExprNode> tree,
                                         std::vector<Variable*> scope)
    : GenericACConstraint(pb, std::move(scope)),
      tree_(std::move(tree)),
      vals_(arity()) {}

bool IntensionConstraint::acceptsIdxs(const std::vector<int>& idxs) const {
  for (int p = 0; p < arity(); ++p) vals_[p] = scope[p]->dom.toVal(idxs[p]);
  return evalExpression(*tree_, vals_) != 0;
}

bool IntensionConstraint::checkValues(const std::vector<int>& vals) const {
  return evalExpression(*tree_, vals) != 0;
}

// --- x <op> k ----------------------------------------------------------------

UnaryCmpConstraint::UnaryCmpConstraint(Problem& pb, Variable* x, CmpOp op, long long k)
    : Constraint(pb, {x}), op_(op), k_(k) {
  tagAC = true;
  tagCallCompleteFiltering = true;
}

bool UnaryCmpConstraint::runPropagator(Variable&) {
  Domain& d = scope[0]->dom;
  for (int idx = d.first(); idx != -1; idx = d.next(idx))
    if (!cmpHolds(op_, d.toVal(idx), k_) && d.removeIdx(idx, level()))
      return fail(*scope[0]);
  return true;
}

bool UnaryCmpConstraint::checkValues(const std::vector<int>& vals) const {
  return cmpHolds(op_, vals[0], k_);
}

// --- x + k <op> y ------------------------------------------------------------

BinaryCmpConstraint::BinaryCmpConstraint(Problem& pb, Variable* x, long long k,
                                         CmpOp op, Variable* y)
    : Constraint(pb, {x, y}), k_(k), op_(op) {
  tagAC = true;
  tagCallCompleteFiltering = true;
}

bool BinaryCmpConstraint::runPropagator(Variable&) {
  Domain& dx = scope[0]->dom;
  Domain& dy = scope[1]->dom;
  switch (op_) {
    case CmpOp::Lt:   // x + k < y
      if (pruneAbove(dx, static_cast<long long>(dy.lastValue()) - k_ - 1, level()))
        return fail(*scope[0]);
      if (pruneBelow(dy, static_cast<long long>(dx.firstValue()) + k_ + 1, level()))
        return fail(*scope[1]);
      return true;
    case CmpOp::Le:
      if (pruneAbove(dx, static_cast<long long>(dy.lastValue()) - k_, level()))
        return fail(*scope[0]);
      if (pruneBelow(dy, static_cast<long long>(dx.firstValue()) + k_, level()))
        return fail(*scope[1]);
      return true;
    case CmpOp::Ge:   // x + k >= y
      if (pruneBelow(dx, static_cast<long long>(dy.firstValue()) - k_, level()))
        return fail(*scope[0]);
      if (pruneAbove(dy, static_cast<long long>(dx.lastValue()) + k_, level()))
        return fail(*scope[1]);
      return true;
    case CmpOp::Gt:
      if (pruneBelow(dx, static_cast<long long>(dy.firstValue()) - k_ + 1, level()))
        return fail(*scope[0]);
      if (pruneAbove(dy, static_cast<long long>(dx.lastValue()) + k_ - 1, level()))
        return fail(*scope[1]);
      return true;
    case CmpOp::Eq:
      for (int idx = dx.first(); idx != -1; idx = dx.next(idx))
        if (!containsLL(dy, static_cast<long long>(dx.toVal(idx)) + k_) &&
            dx.removeIdx(idx, level()))
          return fail(*scope[0]);
      for (int idx = dy.first(); idx != -1; idx = dy.next(idx))
        if (!containsLL(dx, static_cast<long long>(dy.toVal(idx)) - k_) &&
            dy.removeIdx(idx, level()))
          return fail(*scope[1]);
      return true;
    case CmpOp::Ne:
      if (dx.size() == 1) {
        long long forbidden = static_cast<long long>(dx.singleValue()) + k_;
        if (containsLL(dy, forbidden) &&
            dy.removeValue(static_cast<int>(forbidden), level()))
          return fail(*scope[1]);
      }
      if (dy.size() == 1) {
        long long forbidden = static_cast<long long>(dy.singleValue()) - k_;
        if (containsLL(dx, forbidden) &&
            dx.removeValue(static_cast<int>(forbidden), level()))
          return fail(*scope[0]);
      }
      return true;
  }
  return true;
}

bool BinaryCmpConstraint::checkValues(const std::vector<int>& vals) const {
  return cmpHolds(op_, static_cast<long long>(vals[0]) + k_, vals[1]);
}

// --- recognition -------------------------------------------------------------

namespace {

struct Affine {
  Variable* var = nullptr;
  long long c = 0;
  bool ok = false;
};

Affine affineOf(const ExprNode& e) {
  if (e.isConst()) return {nullptr, e.value, true};
  if (e.isVar()) return {e.var, 0, true};
  if (e.op == ExprOp::Add && e.kids.size() == 2) {
    const ExprNode& a = *e.kids[0];
    const ExprNode& b = *e.kids[1];
    if (a.isVar() && b.isConst()) return {a.var, b.value, true};
    if (a.isConst() && b.isVar()) return {b.var, a.value, true};
  }
  if (e.op == ExprOp::Sub && e.kids.size() == 2) {
    const ExprNode& a = *e.kids[0];
    const ExprNode& b = *e.kids[1];
    if (a.isVar() && b.isConst()) return {a.var, -b.value, true};
  }
  return {};
}

bool rootCmp(ExprOp op, CmpOp* out) {
  switch (op) {
    case ExprOp::Lt: *out = CmpOp::Lt; return true;
    case ExprOp::Le: *out = CmpOp::Le; return true;
    case ExprOp::Ge: *out = CmpOp::Ge; return true;
    case ExprOp::Gt: *out = CmpOp::Gt; return true;
    case ExprOp::Eq: *out = CmpOp::Eq; return true;
    case ExprOp::Ne: *out = CmpOp::Ne; return true;
    default: return false;
  }
}

}  // namespace

Constraint* postIntension(Problem& pb, std::unique_ptr<ExprNode> tree,
                          const std::string& name) {
  std::vector<Variable*> scope = indexExpressionScope(*tree);
  if (scope.empty()) {
    if (evalExpression(*tree, {}) == 0) pb.triviallyFalse = true;
    return nullptr;
  }
  CmpOp op;
  if (tree->kids.size() == 2 && rootCmp(tree->op, &op)) {
    Affine lhs = affineOf(*tree->kids[0]);
    Affine rhs = affineOf(*tree->kids[1]);
    if (lhs.ok && rhs.ok) {
      Constraint* c = nullptr;
      if (lhs.var && rhs.var && lhs.var != rhs.var) {
        c = &pb.post<BinaryCmpConstraint>(lhs.var, lhs.c - rhs.c, op, rhs.var);
      } else if (lhs.var && rhs.var) {  // same variable both sides: constant truth
        if (!cmpHolds(op, lhs.c, rhs.c)) pb.triviallyFalse = true;
        return nullptr;
      } else if (lhs.var) {
        c = &pb.post<UnaryCmpConstraint>(lhs.var, op, rhs.c - lhs.c);
      } else if (rhs.var) {
        c = &pb.post<UnaryCmpConstraint>(rhs.var, cmpMirror(op), lhs.c - rhs.c);
      }
      if (c) {
        if (!name.empty()) c->name = name;
        return c;
      }
    }
  }
  Constraint& c = pb.post<IntensionConstraint>(std::move(tree), std::move(scope));
  if (!name.empty()) c.name = name;
  return &c;
}

}  // namespace coral
