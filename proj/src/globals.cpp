#include "coral/globals.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "coral/problem.hpp"
#include "coral/prune.hpp"

namespace coral {

namespace {

// find-or-append used when an operand variable may coincide with a list one.
int scopePosOf(std::vector<Variable*>& scope, Variable* x) {
  for (size_t i = 0; i < scope.size(); ++i)
    if (scope[i] == x) return static_cast<int>(i);
  scope.push_back(x);
  return static_cast<int>(scope.size()) - 1;
}

std::vector<Variable*> withOperand(std::vector<Variable*> list, Variable* x) {
  if (x) scopePosOf(list, x);
  return list;
}

}  // namespace

// --- sum ---------------------------------------------------------------------

namespace {

struct SumParts {
  std::vector<Variable*> vars;
  std::vector<long long> coeffs;
};

SumParts canonicalSum(const std::vector<Variable*>& vars,
                      const std::vector<long long>& coeffs, const Condition& cond) {
  std::vector<Variable*> vs;
  std::vector<long long> cs;
  auto addTerm = [&](Variable* v, long long c) {
    for (size_t i = 0; i < vs.size(); ++i)
      if (vs[i] == v) {
        cs[i] += c;
        return;
      }
    vs.push_back(v);
    cs.push_back(c);
  };
  assert(vars.size() == coeffs.size());
  for (size_t i = 0; i < vars.size(); ++i) addTerm(vars[i], coeffs[i]);
  if (cond.var) addTerm(cond.var, -1);
  SumParts out;
  for (size_t i = 0; i < vs.size(); ++i)
    if (cs[i] != 0) {
      out.vars.push_back(vs[i]);
      out.coeffs.push_back(cs[i]);
    }
  return out;
}

}  // namespace

SumConstraint::SumConstraint(Problem& pb, std::vector<Variable*> vars,
                             std::vector<long long> coeffs, Condition cond)
    : Constraint(pb, canonicalSum(vars, coeffs, cond).vars),
      coeffs_(canonicalSum(vars, coeffs, cond).coeffs),
      op_(cond.op),
      k_(cond.var ? 0 : cond.k) {
  if (op_ == CmpOp::Lt) { op_ = CmpOp::Le; --k_; }
  if (op_ == CmpOp::Gt) { op_ = CmpOp::Ge; ++k_; }
  if (scope.empty() && !cmpHolds(op_, 0, k_)) pb.triviallyFalse = true;
  if (op_ == CmpOp::Le || op_ == CmpOp::Ge) tagAC = true;
  tagCallCompleteFiltering = true;
}

bool SumConstraint::boundsPass(bool forLe, bool* changed) {
  // forLe: sum <= k, every other term at its minimum contribution;
  // otherwise sum >= k with the others at their maximum.
  long long base = 0;
  for (int i = 0; i < arity(); ++i) {
    const Domain& d = scope[i]->dom;
    long long lo = d.firstValue(), hi = d.lastValue(), c = coeffs_[i];
    base += forLe ? (c > 0 ? c * lo : c * hi) : (c > 0 ? c * hi : c * lo);
  }
  for (int i = 0; i < arity(); ++i) {
    Domain& d = scope[i]->dom;
    long long lo = d.firstValue(), hi = d.lastValue(), c = coeffs_[i];
    long long own = forLe ? (c > 0 ? c * lo : c * hi) : (c > 0 ? c * hi : c * lo);
    long long allowance = k_ - (base - own);  // c*v must stay on k's side of this
    int before = d.size();
    bool wiped;
    if (forLe)
      wiped = c > 0 ? pruneAbove(d, floorDiv(allowance, c), level())
                    : pruneBelow(d, ceilDiv(allowance, c), level());
    else
      wiped = c > 0 ? pruneBelow(d, ceilDiv(allowance, c), level())
                    : pruneAbove(d, floorDiv(allowance, c), level());
    if (wiped) return fail(*scope[i]);
    if (d.size() != before) *changed = true;
  }
  return true;
}

bool SumConstraint::exactEqPass() {
  int n = arity();
  long long smin = 0, smax = 0, work = 0;
  std::vector<long long> minC(n), maxC(n);
  for (int i = 0; i < n; ++i) {
    const Domain& d = scope[i]->dom;
    long long lo = d.firstValue(), hi = d.lastValue(), c = coeffs_[i];
    minC[i] = c > 0 ? c * lo : c * hi;
    maxC[i] = c > 0 ? c * hi : c * lo;
    smin += minC[i];
    smax += maxC[i];
    work += d.size();
  }
  long long span = smax - smin;
  if (span > kExactSpanCap || work * (span + 1) > 4000000) return true;  // too wide
  int w = static_cast<int>(span) + 1;
  // forward[i]: sums reachable by terms [0,i), relative to their joint minimum.
  std::vector<std::vector<char>> fwd(n + 1), bwd(n + 1);
  fwd[0] = {1};
  for (int i = 0; i < n; ++i) {
    long long width = 1;
    for (int j = 0; j <= i; ++j) width += maxC[j] - minC[j];
    fwd[i + 1].assign(static_cast<size_t>(std::min<long long>(width, w)), 0);
    const Domain& d = scope[i]->dom;
    for (size_t s = 0; s < fwd[i].size(); ++s) {
      if (!fwd[i][s]) continue;
      for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
        long long rel = static_cast<long long>(s) + coeffs_[i] * d.toVal(idx) - minC[i];
        if (rel >= 0 && rel < static_cast<long long>(fwd[i + 1].size()))
          fwd[i + 1][rel] = 1;
      }
    }
  }
  bwd[n] = {1};
  for (int i = n - 1; i >= 0; --i) {
    long long width = 1;
    for (int j = i; j < n; ++j) width += maxC[j] - minC[j];
    bwd[i].assign(static_cast<size_t>(std::min<long long>(width, w)), 0);
    const Domain& d = scope[i]->dom;
    for (size_t s = 0; s < bwd[i + 1].size(); ++s) {
      if (!bwd[i + 1][s]) continue;
      for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
        long long rel = static_cast<long long>(s) + coeffs_[i] * d.toVal(idx) - minC[i];
        if (rel >= 0 && rel < static_cast<long long>(bwd[i].size()))
          bwd[i][rel] = 1;
      }
    }
  }
  // Value v of term i is reachable iff fwd + c*v + bwd hits k exactly.
  for (int i = 0; i < n; ++i) {
    Domain& d = scope[i]->dom;
    long long pmin = 0, bmin = 0;
    for (int j = 0; j < i; ++j) pmin += minC[j];
    for (int j = i + 1; j < n; ++j) bmin += minC[j];
    for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
      long long cv = coeffs_[i] * d.toVal(idx);
      bool ok = false;
      for (size_t f = 0; f < fwd[i].size() && !ok; ++f) {
        if (!fwd[i][f]) continue;
        long long b = k_ - (pmin + static_cast<long long>(f)) - cv - bmin;
        if (b >= 0 && b < static_cast<long long>(bwd[i + 1].size()) && bwd[i + 1][b])
          ok = true;
      }
      if (!ok && d.removeIdx(idx, level())) return fail(*scope[i]);
    }
  }
  return true;
}

bool SumConstraint::runPropagator(Variable& evt) {
  if (scope.empty()) return cmpHolds(op_, 0, k_) ? true : fail(evt);
  if (op_ == CmpOp::Le || op_ == CmpOp::Ge || op_ == CmpOp::Eq) {
    bool changed;
    do {
      changed = false;
      if ((op_ == CmpOp::Le || op_ == CmpOp::Eq) && !boundsPass(true, &changed))
        return false;
      if ((op_ == CmpOp::Ge || op_ == CmpOp::Eq) && !boundsPass(false, &changed))
        return false;
    } while (changed);
    if (op_ == CmpOp::Eq && !exactEqPass()) return false;
    return true;
  }
  // ne: only decidable when at most one term is open.
  int open = -1, openCount = 0;
  long long fixed = 0;
  for (int i = 0; i < arity(); ++i) {
    if (scope[i]->dom.size() == 1)
      fixed += coeffs_[i] * scope[i]->dom.singleValue();
    else {
      open = i;
      ++openCount;
    }
  }
  if (openCount == 0) {
    if (fixed == k_) {
      Domain& d = scope[0]->dom;
      d.removeIdx(d.first(), level());
      return fail(*scope[0]);
    }
    return true;
  }
  if (openCount == 1) {
    long long rest = k_ - fixed, c = coeffs_[open];
    if (rest % c == 0) {
      Domain& d = scope[open]->dom;
      if (containsLL(d, rest / c) &&
          d.removeValue(static_cast<int>(rest / c), level()))
        return fail(*scope[open]);
    }
  }
  return true;
}

bool SumConstraint::checkValues(const std::vector<int>& vals) const {
  long long s = 0;
  for (int i = 0; i < arity(); ++i) s += coeffs_[i] * vals[i];
  return cmpHolds(op_, s, k_);
}

// --- allDifferent ------------------------------------------------------------

AllDifferentConstraint::AllDifferentConstraint(Problem& pb, std::vector<Variable*> vars)
    : Constraint(pb, std::move(vars)) {
  tagSymmetric = true;
  tagCallCompleteFiltering = true;
}

bool AllDifferentConstraint::runPropagator(Variable&) {
  bool changed;
  do {
    changed = false;
    for (int i = 0; i < arity(); ++i) {
      if (scope[i]->dom.size() != 1) continue;
      int v = scope[i]->dom.singleValue();
      for (int j = 0; j < arity(); ++j) {
        if (j == i || !scope[j]->dom.containsValue(v)) continue;
        changed = true;
        if (scope[j]->dom.removeValue(v, level())) return fail(*scope[j]);
      }
    }
  } while (changed);
  return true;
}

bool AllDifferentConstraint::checkValues(const std::vector<int>& vals) const {
  std::vector<int> s(vals);
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

// --- allEqual ----------------------------------------------------------------

AllEqualConstraint::AllEqualConstraint(Problem& pb, std::vector<Variable*> vars)
    : Constraint(pb, std::move(vars)) {
  tagAC = true;
  tagSymmetric = true;
  tagCallCompleteFiltering = true;
}

bool AllEqualConstraint::runPropagator(Variable&) {
  for (int i = 0; i < arity(); ++i) {
    Domain& d = scope[i]->dom;
    for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
      int v = d.toVal(idx);
      bool everywhere = true;
      for (int j = 0; j < arity() && everywhere; ++j)
        everywhere = scope[j]->dom.containsValue(v);
      if (!everywhere && d.removeIdx(idx, level())) return fail(*scope[i]);
    }
  }
  return true;
}

bool AllEqualConstraint::checkValues(const std::vector<int>& vals) const {
  for (size_t i = 1; i < vals.size(); ++i)
    if (vals[i] != vals[0]) return false;
  return true;
}

// --- element -----------------------------------------------------------------

ElementConstraint::ElementConstraint(Problem& pb, std::vector<Variable*> list,
                                     Variable* index, Variable* valueVar,
                                     long long valueConst, int startIndex)
    : Constraint(pb, withOperand(withOperand(list, index), valueVar)),
      n_(static_cast<int>(list.size())),
      valueConst_(valueConst),
      startIndex_(startIndex) {
  indexPos_ = scopePosition(*index);
  valuePos_ = valueVar ? scopePosition(*valueVar) : -1;
  tagAC = true;
  tagCallCompleteFiltering = true;
}

bool ElementConstraint::valueHas(int v) const {
  return valuePos_ >= 0 ? scope[valuePos_]->dom.containsValue(v)
                        : static_cast<long long>(v) == valueConst_;
}

bool ElementConstraint::runPropagator(Variable&) {
  Domain& di = scope[indexPos_]->dom;
  bool changed;
  do {
    changed = false;
    // index must name a cell whose domain meets the value operand
    for (int idx = di.first(); idx != -1; idx = di.next(idx)) {
      int i = di.toVal(idx) - startIndex_;
      bool ok = i >= 0 && i < n_;
      if (ok) {
        ok = false;
        const Domain& dc = scope[i]->dom;
        for (int c = dc.first(); c != -1 && !ok; c = dc.next(c))
          ok = valueHas(dc.toVal(c));
      }
      if (!ok) {
        changed = true;
        if (di.removeIdx(idx, level())) return fail(*scope[indexPos_]);
      }
    }
    // fixed index: cell and value operand agree value by value
    if (di.size() == 1) {
      int i = di.singleValue() - startIndex_;
      Domain& dc = scope[i]->dom;
      for (int c = dc.first(); c != -1; c = dc.next(c))
        if (!valueHas(dc.toVal(c))) {
          changed = true;
          if (dc.removeIdx(c, level())) return fail(*scope[i]);
        }
      if (valuePos_ >= 0) {
        Domain& dv = scope[valuePos_]->dom;
        for (int c = dv.first(); c != -1; c = dv.next(c))
          if (!dc.containsValue(dv.toVal(c))) {
            changed = true;
            if (dv.removeIdx(c, level())) return fail(*scope[valuePos_]);
          }
      }
    }
    // a value needs some reachable cell able to take it
    if (valuePos_ >= 0) {
      Domain& dv = scope[valuePos_]->dom;
      for (int c = dv.first(); c != -1; c = dv.next(c)) {
        int v = dv.toVal(c);
        bool sup = false;
        for (int idx = di.first(); idx != -1 && !sup; idx = di.next(idx)) {
          int i = di.toVal(idx) - startIndex_;
          sup = i >= 0 && i < n_ && scope[i]->dom.containsValue(v);
        }
        if (!sup) {
          changed = true;
          if (dv.removeIdx(c, level())) return fail(*scope[valuePos_]);
        }
      }
    }
  } while (changed);
  return true;
}

bool ElementConstraint::checkValues(const std::vector<int>& vals) const {
  int i = vals[indexPos_] - startIndex_;
  if (i < 0 || i >= n_) return false;
  long long v = valuePos_ >= 0 ? vals[valuePos_] : valueConst_;
  return vals[i] == v;
}

// --- count -------------------------------------------------------------------

CountConstraint::CountConstraint(Problem& pb, std::vector<Variable*> vars,
                                 std::vector<int> values, CmpOp op, long long k)
    : Constraint(pb, std::move(vars)), values_(std::move(values)), op_(op), k_(k),
      nList_(arity()) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  if (op_ == CmpOp::Lt) { op_ = CmpOp::Le; --k_; }
  if (op_ == CmpOp::Gt) { op_ = CmpOp::Ge; ++k_; }
  tagCallCompleteFiltering = true;
}

bool CountConstraint::inValues(int v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

bool CountConstraint::domainSubset(const Domain& d) const {
  for (int idx = d.first(); idx != -1; idx = d.next(idx))
    if (!inValues(d.toVal(idx))) return false;
  return true;
}

bool CountConstraint::domainMeets(const Domain& d) const {
  for (int idx = d.first(); idx != -1; idx = d.next(idx))
    if (inValues(d.toVal(idx))) return true;
  return false;
}

bool CountConstraint::forceVar(int i) {
  Domain& d = scope[i]->dom;
  for (int idx = d.first(); idx != -1; idx = d.next(idx))
    if (!inValues(d.toVal(idx)) && d.removeIdx(idx, level())) return true;
  return false;
}

bool CountConstraint::forbidVar(int i) {
  Domain& d = scope[i]->dom;
  for (int idx = d.first(); idx != -1; idx = d.next(idx))
    if (inValues(d.toVal(idx)) && d.removeIdx(idx, level())) return true;
  return false;
}

bool CountConstraint::runPropagator(Variable& evt) {
  bool changed;
  do {
    changed = false;
    int lb = 0, ub = 0;
    for (int i = 0; i < nList_; ++i) {
      const Domain& d = scope[i]->dom;
      bool meets = domainMeets(d);
      if (meets && domainSubset(d)) ++lb;
      if (meets) ++ub;
    }
    auto forceOpen = [&]() -> bool {  // every var still able must take a listed value
      for (int i = 0; i < nList_; ++i) {
        const Domain& d = scope[i]->dom;
        if (domainMeets(d) && !domainSubset(d)) {
          changed = true;
          if (forceVar(i)) return false;
        }
      }
      return true;
    };
    auto forbidOpen = [&]() -> bool {
      for (int i = 0; i < nList_; ++i) {
        const Domain& d = scope[i]->dom;
        if (domainMeets(d) && !domainSubset(d)) {
          changed = true;
          if (forbidVar(i)) return false;
        }
      }
      return true;
    };
    switch (op_) {
      case CmpOp::Le:
        if (lb > k_) return fail(evt);
        if (lb == k_ && ub > lb && !forbidOpen()) return false;
        break;
      case CmpOp::Ge:
        if (ub < k_) return fail(evt);
        if (ub == k_ && lb < ub && !forceOpen()) return false;
        break;
      case CmpOp::Eq:
        if (lb > k_ || ub < k_) return fail(evt);
        if (lb == k_ && ub > lb && !forbidOpen()) return false;
        if (ub == k_ && lb < ub && !forceOpen()) return false;
        break;
      case CmpOp::Ne: {
        if (lb == ub && lb == k_) return fail(evt);
        if (ub - lb == 1) {
          int openVar = -1;
          for (int i = 0; i < nList_; ++i) {
            const Domain& d = scope[i]->dom;
            if (domainMeets(d) && !domainSubset(d)) { openVar = i; break; }
          }
          if (openVar >= 0) {
            if (lb == k_) {  // avoiding would land on k
              changed = true;
              if (forceVar(openVar)) return fail(*scope[openVar]);
            } else if (lb + 1 == k_) {
              changed = true;
              if (forbidVar(openVar)) return fail(*scope[openVar]);
            }
          }
        }
        break;
      }
      default: break;
    }
    if (!changed) break;
  } while (true);
  return true;
}

bool CountConstraint::checkValues(const std::vector<int>& vals) const {
  long long count = 0;
  for (int i = 0; i < nList_; ++i) count += inValues(vals[i]) ? 1 : 0;
  return cmpHolds(op_, count, k_);
}

// --- minimum / maximum -------------------------------------------------------

MinimumConstraint::MinimumConstraint(Problem& pb, std::vector<Variable*> list,
                                     Condition cond)
    : Constraint(pb, withOperand(list, cond.var)),
      n_(static_cast<int>(list.size())),
      op_(cond.op),
      k_(cond.var ? 0 : cond.k) {
  condPos_ = cond.var ? scopePosition(*cond.var) : -1;
  if (condPos_ < 0) {
    if (op_ == CmpOp::Lt) { op_ = CmpOp::Le; --k_; }
    if (op_ == CmpOp::Gt) { op_ = CmpOp::Ge; ++k_; }
  }
  tagCallCompleteFiltering = true;
}

bool MinimumConstraint::runPropagator(Variable& evt) {
  bool changed;
  do {
    changed = false;
    long long mLo = scope[0]->dom.firstValue(), mHi = scope[0]->dom.lastValue();
    for (int i = 1; i < n_; ++i) {
      mLo = std::min<long long>(mLo, scope[i]->dom.firstValue());
      mHi = std::min<long long>(mHi, scope[i]->dom.lastValue());
    }
    if (condPos_ >= 0) {
      Domain& dy = scope[condPos_]->dom;
      switch (op_) {
        case CmpOp::Eq: {
          int by = dy.size(), bl = 0;
          if (pruneBelow(dy, mLo, level()) || pruneAbove(dy, mHi, level()))
            return fail(*scope[condPos_]);
          for (int c = dy.first(); c != -1; c = dy.next(c)) {
            int v = dy.toVal(c);
            bool sup = false;
            for (int i = 0; i < n_ && !sup; ++i) sup = scope[i]->dom.containsValue(v);
            if (!sup && dy.removeIdx(c, level())) return fail(*scope[condPos_]);
          }
          if (dy.size() != by) changed = true;
          for (int i = 0; i < n_; ++i) {
            bl = scope[i]->dom.size();
            if (pruneBelow(scope[i]->dom, dy.firstValue(), level()))
              return fail(*scope[i]);
            if (scope[i]->dom.size() != bl) changed = true;
          }
          break;
        }
        case CmpOp::Le:
        case CmpOp::Lt: {
          long long bound = static_cast<long long>(dy.lastValue()) -
                            (op_ == CmpOp::Lt ? 1 : 0);
          int cand = -1, candCount = 0;
          for (int i = 0; i < n_; ++i)
            if (scope[i]->dom.firstValue() <= bound) { cand = i; ++candCount; }
          if (candCount == 0) return fail(evt);
          if (candCount == 1) {
            int b = scope[cand]->dom.size();
            if (pruneAbove(scope[cand]->dom, bound, level())) return fail(*scope[cand]);
            if (scope[cand]->dom.size() != b) changed = true;
          }
          int b = dy.size();
          if (pruneBelow(dy, mLo + (op_ == CmpOp::Lt ? 1 : 0), level()))
            return fail(*scope[condPos_]);
          if (dy.size() != b) changed = true;
          break;
        }
        case CmpOp::Ge:
        case CmpOp::Gt: {
          long long bound = static_cast<long long>(dy.firstValue()) +
                            (op_ == CmpOp::Gt ? 1 : 0);
          for (int i = 0; i < n_; ++i) {
            int b = scope[i]->dom.size();
            if (pruneBelow(scope[i]->dom, bound, level())) return fail(*scope[i]);
            if (scope[i]->dom.size() != b) changed = true;
          }
          int b = dy.size();
          if (pruneAbove(dy, mHi - (op_ == CmpOp::Gt ? 1 : 0), level()))
            return fail(*scope[condPos_]);
          if (dy.size() != b) changed = true;
          break;
        }
        case CmpOp::Ne:
          if (mLo == mHi && dy.containsValue(static_cast<int>(mLo))) {
            changed = true;
            if (dy.removeValue(static_cast<int>(mLo), level()))
              return fail(*scope[condPos_]);
          }
          break;
        default: break;
      }
    } else {
      switch (op_) {
        case CmpOp::Le: {
          int cand = -1, candCount = 0;
          for (int i = 0; i < n_; ++i)
            if (scope[i]->dom.firstValue() <= k_) { cand = i; ++candCount; }
          if (candCount == 0) return fail(evt);
          if (candCount == 1) {
            int b = scope[cand]->dom.size();
            if (pruneAbove(scope[cand]->dom, k_, level())) return fail(*scope[cand]);
            if (scope[cand]->dom.size() != b) changed = true;
          }
          break;
        }
        case CmpOp::Ge:
          for (int i = 0; i < n_; ++i) {
            int b = scope[i]->dom.size();
            if (pruneBelow(scope[i]->dom, k_, level())) return fail(*scope[i]);
            if (scope[i]->dom.size() != b) changed = true;
          }
          break;
        case CmpOp::Eq: {
          for (int i = 0; i < n_; ++i) {
            int b = scope[i]->dom.size();
            if (pruneBelow(scope[i]->dom, k_, level())) return fail(*scope[i]);
            if (scope[i]->dom.size() != b) changed = true;
          }
          int cand = -1, candCount = 0;
          for (int i = 0; i < n_; ++i)
            if (containsLL(scope[i]->dom, k_)) { cand = i; ++candCount; }
          if (candCount == 0) return fail(evt);
          if (candCount == 1 && scope[cand]->dom.size() > 1) {
            changed = true;
            Domain& d = scope[cand]->dom;
            if (d.reduceToIdx(d.toIdx(static_cast<int>(k_)), level()))
              return fail(*scope[cand]);
          }
          break;
        }
        case CmpOp::Ne:
          if (mLo == mHi && mLo == k_) return fail(evt);
          break;
        default: break;
      }
    }
  } while (changed);
  return true;
}

bool MinimumConstraint::checkValues(const std::vector<int>& vals) const {
  long long m = vals[0];
  for (int i = 1; i < n_; ++i) m = std::min<long long>(m, vals[i]);
  return cmpHolds(op_, m, condPos_ >= 0 ? vals[condPos_] : k_);
}

MaximumConstraint::MaximumConstraint(Problem& pb, std::vector<Variable*> list,
                                     Condition cond)
    : Constraint(pb, withOperand(list, cond.var)),
      n_(static_cast<int>(list.size())),
      op_(cond.op),
      k_(cond.var ? 0 : cond.k) {
  condPos_ = cond.var ? scopePosition(*cond.var) : -1;
  if (condPos_ < 0) {
    if (op_ == CmpOp::Lt) { op_ = CmpOp::Le; --k_; }
    if (op_ == CmpOp::Gt) { op_ = CmpOp::Ge; ++k_; }
  }
  tagCallCompleteFiltering = true;
}

bool MaximumConstraint::runPropagator(Variable& evt) {
  bool changed;
  do {
    changed = false;
    long long mLo = scope[0]->dom.firstValue(), mHi = scope[0]->dom.lastValue();
    for (int i = 1; i < n_; ++i) {
      mLo = std::max<long long>(mLo, scope[i]->dom.firstValue());
      mHi = std::max<long long>(mHi, scope[i]->dom.lastValue());
    }
    if (condPos_ >= 0) {
      Domain& dy = scope[condPos_]->dom;
      switch (op_) {
        case CmpOp::Eq: {
          int by = dy.size();
          if (pruneBelow(dy, mLo, level()) || pruneAbove(dy, mHi, level()))
            return fail(*scope[condPos_]);
          for (int c = dy.first(); c != -1; c = dy.next(c)) {
            int v = dy.toVal(c);
            bool sup = false;
            for (int i = 0; i < n_ && !sup; ++i) sup = scope[i]->dom.containsValue(v);
            if (!sup && dy.removeIdx(c, level())) return fail(*scope[condPos_]);
          }
          if (dy.size() != by) changed = true;
          for (int i = 0; i < n_; ++i) {
            int bl = scope[i]->dom.size();
            if (pruneAbove(scope[i]->dom, dy.lastValue(), level()))
              return fail(*scope[i]);
            if (scope[i]->dom.size() != bl) changed = true;
          }
          break;
        }
        case CmpOp::Ge:
        case CmpOp::Gt: {
          long long bound = static_cast<long long>(dy.firstValue()) +
                            (op_ == CmpOp::Gt ? 1 : 0);
          int cand = -1, candCount = 0;
          for (int i = 0; i < n_; ++i)
            if (scope[i]->dom.lastValue() >= bound) { cand = i; ++candCount; }
          if (candCount == 0) return fail(evt);
          if (candCount == 1) {
            int b = scope[cand]->dom.size();
            if (pruneBelow(scope[cand]->dom, bound, level())) return fail(*scope[cand]);
            if (scope[cand]->dom.size() != b) changed = true;
          }
          int b = dy.size();
          if (pruneAbove(dy, mHi - (op_ == CmpOp::Gt ? 1 : 0), level()))
            return fail(*scope[condPos_]);
          if (dy.size() != b) changed = true;
          break;
        }
        case CmpOp::Le:
        case CmpOp::Lt: {
          long long bound = static_cast<long long>(dy.lastValue()) -
                            (op_ == CmpOp::Lt ? 1 : 0);
          for (int i = 0; i < n_; ++i) {
            int b = scope[i]->dom.size();
            if (pruneAbove(scope[i]->dom, bound, level())) return fail(*scope[i]);
            if (scope[i]->dom.size() != b) changed = true;
          }
          int b = dy.size();
          if (pruneBelow(dy, mLo + (op_ == CmpOp::Lt ? 1 : 0), level()))
            return fail(*scope[condPos_]);
          if (dy.size() != b) changed = true;
          break;
        }
        case CmpOp::Ne:
          if (mLo == mHi && dy.containsValue(static_cast<int>(mLo))) {
            changed = true;
            if (dy.removeValue(static_cast<int>(mLo), level()))
              return fail(*scope[condPos_]);
          }
          break;
        default: break;
      }
    } else {
      switch (op_) {
        case CmpOp::Ge: {
          int cand = -1, candCount = 0;
          for (int i = 0; i < n_; ++i)
            if (scope[i]->dom.lastValue() >= k_) { cand = i; ++candCount; }
          if (candCount == 0) return fail(evt);
          if (candCount == 1) {
            int b = scope[cand]->dom.size();
            if (pruneBelow(scope[cand]->dom, k_, level())) return fail(*scope[cand]);
            if (scope[cand]->dom.size() != b) changed = true;
          }
          break;
        }
        case CmpOp::Le:
          for (int i = 0; i < n_; ++i) {
            int b = scope[i]->dom.size();
            if (pruneAbove(scope[i]->dom, k_, level())) return fail(*scope[i]);
            if (scope[i]->dom.size() != b) changed = true;
          }
          break;
        case CmpOp::Eq: {
          for (int i = 0; i < n_; ++i) {
            int b = scope[i]->dom.size();
            if (pruneAbove(scope[i]->dom, k_, level())) return fail(*scope[i]);
            if (scope[i]->dom.size() != b) changed = true;
          }
          int cand = -1, candCount = 0;
          for (int i = 0; i < n_; ++i)
            if (containsLL(scope[i]->dom, k_)) { cand = i; ++candCount; }
          if (candCount == 0) return fail(evt);
          if (candCount == 1 && scope[cand]->dom.size() > 1) {
            changed = true;
            Domain& d = scope[cand]->dom;
            if (d.reduceToIdx(d.toIdx(static_cast<int>(k_)), level()))
              return fail(*scope[cand]);
          }
          break;
        }
        case CmpOp::Ne:
          if (mLo == mHi && mLo == k_) return fail(evt);
          break;
        default: break;
      }
    }
  } while (changed);
  return true;
}

bool MaximumConstraint::checkValues(const std::vector<int>& vals) const {
  long long m = vals[0];
  for (int i = 1; i < n_; ++i) m = std::max<long long>(m, vals[i]);
  return cmpHolds(op_, m, condPos_ >= 0 ? vals[condPos_] : k_);
}

// --- ordered -----------------------------------------------------------------

OrderedConstraint::OrderedConstraint(Problem& pb, std::vector<Variable*> list, CmpOp op)
    : Constraint(pb, std::move(list)), op_(op),
      strict_(op == CmpOp::Lt || op == CmpOp::Gt),
      reversed_(op == CmpOp::Gt || op == CmpOp::Ge) {
  assert(op != CmpOp::Eq && op != CmpOp::Ne);
  tagAC = true;
  tagCallCompleteFiltering = true;
}

bool OrderedConstraint::runPropagator(Variable&) {
  int n = arity();
  auto at = [&](int i) -> Variable* { return scope[reversed_ ? n - 1 - i : i]; };
  int step = strict_ ? 1 : 0;
  for (int i = 1; i < n; ++i)
    if (pruneBelow(at(i)->dom,
                   static_cast<long long>(at(i - 1)->dom.firstValue()) + step, level()))
      return fail(*at(i));
  for (int i = n - 2; i >= 0; --i)
    if (pruneAbove(at(i)->dom,
                   static_cast<long long>(at(i + 1)->dom.lastValue()) - step, level()))
      return fail(*at(i));
  return true;
}

bool OrderedConstraint::checkValues(const std::vector<int>& vals) const {
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    if (!cmpHolds(op_, vals[i], vals[i + 1])) return false;
  return true;
}

// --- lex ---------------------------------------------------------------------

namespace {

std::vector<Variable*> lexScope(std::vector<Variable*> xs, std::vector<Variable*> ys,
                                bool swap) {
  if (swap) std::swap(xs, ys);
  xs.insert(xs.end(), ys.begin(), ys.end());
  return xs;
}

}  // namespace

LexConstraint::LexConstraint(Problem& pb, std::vector<Variable*> xs,
                             std::vector<Variable*> ys, CmpOp op)
    : Constraint(pb, lexScope(xs, ys, op == CmpOp::Ge || op == CmpOp::Gt)),
      n_(static_cast<int>(xs.size())),
      strict_(op == CmpOp::Lt || op == CmpOp::Gt),
      swapped_(op == CmpOp::Ge || op == CmpOp::Gt) {
  assert(xs.size() == ys.size());
}

bool LexConstraint::runPropagator(Variable& evt) {
  for (int i = 0;; ++i) {
    if (i == n_) return strict_ ? fail(evt) : true;  // every pair forced equal
    Domain& dx = scope[i]->dom;
    Domain& dy = scope[n_ + i]->dom;
    if (pruneAbove(dx, dy.lastValue(), level())) return fail(*scope[i]);
    if (pruneBelow(dy, dx.firstValue(), level())) return fail(*scope[n_ + i]);
    if (dx.firstValue() < dy.lastValue()) return true;  // strict choice open here
    // otherwise both collapsed onto one shared value: continue with the suffix
  }
}

bool LexConstraint::checkValues(const std::vector<int>& vals) const {
  for (int i = 0; i < n_; ++i) {
    if (vals[i] < vals[n_ + i]) return true;
    if (vals[i] > vals[n_ + i]) return false;
  }
  return !strict_;
}

// --- precedence --------------------------------------------------------------

PrecedenceConstraint::PrecedenceConstraint(Problem& pb, std::vector<Variable*> list,
                                           std::vector<int> values)
    : Constraint(pb, std::move(list)), values_(std::move(values)) {
  assert(values_.size() >= 2);
  tagCallCompleteFiltering = true;
}

bool PrecedenceConstraint::runPropagator(Variable&) {
  int n = arity();
  bool changed;
  do {
    changed = false;
    for (size_t p = 1; p < values_.size(); ++p) {
      int s = values_[p - 1], t = values_[p];
      int firstS = n;  // first position that may still take s
      for (int i = 0; i < n; ++i)
        if (scope[i]->dom.containsValue(s)) { firstS = i; break; }
      for (int i = 0; i <= std::min(firstS, n - 1); ++i) {
        if (!scope[i]->dom.containsValue(t)) continue;
        changed = true;
        if (scope[i]->dom.removeValue(t, level())) return fail(*scope[i]);
      }
    }
  } while (changed);
  return true;
}

bool PrecedenceConstraint::checkValues(const std::vector<int>& vals) const {
  int n = arity();
  for (size_t p = 1; p < values_.size(); ++p) {
    int s = values_[p - 1], t = values_[p];
    int occS = n, occT = n;
    for (int i = 0; i < n; ++i) {
      if (occS == n && vals[i] == s) occS = i;
      if (occT == n && vals[i] == t) occT = i;
    }
    if (occT < n && occS >= occT) return false;
  }
  return true;
}

// --- nValues -----------------------------------------------------------------

NValuesConstraint::NValuesConstraint(Problem& pb, std::vector<Variable*> list,
                                     Condition cond)
    : Constraint(pb, withOperand(list, cond.var)),
      n_(static_cast<int>(list.size())),
      op_(cond.op),
      k_(cond.var ? 0 : cond.k) {
  condPos_ = cond.var ? scopePosition(*cond.var) : -1;
  if (condPos_ < 0) {
    if (op_ == CmpOp::Lt) { op_ = CmpOp::Le; --k_; }
    if (op_ == CmpOp::Gt) { op_ = CmpOp::Ge; ++k_; }
  }
  tagCallCompleteFiltering = true;
}

int NValuesConstraint::distinctLowerBound() const {
  // Interval relaxation: stab the [min,max] ranges greedily.
  std::vector<std::pair<int, int>> iv(n_);
  for (int i = 0; i < n_; ++i)
    iv[i] = {scope[i]->dom.lastValue(), scope[i]->dom.firstValue()};
  std::sort(iv.begin(), iv.end());
  int count = 0;
  long long stab = 0;
  bool any = false;
  for (auto& [hi, lo] : iv)
    if (!any || lo > stab) {
      any = true;
      ++count;
      stab = hi;
    }
  return count;
}

int NValuesConstraint::distinctUpperBound() const {
  std::set<int> u;
  for (int i = 0; i < n_; ++i)
    for (int idx = scope[i]->dom.first(); idx != -1; idx = scope[i]->dom.next(idx))
      u.insert(scope[i]->dom.toVal(idx));
  return static_cast<int>(std::min<size_t>(u.size(), n_));
}

bool NValuesConstraint::forceAllEqual() {  // true on wipeout
  for (int i = 0; i < n_; ++i) {
    Domain& d = scope[i]->dom;
    for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
      int v = d.toVal(idx);
      bool everywhere = true;
      for (int j = 0; j < n_ && everywhere; ++j)
        everywhere = scope[j]->dom.containsValue(v);
      if (!everywhere && d.removeIdx(idx, level())) return true;
    }
  }
  return false;
}

bool NValuesConstraint::runPropagator(Variable& evt) {
  bool changed;
  do {
    changed = false;
    int lb = distinctLowerBound();
    int ub = distinctUpperBound();
    long long leBound, geBound;  // nv <= leBound and nv >= geBound required
    if (condPos_ >= 0) {
      const Domain& dy = scope[condPos_]->dom;
      switch (op_) {
        case CmpOp::Le: leBound = dy.lastValue(); geBound = LLONG_MIN; break;
        case CmpOp::Lt: leBound = dy.lastValue() - 1LL; geBound = LLONG_MIN; break;
        case CmpOp::Ge: leBound = LLONG_MAX; geBound = dy.firstValue(); break;
        case CmpOp::Gt: leBound = LLONG_MAX; geBound = dy.firstValue() + 1LL; break;
        case CmpOp::Eq: leBound = dy.lastValue(); geBound = dy.firstValue(); break;
        default: leBound = LLONG_MAX; geBound = LLONG_MIN; break;  // ne
      }
    } else {
      switch (op_) {
        case CmpOp::Le: leBound = k_; geBound = LLONG_MIN; break;
        case CmpOp::Ge: leBound = LLONG_MAX; geBound = k_; break;
        case CmpOp::Eq: leBound = k_; geBound = k_; break;
        default: leBound = LLONG_MAX; geBound = LLONG_MIN; break;  // ne
      }
    }
    if (op_ != CmpOp::Ne) {
      if (lb > leBound || ub < geBound) return fail(evt);
      if (leBound == 1) {
        int before = 0;
        for (int i = 0; i < n_; ++i) before += scope[i]->dom.size();
        if (forceAllEqual()) return fail(evt);
        int after = 0;
        for (int i = 0; i < n_; ++i) after += scope[i]->dom.size();
        if (after != before) changed = true;
      }
    }
    if (condPos_ >= 0) {
      Domain& dy = scope[condPos_]->dom;
      int b = dy.size();
      switch (op_) {
        case CmpOp::Le:  // nv <= y  =>  y >= lb
          if (pruneBelow(dy, lb, level())) return fail(*scope[condPos_]);
          break;
        case CmpOp::Lt:
          if (pruneBelow(dy, lb + 1LL, level())) return fail(*scope[condPos_]);
          break;
        case CmpOp::Ge:
          if (pruneAbove(dy, ub, level())) return fail(*scope[condPos_]);
          break;
        case CmpOp::Gt:
          if (pruneAbove(dy, ub - 1LL, level())) return fail(*scope[condPos_]);
          break;
        case CmpOp::Eq:
          if (pruneBelow(dy, lb, level()) || pruneAbove(dy, ub, level()))
            return fail(*scope[condPos_]);
          break;
        case CmpOp::Ne:
          if (lb == ub && dy.containsValue(lb)) {
            if (dy.removeValue(lb, level())) return fail(*scope[condPos_]);
          }
          break;
        default: break;
      }
      if (dy.size() != b) changed = true;
    } else if (op_ == CmpOp::Ne) {
      if (lb == ub && lb == k_) return fail(evt);
    }
  } while (changed);
  return true;
}

bool NValuesConstraint::checkValues(const std::vector<int>& vals) const {
  std::set<int> u(vals.begin(), vals.begin() + n_);
  long long nv = static_cast<long long>(u.size());
  return cmpHolds(op_, nv, condPos_ >= 0 ? vals[condPos_] : k_);
}

// --- channel -----------------------------------------------------------------

namespace {

std::vector<Variable*> channelScope(std::vector<Variable*> xs,
                                    const std::vector<Variable*>& ys) {
  xs.insert(xs.end(), ys.begin(), ys.end());
  return xs;
}

}  // namespace

ChannelConstraint::ChannelConstraint(Problem& pb, std::vector<Variable*> xs, int startX,
                                     std::vector<Variable*> ys, int startY)
    : Constraint(pb, channelScope(xs, ys)),
      n_(static_cast<int>(xs.size())),
      m_(ys.empty() ? static_cast<int>(xs.size()) : static_cast<int>(ys.size())),
      startX_(startX),
      startY_(ys.empty() ? startX : startY),
      self_(ys.empty()) {
  assert(n_ == m_);
  tagAC = true;
  tagCallCompleteFiltering = true;
}

bool ChannelConstraint::runPropagator(Variable&) {
  bool changed;
  do {
    changed = false;
    for (int i = 0; i < n_; ++i) {
      Domain& dx = xdom(i);
      for (int idx = dx.first(); idx != -1; idx = dx.next(idx)) {
        int j = dx.toVal(idx) - startY_;
        // a forward value must point into the other side and be reciprocated
        bool ok = j >= 0 && j < m_ && ydomC(j).containsValue(i + startX_);
        if (!ok) {
          changed = true;
          if (dx.removeIdx(idx, level())) return fail(*scope[i]);
        }
      }
      if (dx.size() == 1) {
        int j = dx.singleValue() - startY_;
        Domain& dy = ydom(j);
        int tgt = dy.toIdx(i + startX_);
        if (dy.size() > 1) {
          changed = true;
          if (dy.reduceToIdx(tgt, level())) return fail(*scope[self_ ? j : n_ + j]);
        }
      }
    }
    if (!self_) {
      for (int j = 0; j < m_; ++j) {
        Domain& dy = ydom(j);
        for (int idx = dy.first(); idx != -1; idx = dy.next(idx)) {
          int i = dy.toVal(idx) - startX_;
          bool ok = i >= 0 && i < n_ && xdomC(i).containsValue(j + startY_);
          if (!ok) {
            changed = true;
            if (dy.removeIdx(idx, level())) return fail(*scope[n_ + j]);
          }
        }
        if (dy.size() == 1) {
          int i = dy.singleValue() - startX_;
          Domain& dx = xdom(i);
          int tgt = dx.toIdx(j + startY_);
          if (dx.size() > 1) {
            changed = true;
            if (dx.reduceToIdx(tgt, level())) return fail(*scope[i]);
          }
        }
      }
    }
  } while (changed);
  return true;
}

bool ChannelConstraint::checkValues(const std::vector<int>& vals) const {
  for (int i = 0; i < n_; ++i) {
    int j = vals[i] - startY_;
    if (j < 0 || j >= m_) return false;
    if (vals[self_ ? j : n_ + j] != i + startX_) return false;
  }
  if (!self_) {
    for (int j = 0; j < m_; ++j) {
      int i = vals[n_ + j] - startX_;
      if (i < 0 || i >= n_) return false;
      if (vals[i] != j + startY_) return false;
    }
  }
  return true;
}

}  // namespace coral
