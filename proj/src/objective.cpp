#include "coral/objective.hpp"

#include <algorithm>
#include <set>

#include "coral/problem.hpp"
#include "coral/prune.hpp"

namespace coral {

// --- single variable ---------------------------------------------------------

ObjectiveVar::ObjectiveVar(Problem& pb, Variable* x, bool minimize)
    : ObjectiveConstraint(pb, {x}, minimize) {}

bool ObjectiveVar::runPropagator(Variable&) {
  if (!bounded()) return true;
  Domain& d = scope[0]->dom;
  bool wiped = minimize ? pruneAbove(d, limit_, level()) : pruneBelow(d, limit_, level());
  return wiped ? fail(*scope[0]) : true;
}

long long ObjectiveVar::lowerBound() const { return scope[0]->dom.firstValue(); }
long long ObjectiveVar::upperBound() const { return scope[0]->dom.lastValue(); }
long long ObjectiveVar::cost(const std::vector<int>& v) const { return v[0]; }

// --- weighted sum ------------------------------------------------------------

ObjectiveSum::ObjectiveSum(Problem& pb, std::vector<Variable*> vars,
                           std::vector<long long> coeffs, bool minimize)
    : ObjectiveConstraint(pb, std::move(vars), minimize), coeffs_(std::move(coeffs)) {}

long long ObjectiveSum::lowerBound() const {
  long long s = 0;
  for (int i = 0; i < arity(); ++i) {
    const Domain& d = scope[i]->dom;
    s += coeffs_[i] > 0 ? coeffs_[i] * d.firstValue() : coeffs_[i] * d.lastValue();
  }
  return s;
}

long long ObjectiveSum::upperBound() const {
  long long s = 0;
  for (int i = 0; i < arity(); ++i) {
    const Domain& d = scope[i]->dom;
    s += coeffs_[i] > 0 ? coeffs_[i] * d.lastValue() : coeffs_[i] * d.firstValue();
  }
  return s;
}

bool ObjectiveSum::runPropagator(Variable&) {
  if (!bounded()) return true;
  bool changed;
  do {
    changed = false;
    // minimize: sum <= limit with the other terms at their minimum;
    // maximize: sum >= limit with the others at their maximum.
    long long base = minimize ? lowerBound() : upperBound();
    for (int i = 0; i < arity(); ++i) {
      Domain& d = scope[i]->dom;
      long long c = coeffs_[i];
      long long own = minimize ? (c > 0 ? c * d.firstValue() : c * d.lastValue())
                               : (c > 0 ? c * d.lastValue() : c * d.firstValue());
      long long allowance = limit_ - (base - own);
      int before = d.size();
      bool wiped;
      if (minimize)
        wiped = c > 0 ? pruneAbove(d, floorDiv(allowance, c), level())
                      : pruneBelow(d, ceilDiv(allowance, c), level());
      else
        wiped = c > 0 ? pruneBelow(d, ceilDiv(allowance, c), level())
                      : pruneAbove(d, floorDiv(allowance, c), level());
      if (wiped) return fail(*scope[i]);
      if (d.size() != before) {
        changed = true;
        base = minimize ? lowerBound() : upperBound();
      }
    }
  } while (changed);
  return true;
}

long long ObjectiveSum::cost(const std::vector<int>& v) const {
  long long s = 0;
  for (int i = 0; i < arity(); ++i) s += coeffs_[i] * v[i];
  return s;
}

// --- minimum of a list -------------------------------------------------------

ObjectiveMin::ObjectiveMin(Problem& pb, std::vector<Variable*> list, bool minimize)
    : ObjectiveConstraint(pb, std::move(list), minimize) {}

long long ObjectiveMin::lowerBound() const {
  long long m = scope[0]->dom.firstValue();
  for (int i = 1; i < arity(); ++i)
    m = std::min<long long>(m, scope[i]->dom.firstValue());
  return m;
}

long long ObjectiveMin::upperBound() const {
  long long m = scope[0]->dom.lastValue();
  for (int i = 1; i < arity(); ++i)
    m = std::min<long long>(m, scope[i]->dom.lastValue());
  return m;
}

bool ObjectiveMin::runPropagator(Variable& evt) {
  if (!bounded()) return true;
  if (minimize) {
    // min(xs) <= limit: someone must stay below; prune only a lone candidate
    int cand = -1, count = 0;
    for (int i = 0; i < arity(); ++i)
      if (scope[i]->dom.firstValue() <= limit_) { cand = i; ++count; }
    if (count == 0) return fail(evt);
    if (count == 1 && pruneAbove(scope[cand]->dom, limit_, level()))
      return fail(*scope[cand]);
  } else {
    for (int i = 0; i < arity(); ++i)  // min(xs) >= limit: everyone at least it
      if (pruneBelow(scope[i]->dom, limit_, level())) return fail(*scope[i]);
  }
  return true;
}

long long ObjectiveMin::cost(const std::vector<int>& v) const {
  return *std::min_element(v.begin(), v.end());
}

// --- maximum of a list -------------------------------------------------------

ObjectiveMax::ObjectiveMax(Problem& pb, std::vector<Variable*> list, bool minimize)
    : ObjectiveConstraint(pb, std::move(list), minimize) {}

long long ObjectiveMax::lowerBound() const {
  long long m = scope[0]->dom.firstValue();
  for (int i = 1; i < arity(); ++i)
    m = std::max<long long>(m, scope[i]->dom.firstValue());
  return m;
}

long long ObjectiveMax::upperBound() const {
  long long m = scope[0]->dom.lastValue();
  for (int i = 1; i < arity(); ++i)
    m = std::max<long long>(m, scope[i]->dom.lastValue());
  return m;
}

bool ObjectiveMax::runPropagator(Variable& evt) {
  if (!bounded()) return true;
  if (minimize) {
    for (int i = 0; i < arity(); ++i)  // max(xs) <= limit: everyone at most it
      if (pruneAbove(scope[i]->dom, limit_, level())) return fail(*scope[i]);
  } else {
    int cand = -1, count = 0;
    for (int i = 0; i < arity(); ++i)
      if (scope[i]->dom.lastValue() >= limit_) { cand = i; ++count; }
    if (count == 0) return fail(evt);
    if (count == 1 && pruneBelow(scope[cand]->dom, limit_, level()))
      return fail(*scope[cand]);
  }
  return true;
}

long long ObjectiveMax::cost(const std::vector<int>& v) const {
  return *std::max_element(v.begin(), v.end());
}

// --- number of distinct values ----------------------------------------------

ObjectiveNValues::ObjectiveNValues(Problem& pb, std::vector<Variable*> list,
                                   bool minimize)
    : ObjectiveConstraint(pb, std::move(list), minimize) {}

long long ObjectiveNValues::lowerBound() const {
  std::vector<std::pair<int, int>> iv(arity());
  for (int i = 0; i < arity(); ++i)
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

long long ObjectiveNValues::upperBound() const {
  std::set<int> u;
  for (int i = 0; i < arity(); ++i) {
    const Domain& d = scope[i]->dom;
    for (int idx = d.first(); idx != -1; idx = d.next(idx)) u.insert(d.toVal(idx));
  }
  return std::min<long long>(static_cast<long long>(u.size()), arity());
}

bool ObjectiveNValues::runPropagator(Variable& evt) {
  if (!bounded()) return true;
  if (minimize) {
    if (lowerBound() > limit_) return fail(evt);
    if (limit_ == 1) {  // all variables share one value: intersect domains
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
    }
  } else {
    if (upperBound() < limit_) return fail(evt);
  }
  return true;
}

long long ObjectiveNValues::cost(const std::vector<int>& v) const {
  std::set<int> u(v.begin(), v.end());
  return static_cast<long long>(u.size());
}

}  // namespace coral
