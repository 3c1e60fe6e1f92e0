#ifndef CORAL_PROBLEM_HPP
#define CORAL_PROBLEM_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coral/constraint.hpp"
#include "coral/observers.hpp"
#include "coral/variable.hpp"

namespace coral {

class ObjectiveConstraint;

struct Features {
  int nVars = 0;
  int nCtrs = 0;
  int minDomSize = 0;
  int maxDomSize = 0;
  bool hasObjective = false;
  std::map<std::string, int> ctrKinds;
  bool operator==(const Features&) const = default;
};

// One CSP/COP instance: the variables, the constraints, and the shared search
// state (current level, observer hub) that propagators read while filtering.
class Problem {
 public:
  Problem() = default;
  Problem(const Problem&) = delete;
  Problem& operator=(const Problem&) = delete;

  Variable& addVariable(const std::string& name, int lo, int hi) {
    return store(std::make_unique<Variable>(varCount(), name, Domain(lo, hi)));
  }
  Variable& addVariable(const std::string& name, std::vector<int> values) {
    return store(std::make_unique<Variable>(varCount(), name, Domain(std::move(values))));
  }

  template <class C, class... Args>
  C& post(Args&&... args) {
    auto up = std::make_unique<C>(*this, std::forward<Args>(args)...);
    C& c = *up;
    c.id = ctrCount();
    if (c.name.empty()) c.name = "c" + std::to_string(c.id);
    for (Variable* v : c.scope) v->ctrs.push_back(&c);
    ctrs_.push_back(std::move(up));
    return c;
  }

  int varCount() const { return static_cast<int>(vars_.size()); }
  int ctrCount() const { return static_cast<int>(ctrs_.size()); }
  Variable& var(int id) { return *vars_[id]; }
  const Variable& var(int id) const { return *vars_[id]; }
  Constraint& ctr(int id) { return *ctrs_[id]; }
  Variable* varByName(const std::string& n) {
    for (auto& v : vars_)
      if (v->name == n) return v.get();
    return nullptr;
  }

  // Largest initial domain size; the stride of the decision encoding.
  int maxDomSize() const {
    int d = 1;
    for (auto& v : vars_) d = std::max(d, v->dom.initialSize());
    return d;
  }

  // Undo every effect recorded at a level >= level: domains, stateful
  // propagators, then externally registered backtrack observers.
  void restoreBefore(int level) {
    for (auto& v : vars_) v->dom.restoreBefore(level);
    for (auto& o : stateRestorers) o->restoreBefore(level);
    if (hub) hub->fireRestoreBefore(level);
    ++restoreStamp;
  }
  void restoreFull() {
    restoreBefore(0);
    level = 0;
    for (auto& v : vars_) v->assignmentLevel = -1;
  }

  Features features() const {
    Features f;
    f.nVars = varCount();
    f.nCtrs = ctrCount();
    f.hasObjective = objective != nullptr;
    for (auto& v : vars_) {
      int s = v->dom.initialSize();
      if (f.minDomSize == 0 || s < f.minDomSize) f.minDomSize = s;
      f.maxDomSize = std::max(f.maxDomSize, s);
    }
    for (auto& c : ctrs_) ++f.ctrKinds[c->kindName()];
    return f;
  }

  int level = 0;
  ObserverHub* hub = nullptr;  // set while a solver is attached
  uint64_t restoreStamp = 0;
  ObjectiveConstraint* objective = nullptr;
  bool triviallyFalse = false;  // set by the builder for constant-false constraints
  // Propagators with reversible internal state register here.
  std::vector<BacktrackObserver*> stateRestorers;

 private:
  Variable& store(std::unique_ptr<Variable> up) {
    Variable& v = *up;
    vars_.push_back(std::move(up));
    v.dom.bind(&v, &hub);
    return v;
  }

  std::vector<std::unique_ptr<Variable>> vars_;
  std::vector<std::unique_ptr<Constraint>> ctrs_;
};

}  // namespace coral

#endif
