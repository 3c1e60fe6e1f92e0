#ifndef CORAL_VARIABLE_HPP
#define CORAL_VARIABLE_HPP

#include <string>
#include <vector>

#include "coral/domain.hpp"

namespace coral {

class Constraint;

class Variable {
 public:
  Variable(int id, std::string name, Domain dom)
      : id(id), name(std::move(name)), dom(std::move(dom)) {}

  // Explicitly assigned by a decision (a singleton domain produced by
  // propagation alone does not count as assigned).
  bool assigned() const { return assignmentLevel >= 0; }

  int id;
  std::string name;
  Domain dom;
  std::vector<Constraint*> ctrs;  // constraints whose scope contains this
  int assignmentLevel = -1;
};

}  // namespace coral

#endif
