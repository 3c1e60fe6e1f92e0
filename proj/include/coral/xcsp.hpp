#ifndef CORAL_XCSP_HPP
#define CORAL_XCSP_HPP

#include <memory>
#include <string>
#include <vector>

#include "coral/problem.hpp"
#include "coral/table.hpp"
#include "coral/xml.hpp"

namespace coral {

struct VarDecl {
  std::string id;
  std::string domainText;
  std::vector<int> sizes;  // empty: scalar; [n] or [n][m] for arrays
  int line = 0;
};

// Parsed instance, with blocks flattened and groups expanded: constraint
// elements are kept as XML subtrees so the builder and the writer share one
// representation.
struct InstanceDoc {
  bool cop = false;
  std::vector<VarDecl> vars;
  std::vector<XmlNode> ctrs;
  bool hasObjective = false;
  XmlNode objective;  // tag "minimize" or "maximize"
};

// Accepts the supported XCSP3 subset; anything else raises ParseError naming
// the offending element.
InstanceDoc parseInstance(const std::string& xmlText);

// Serializes the document back to XCSP3; parseInstance(printInstance(d))
// reproduces an equivalent document.
std::string printInstance(const InstanceDoc& doc);

struct BuildOptions {
  TablePropagator table = TablePropagator::CT;
};

struct BuiltInstance {
  std::unique_ptr<Problem> problem;
  long long droppedRows = 0;  // table tuples outside a domain universe
};

BuiltInstance buildProblem(const InstanceDoc& doc, const BuildOptions& opts = {});

}  // namespace coral

#endif
