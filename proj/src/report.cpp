#include "coral/report.hpp"

#include <cstdint>
#include <cstdlib>
#include <sstream>

namespace coral {

std::string valueLine(const Problem& pb, const std::vector<int>& values) {
  std::string out = "v";
  for (int i = 0; i < pb.varCount(); ++i) {
    out += " " + pb.var(i).name + "=" + std::to_string(values[i]);
  }
  return out;
}

bool parseValueLine(const std::string& text,
                    std::vector<std::pair<std::string, long long>>* out,
                    std::string* err) {
  out->clear();
  std::istringstream in(text);
  std::string tok;
  bool first = true;
  while (in >> tok) {
    if (first && tok == "v") {
      first = false;
      continue;
    }
    first = false;
    size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      *err = "malformed token '" + tok + "' (expected name=value)";
      return false;
    }
    std::string name = tok.substr(0, eq);
    std::string vs = tok.substr(eq + 1);
    char* end = nullptr;
    long long v = std::strtoll(vs.c_str(), &end, 10);
    if (vs.empty() || end != vs.c_str() + vs.size()) {
      *err = "malformed value in '" + tok + "'";
      return false;
    }
    out->emplace_back(std::move(name), v);
  }
  if (out->empty()) {
    *err = "no assignments found";
    return false;
  }
  return true;
}

bool verifyInstantiation(Problem& pb,
                         const std::vector<std::pair<std::string, long long>>& vals,
                         std::string* err) {
  std::vector<int> byId(pb.varCount());
  std::vector<bool> seen(pb.varCount(), false);
  for (const auto& [name, v] : vals) {
    Variable* x = pb.varByName(name);
    if (x == nullptr) {
      *err = "unknown variable '" + name + "'";
      return false;
    }
    if (seen[x->id]) {
      *err = "variable '" + name + "' assigned twice";
      return false;
    }
    if (v < INT32_MIN || v > INT32_MAX || x->dom.toIdx(static_cast<int>(v)) < 0) {
      *err = "value " + std::to_string(v) + " outside the domain of '" + name + "'";
      return false;
    }
    byId[x->id] = static_cast<int>(v);
    seen[x->id] = true;
  }
  for (int i = 0; i < pb.varCount(); ++i) {
    if (!seen[i]) {
      *err = "variable '" + pb.var(i).name + "' not assigned";
      return false;
    }
  }
  std::vector<int> sv;
  for (int c = 0; c < pb.ctrCount(); ++c) {
    Constraint& ctr = pb.ctr(c);
    if (!ctr.enabled) continue;
    sv.resize(ctr.scope.size());
    for (size_t j = 0; j < ctr.scope.size(); ++j)
      sv[j] = byId[ctr.scope[j]->id];
    if (!ctr.checkValues(sv)) {
      *err = "constraint '" + ctr.name + "' (" + ctr.kindName() + ") is violated";
      return false;
    }
  }
  return true;
}

void emitReport(std::ostream& os, const Problem& pb, const SolveReport& rep,
                bool countAll) {
  os << "s " << verdictName(rep.verdict) << "\n";
  if (rep.hasSolution) os << valueLine(pb, rep.values) << "\n";
  if (pb.objective != nullptr && rep.hasSolution)
    os << "c cost " << rep.cost << "\n";
  if (countAll)
    os << "c solutions " << rep.solutionCount << (rep.complete ? "" : " (incomplete)")
       << "\n";
  const Statistics& st = rep.stats;
  os << "c nodes " << st.nodes << "\n"
     << "c wrong-decisions " << st.wrongDecisions << "\n"
     << "c backtracks " << st.backtracks << "\n"
     << "c propagator-calls " << st.propagatorCalls << "\n"
     << "c removals " << st.removals << "\n"
     << "c runs " << st.runs << "\n"
     << "c nogoods " << st.nogoodsRecorded << "\n"
     << "c elapsed-ms " << st.elapsedMs << "\n";
}

}  // namespace coral
