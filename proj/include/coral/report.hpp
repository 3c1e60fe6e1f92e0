#ifndef CORAL_REPORT_HPP
#define CORAL_REPORT_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "coral/optimizer.hpp"
#include "coral/problem.hpp"

namespace coral {

// "v name=value ..." over every variable, by id order.
std::string valueLine(const Problem& pb, const std::vector<int>& values);

// Parses "name=value" pairs (a leading "v" token is allowed and skipped).
bool parseValueLine(const std::string& text,
                    std::vector<std::pair<std::string, long long>>* out,
                    std::string* err);

// Checks a full instantiation against every enabled constraint of a freshly
// built problem. All variables must be covered with universe values.
bool verifyInstantiation(Problem& pb,
                         const std::vector<std::pair<std::string, long long>>& vals,
                         std::string* err);

// Verdict line, value line, and the statistics comment block. Improving
// objective bounds ("o ..." lines) are streamed during search, not here.
void emitReport(std::ostream& os, const Problem& pb, const SolveReport& rep,
                bool countAll);

}  // namespace coral

#endif
