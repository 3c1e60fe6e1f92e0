#ifndef CORAL_SOLUTIONS_HPP
#define CORAL_SOLUTIONS_HPP

#include <functional>
#include <vector>

#include "coral/problem.hpp"

namespace coral {

// Keeps the last solution found (values by variable id) and, for optimization,
// the cost it carried. The saved values also feed the value-ordering policy.
class SolutionStore {
 public:
  // Invoked on every recorded solution; lets the front end stream bounds.
  std::function<void(const std::vector<int>&, long long)> onRecord;

  void record(const std::vector<int>& values, long long cost) {
    values_ = values;
    cost_ = cost;
    ++count_;
    if (onRecord) onRecord(values, cost);
  }

  bool any() const { return count_ > 0; }
  long long count() const { return count_; }
  long long cost() const { return cost_; }
  const std::vector<int>& values() const { return values_; }

  void clear() {
    values_.clear();
    cost_ = 0;
    count_ = 0;
  }

 private:
  std::vector<int> values_;
  long long cost_ = 0;
  long long count_ = 0;
};

}  // namespace coral

#endif
