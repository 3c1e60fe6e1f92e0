#ifndef CORAL_DECISIONS_HPP
#define CORAL_DECISIONS_HPP

#include <cstdlib>
#include <vector>

#include "coral/problem.hpp"

namespace coral {

// The current branch as signed codes: +(id*stride + idx + 1) assigns, the
// negation refutes. Refutations never open a level of their own.
class DecisionStack {
 public:
  explicit DecisionStack(Problem& pb) : pb_(&pb), stride_(pb.maxDomSize()) {}

  int encode(const Variable& x, int idx) const { return x.id * stride_ + idx + 1; }
  Variable& varOf(int d) const { return pb_->var((std::abs(d) - 1) / stride_); }
  int idxOf(int d) const { return (std::abs(d) - 1) % stride_; }
  static bool isPositive(int d) { return d > 0; }

  void push(int d) { decs_.push_back(d); }
  void pop() { decs_.pop_back(); }
  int top() const { return decs_.back(); }
  bool empty() const { return decs_.empty(); }
  int size() const { return static_cast<int>(decs_.size()); }
  int at(int i) const { return decs_[i]; }
  void clear() { decs_.clear(); }

 private:
  Problem* pb_;
  int stride_;
  std::vector<int> decs_;
};

}  // namespace coral

#endif
