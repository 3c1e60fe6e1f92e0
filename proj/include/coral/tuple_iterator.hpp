#ifndef CORAL_TUPLE_ITERATOR_HPP
#define CORAL_TUPLE_ITERATOR_HPP

#include <vector>

#include "coral/variable.hpp"

namespace coral {

// Enumerates index tuples over the *current* domains of a scope in
// lexicographic order, optionally with one position frozen to a fixed index.
// Used by the generic arc-consistency scheme to seek supports.
class TupleIterator {
 public:
  explicit TupleIterator(const std::vector<Variable*>& scope)
      : scope_(&scope), cur_(scope.size()) {}

  // Smallest valid tuple with position pos frozen to idx. False only if some
  // other domain is empty.
  bool firstValidWith(int pos, int idx) {
    frozen_ = pos;
    for (size_t p = 0; p < cur_.size(); ++p) {
      if (static_cast<int>(p) == pos) {
        cur_[p] = idx;
      } else {
        cur_[p] = (*scope_)[p]->dom.first();
        if (cur_[p] == -1) return false;
      }
    }
    return true;
  }

  // Advances to the next valid tuple (frozen position untouched); false when
  // exhausted.
  bool nextValid() {
    for (int p = static_cast<int>(cur_.size()) - 1; p >= 0; --p) {
      if (p == frozen_) continue;
      cur_[p] = (*scope_)[p]->dom.next(cur_[p]);
      if (cur_[p] != -1) {
        for (size_t q = p + 1; q < cur_.size(); ++q)
          if (static_cast<int>(q) != frozen_) cur_[q] = (*scope_)[q]->dom.first();
        return true;
      }
      cur_[p] = (*scope_)[p]->dom.first();
    }
    return false;
  }

  const std::vector<int>& current() const { return cur_; }

 private:
  const std::vector<Variable*>* scope_;
  std::vector<int> cur_;
  int frozen_ = -1;
};

}  // namespace coral

#endif
