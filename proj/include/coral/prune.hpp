#ifndef CORAL_PRUNE_HPP
#define CORAL_PRUNE_HPP

#include <climits>

#include "coral/domain.hpp"

namespace coral {

// Bound pruning with long long limits (offsets can push past int range).
// Both return true on wipeout.
inline bool pruneAbove(Domain& d, long long lim, int level) {  // values > lim
  for (int a = d.last(); a != -1 && d.toVal(a) > lim;) {
    int p = d.prev(a);
    if (d.removeIdx(a, level)) return true;
    a = p;
  }
  return false;
}

inline bool pruneBelow(Domain& d, long long lim, int level) {  // values < lim
  for (int a = d.first(); a != -1 && d.toVal(a) < lim; a = d.next(a))
    if (d.removeIdx(a, level)) return true;
  return false;
}

inline bool containsLL(const Domain& d, long long v) {
  return v >= INT_MIN && v <= INT_MAX && d.containsValue(static_cast<int>(v));
}

// Division rounding toward -inf / +inf for any operand signs.
inline long long floorDiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}
inline long long ceilDiv(long long a, long long b) { return -floorDiv(-a, b); }

}  // namespace coral

#endif
