#ifndef CORAL_RESTARTER_HPP
#define CORAL_RESTARTER_HPP

#include <cmath>

namespace coral {

// i-th term (from 1) of the 1,1,2,1,1,2,4,... sequence.
inline long long lubyTerm(long long i) {
  while (true) {
    long long p = 2;
    while (p - 1 < i) p <<= 1;
    if (p - 1 == i) return p / 2;
    i -= p / 2 - 1;
  }
}

// Restart cutoffs counted in wrong decisions per run.
struct RestartPolicy {
  enum class Kind { None, Geometric, Luby };

  Kind kind = Kind::Geometric;
  long long base = 100;
  double factor = 1.1;

  bool enabled() const { return kind != Kind::None; }

  long long cutoff(long long run) const {
    switch (kind) {
      case Kind::Geometric:
        return static_cast<long long>(std::floor(base * std::pow(factor, run)));
      case Kind::Luby:
        return base * lubyTerm(run + 1);
      case Kind::None:
        return -1;  // never reached
    }
    return -1;
  }
};

}  // namespace coral

#endif
