#ifndef CORAL_HEURISTICS_HPP
#define CORAL_HEURISTICS_HPP

#include <string>
#include <vector>

#include "coral/observers.hpp"
#include "coral/problem.hpp"

namespace coral {

enum class VarhKind { Input, Dom, DDegOnDom, Wdeg, WdegOnDom, VarWeight, Rand };
enum class ValhKind { First, Last, Rand, Bivs };
enum class WeightMode { Unit, Cacd, Chs };

const char* varhName(VarhKind k);
const char* valhName(ValhKind k);
const char* weightModeName(WeightMode m);
bool varhFromName(const std::string& s, VarhKind* out);
bool valhFromName(const std::string& s, ValhKind* out);
bool weightModeFromName(const std::string& s, WeightMode* out);

// Conflict-driven weights. Every wipeout credits the wiped variable; the
// constraint at fault is credited according to the mode:
//   unit  adds 1;
//   cacd  adds 1 / (futvars * |dom|), both clamped to at least 1;
//   chs   nudges an exponential moving average toward 1/(age of last conflict),
//         with the step shrinking from 0.4 towards 0.06 over time.
class WeightStore : public ConflictObserver {
 public:
  WeightStore(Problem& pb, WeightMode mode)
      : mode_(mode),
        cweight_(pb.ctrCount(), 1.0),
        q_(pb.ctrCount(), 0.0),
        last_(pb.ctrCount(), 0),
        vweight_(pb.varCount(), 1.0) {}

  void whenWipeout(Constraint* c, Variable& x) override;

  double constraintScore(const Constraint& c) const {
    return mode_ == WeightMode::Chs ? q_[c.id] : cweight_[c.id];
  }
  double variableWeight(const Variable& x) const { return vweight_[x.id]; }
  long long conflicts() const { return conflicts_; }
  double alpha() const { return alpha_; }

  void scaleAll(double f) {
    for (auto& w : cweight_) w *= f;
    for (auto& w : q_) w *= f;
    for (auto& w : vweight_) w *= f;
  }

 private:
  WeightMode mode_;
  std::vector<double> cweight_;
  std::vector<double> q_;         // chs moving averages
  std::vector<long long> last_;   // chs: conflict counter at last involvement
  std::vector<double> vweight_;
  long long conflicts_ = 0;
  double alpha_ = 0.4;
};

// Larger is better. Rand is handled by the caller.
double varhScore(VarhKind k, const Variable& x, const WeightStore& w);

}  // namespace coral

#endif
