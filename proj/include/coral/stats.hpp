#ifndef CORAL_STATS_HPP
#define CORAL_STATS_HPP

#include <chrono>
#include <cstdint>
#include <string>

namespace coral {

struct Statistics {
  long long nodes = 0;           // decisions taken (positive and negative)
  long long wrongDecisions = 0;  // positive decisions later refuted
  long long backtracks = 0;
  long long propagatorCalls = 0;
  long long removals = 0;
  long long runs = 0;
  long long solutions = 0;
  long long nogoodsRecorded = 0;
  long long elapsedMs = 0;

  void startTimer() { start_ = std::chrono::steady_clock::now(); }
  void stopTimer() {
    elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start_)
                    .count();
  }

  void accumulate(const Statistics& o) {
    nodes += o.nodes;
    wrongDecisions += o.wrongDecisions;
    backtracks += o.backtracks;
    propagatorCalls += o.propagatorCalls;
    removals += o.removals;
    runs += o.runs;
    solutions += o.solutions;
    nogoodsRecorded += o.nogoodsRecorded;
    elapsedMs += o.elapsedMs;
  }

 private:
  std::chrono::steady_clock::time_point start_{};
};

}  // namespace coral

#endif
