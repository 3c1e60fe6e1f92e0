#ifndef CORAL_TESTS_SUPPORT_ENGINE_HPP
#define CORAL_TESTS_SUPPORT_ENGINE_HPP

// Minimal standalone propagation harness: wires an observer hub and a queue to
// a problem so tests can drive propagators without a solver.

#include "coral/propagation.hpp"

namespace testsup {

struct Engine {
  coral::Problem& pb;
  coral::ObserverHub hub;
  coral::Statistics stats;
  coral::Propagation prop;

  explicit Engine(coral::Problem& p) : pb(p), prop(p, hub, stats) {
    pb.hub = &hub;
  }
  ~Engine() {
    if (pb.hub == &hub) pb.hub = nullptr;
  }
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;
};

}  // namespace testsup

#endif
