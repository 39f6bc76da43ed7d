#pragma once

// Invariant suites behind the `check` command. Each suite sweeps seeded
// random inputs and reports its worst residual against a pinned tolerance.

#include "kaon/physics_core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kaon {

struct SuiteResult {
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<SuiteResult> run_all_checks(const PhysicalParams& par,
                                        uint64_t seed);

}  // namespace kaon
