#pragma once

// Internal consistency checks run on the bundled configs.

#include <string>
#include <vector>

#include "nearfield/config.hpp"

namespace nearfield {

struct SelfTestCheck {
  std::string config;
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured defect
  double tolerance = 0.0;
};

struct SelfTestReport {
  std::vector<SelfTestCheck> checks;
  bool ok() const;
};

SelfTestReport run_selftest(const ExperimentConfig& config);
/// All bundled configs.
SelfTestReport run_selftest();

}  // namespace nearfield
