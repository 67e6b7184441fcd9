#pragma once

#include <ostream>
#include <string>

#include "driftkin/config/scenario.hpp"
#include "driftkin/fields/magnetic_field.hpp"

namespace driftkin::cli {

struct ScenarioOutcome {
  /// False for scenarios without a built-in threshold.
  bool has_verdict = false;
  bool pass = true;
  /// One line, e.g. "mu drift 3.2e-11 PASS".
  std::string summary;
};

/// Field model of a [field] section; the periodic bump is centred in the
/// square domain of side `length` and has that period.
fields::MagneticFieldModel make_field(const config::FieldSpec& spec, double length);

/// Runs one scenario, writing its artifacts under config.out (created if
/// needed) and progress/tables to `log`. Solver errors propagate.
ScenarioOutcome run_scenario(const config::ScenarioConfig& config, std::ostream& log);

}  // namespace driftkin::cli
