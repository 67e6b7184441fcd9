#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "driftkin/fields/magnetic_field.hpp"
#include "driftkin/vec.hpp"

namespace driftkin::config {

enum class Scenario { exb_drift, gradb_drift, mu_invariance, gc2d, pic_run, defect_scan, convergence };

std::string_view to_string(Scenario s);
std::optional<Scenario> scenario_from_string(std::string_view name);
const std::vector<Scenario>& all_scenarios();
std::string_view describe(Scenario s);

struct DomainSpec {
  int n = 64;
  double length = kTwoPi;
  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

struct FieldSpec {
  fields::FieldVariant variant = fields::FieldVariant::uniform;
  double b0 = 1.0;
  Vec2 grad{0.1, 0.0};
  double amplitude = 0.2;
  double alpha = 0.5;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct EpsilonSpec {
  double value = 0.05;
  std::vector<double> list{0.1, 0.05, 0.025};
  friend bool operator==(const EpsilonSpec&, const EpsilonSpec&) = default;
};

/// Full-kinetic run of the steady-vortex density with Maxwellian velocities.
struct PicSpec {
  long particles = 10000;
  double ds = 0.0;  // 0: gyroperiod / steps_per_period
  int steps_per_period = 64;
  double t_end = 1.0;
  int output_every = 64;
  int snapshot_every = 0;
  double vortex_amplitude = 0.2;
  double thermal_speed = 1.0;
  friend bool operator==(const PicSpec&, const PicSpec&) = default;
};

struct Gc2dSpec {
  int n = 128;
  double dt = 0.05;
  double t_end = 10.0;
  int output_every = 10;
  double amplitude = 0.5;
  double perturbation = 0.015;
  double mode = 0.5;
  friend bool operator==(const Gc2dSpec&, const Gc2dSpec&) = default;
};

struct OrbitState {
  Vec2 x{};
  double w = 1.0;
  friend bool operator==(const OrbitState&, const OrbitState&) = default;
};

enum class FrozenPotential { zero, cellular };

struct OrbitSpec {
  // single-particle drift runs
  double e0 = 1.0;
  double w = 1.0;
  int n_periods = 10;
  int steps_per_period = 64;
  // drift-orbit integration
  double dt = 1e-3;
  double t_end = 10.0;
  std::vector<OrbitState> states{{{1.0, 2.0}, 1.0}, {{3.0, 1.5}, 0.5}, {{4.5, 4.0}, 1.5}};
  FrozenPotential potential = FrozenPotential::cellular;
  double potential_amplitude = 0.1;
  friend bool operator==(const OrbitSpec&, const OrbitSpec&) = default;
};

struct DefectSpec {
  int n = 16;
  int n_w = 33;
  double w_max = 7.0;
  int n_par = 9;
  double par_max = 4.0;
  int n_theta = 16;
  double vortex_amplitude = 0.2;
  friend bool operator==(const DefectSpec&, const DefectSpec&) = default;
};

/// PIC-versus-drift-orbit study; the grid comes from [domain].
struct ConvergenceSpec {
  long particles = 10000;
  double t_end = 1.0;
  int steps_per_period = 32;  // at the largest epsilon of the list
  double ring_speed = 1.0;
  double vortex_amplitude = 0.4;
  double orbit_dt = 0.02;
  friend bool operator==(const ConvergenceSpec&, const ConvergenceSpec&) = default;
};

struct Thresholds {
  double drift_rel = 0.05;
  double mu_drift = 1e-8;
  double energy_drift = 0.01;
  double mass = 1e-10;
  double defect_ratio_min = 1.7;
  double defect_ratio_max = 2.3;
  double convergence_ratio_min = 1.5;
  double convergence_ratio_max = 2.5;
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::gc2d;
  std::string out = "out";
  std::uint64_t seed = 1;
  int threads = 1;
  DomainSpec domain;
  FieldSpec field;
  EpsilonSpec epsilon;
  PicSpec pic;
  Gc2dSpec gc2d;
  OrbitSpec orbit;
  DefectSpec defect;
  ConvergenceSpec convergence;
  Thresholds thresholds;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Defaults for a scenario; the field variant follows the scenario
/// (linear ramp for gradb-drift, periodic bump for mu-invariance, else uniform).
ScenarioConfig default_config(Scenario s);

/// Strict INI-style parser: `[section]` headers, `key = value` lines, `#`
/// comments. Every problem is collected; throws ConfigError listing all of
/// them. [scenario] name is required, everything else has a default.
ScenarioConfig parse_config(std::string_view text);

/// Range checks on an assembled config; empty when valid.
std::vector<std::string> validate(const ScenarioConfig& config);

std::string serialize(const ScenarioConfig& config);

}  // namespace driftkin::config
