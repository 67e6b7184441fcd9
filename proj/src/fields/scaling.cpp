#include "driftkin/fields/scaling.hpp"

#include <cmath>
#include <string>

#include "driftkin/error.hpp"

namespace driftkin::fields {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidParameter(std::string("scaling parameter '") + name + "' must be positive");
  }
}

}  // namespace

void validate(const ScalingParameters& s) {
  require_positive(s.debye_length, "debye_length");
  require_positive(s.thermal_velocity, "thermal_velocity");
  require_positive(s.plasma_frequency, "plasma_frequency");
  require_positive(s.cyclotron_frequency, "cyclotron_frequency");
  require_positive(s.temperature, "temperature");
  require_positive(s.density, "density");
  require_positive(s.field_scale, "field_scale");
  require_positive(s.magnetic_scale, "magnetic_scale");
}

double epsilon_from_scales(const ScalingParameters& s) {
  require_positive(s.plasma_frequency, "plasma_frequency");
  require_positive(s.cyclotron_frequency, "cyclotron_frequency");
  return s.plasma_frequency / s.cyclotron_frequency;
}

double long_time_scale(const ScalingParameters& s) {
  return 1.0 / (epsilon_from_scales(s) * s.plasma_frequency);
}

}  // namespace driftkin::fields
