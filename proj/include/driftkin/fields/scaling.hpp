#pragma once

namespace driftkin::fields {

/// Physical reference scales of the plasma. All entries are strictly positive.
struct ScalingParameters {
  double debye_length = 1.0;
  double thermal_velocity = 1.0;
  double plasma_frequency = 1.0;
  double cyclotron_frequency = 1.0;
  double temperature = 1.0;
  double density = 1.0;
  double field_scale = 1.0;
  double magnetic_scale = 1.0;
};

/// Throws InvalidParameter naming the first nonpositive entry.
void validate(const ScalingParameters& s);

/// Dimensionless cyclotron period omega_p / omega_c.
double epsilon_from_scales(const ScalingParameters& s);

/// Reference time t_bar for the long-time regime, so that 1/(t_bar omega_p) equals epsilon.
double long_time_scale(const ScalingParameters& s);

inline bool strong_field_regime(double epsilon) { return epsilon > 0.0 && epsilon < 1.0; }

}  // namespace driftkin::fields
