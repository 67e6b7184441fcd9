#include "driftkin/fields/magnetic_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "driftkin/error.hpp"

namespace driftkin::fields {

std::string_view to_string(FieldVariant v) {
  switch (v) {
    case FieldVariant::uniform: return "uniform";
    case FieldVariant::linear_ramp: return "linear-ramp";
    case FieldVariant::periodic_bump: return "smooth-periodic-bump";
  }
  return "unknown";
}

FieldVariant field_variant_from_string(std::string_view name) {
  if (name == "uniform") return FieldVariant::uniform;
  if (name == "linear-ramp") return FieldVariant::linear_ramp;
  if (name == "smooth-periodic-bump") return FieldVariant::periodic_bump;
  throw InvalidParameter("unknown field variant '" + std::string(name) + "'");
}

MagneticFieldModel MagneticFieldModel::uniform(double b0, double alpha) {
  MagneticFieldModel m;
  m.variant = FieldVariant::uniform;
  m.b0 = b0;
  m.alpha = alpha;
  return m;
}

MagneticFieldModel MagneticFieldModel::linear_ramp(double b0, Vec2 gradient, double alpha) {
  MagneticFieldModel m;
  m.variant = FieldVariant::linear_ramp;
  m.b0 = b0;
  m.gradient = gradient;
  m.alpha = alpha;
  return m;
}

MagneticFieldModel MagneticFieldModel::periodic_bump(double b0, double amplitude, Vec2 center,
                                                     Vec2 period, double alpha) {
  if (!(period.x > 0.0) || !(period.y > 0.0)) {
    throw InvalidParameter("bump period must be positive");
  }
  MagneticFieldModel m;
  m.variant = FieldVariant::periodic_bump;
  m.b0 = b0;
  m.amplitude = amplitude;
  m.center = center;
  m.period = period;
  m.alpha = alpha;
  return m;
}

double MagneticFieldModel::value(Vec2 x) const {
  switch (variant) {
    case FieldVariant::uniform:
      return b0;
    case FieldVariant::linear_ramp:
      return b0 + dot(gradient, x);
    case FieldVariant::periodic_bump: {
      const double kx = kTwoPi / period.x;
      const double ky = kTwoPi / period.y;
      const double px = 1.0 + std::cos(kx * (x.x - center.x));
      const double py = 1.0 + std::cos(ky * (x.y - center.y));
      return b0 + 0.25 * amplitude * px * py;
    }
  }
  return b0;
}

Vec2 MagneticFieldModel::gradient_at(Vec2 x) const {
  switch (variant) {
    case FieldVariant::uniform:
      return {};
    case FieldVariant::linear_ramp:
      return gradient;
    case FieldVariant::periodic_bump: {
      const double kx = kTwoPi / period.x;
      const double ky = kTwoPi / period.y;
      const double ax = kx * (x.x - center.x);
      const double ay = ky * (x.y - center.y);
      const double px = 1.0 + std::cos(ax);
      const double py = 1.0 + std::cos(ay);
      return {-0.25 * amplitude * kx * std::sin(ax) * py,
              -0.25 * amplitude * ky * std::sin(ay) * px};
    }
  }
  return {};
}

double eval_b(const MagneticFieldModel& model, double /*t*/, Vec2 x_perp) {
  const double b = model.value(x_perp);
  if (!(b > model.alpha)) {
    std::ostringstream os;
    os << "magnetic field b = " << b << " at (" << x_perp.x << ", " << x_perp.y
       << ") is not above alpha = " << model.alpha;
    throw ModelViolation(os.str());
  }
  return b;
}

Vec2 grad_b(const MagneticFieldModel& model, double /*t*/, Vec2 x_perp) {
  return model.gradient_at(x_perp);
}

ValidationReport validate_field(const MagneticFieldModel& model, const SampleLattice& lattice) {
  if (lattice.nx < 1 || lattice.ny < 1) {
    throw InvalidParameter("validation lattice must be nonempty");
  }
  ValidationReport r;
  r.min_b = std::numeric_limits<double>::infinity();
  r.max_b = -std::numeric_limits<double>::infinity();
  const double dx = lattice.nx > 1 ? (lattice.upper.x - lattice.lower.x) / (lattice.nx - 1) : 0.0;
  const double dy = lattice.ny > 1 ? (lattice.upper.y - lattice.lower.y) / (lattice.ny - 1) : 0.0;
  for (int i = 0; i < lattice.nx; ++i) {
    for (int j = 0; j < lattice.ny; ++j) {
      const Vec2 p{lattice.lower.x + i * dx, lattice.lower.y + j * dy};
      const double b = model.value(p);
      if (b < r.min_b) {
        r.min_b = b;
        r.min_location = p;
      }
      r.max_b = std::max(r.max_b, b);
      r.max_grad = std::max(r.max_grad, norm(model.gradient_at(p)));
      ++r.points;
    }
  }
  r.passed = r.min_b > model.alpha && std::isfinite(r.max_grad);
  return r;
}

}  // namespace driftkin::fields
