#include "driftkin/config/scenario.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "driftkin/diagnostics/record.hpp"
#include "driftkin/error.hpp"

namespace driftkin::config {

namespace {

constexpr std::pair<Scenario, std::string_view> kNames[] = {
    {Scenario::exb_drift, "exb-drift"},       {Scenario::gradb_drift, "gradb-drift"},
    {Scenario::mu_invariance, "mu-invariance"}, {Scenario::gc2d, "gc2d"},
    {Scenario::pic_run, "pic-run"},           {Scenario::defect_scan, "defect-scan"},
    {Scenario::convergence, "convergence"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_doubles(std::string_view s, char sep, std::vector<double>& out) {
  out.clear();
  for (auto part : split(s, sep)) {
    double v;
    if (!parse_number(part, v)) return false;
    out.push_back(v);
  }
  return true;
}

std::string join_doubles(const std::vector<double>& values, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += diag::format_double(values[i]);
  }
  return s;
}

// One entry per accepted key: how to read it from text and write it back.
struct Key {
  std::string section;
  std::string name;
  std::function<std::string(ScenarioConfig&, std::string_view)> set;  // error or ""
  std::function<std::string(const ScenarioConfig&)> get;
};

template <typename Access>
Key number_key(std::string section, std::string name, Access access) {
  return {std::move(section), std::move(name),
          [access](ScenarioConfig& c, std::string_view v) -> std::string {
            auto& field = access(c);
            using T = std::remove_reference_t<decltype(field)>;
            T parsed;
            if (!parse_number(v, parsed)) return "expected a number, got '" + std::string(v) + "'";
            field = parsed;
            return {};
          },
          [access](const ScenarioConfig& c) {
            auto& field = access(const_cast<ScenarioConfig&>(c));
            using T = std::remove_reference_t<decltype(field)>;
            if constexpr (std::is_floating_point_v<T>) {
              return diag::format_double(field);
            } else {
              return std::to_string(field);
            }
          }};
}

template <typename Access>
Key vec2_key(std::string section, std::string name, Access access) {
  return {std::move(section), std::move(name),
          [access](ScenarioConfig& c, std::string_view v) -> std::string {
            std::vector<double> xs;
            if (!parse_doubles(v, ',', xs) || xs.size() != 2) {
              return "expected two comma-separated numbers, got '" + std::string(v) + "'";
            }
            access(c) = Vec2{xs[0], xs[1]};
            return {};
          },
          [access](const ScenarioConfig& c) {
            const Vec2 x = access(const_cast<ScenarioConfig&>(c));
            return join_doubles({x.x, x.y}, ", ");
          }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"scenario", "name",
                 [](ScenarioConfig& c, std::string_view v) -> std::string {
                   const auto s = scenario_from_string(v);
                   if (!s) return "unknown scenario '" + std::string(v) + "'";
                   c.scenario = *s;
                   return {};
                 },
                 [](const ScenarioConfig& c) { return std::string(to_string(c.scenario)); }});
    k.push_back({"scenario", "out",
                 [](ScenarioConfig& c, std::string_view v) -> std::string {
                   if (v.empty()) return "output directory must not be empty";
                   c.out = std::string(v);
                   return {};
                 },
                 [](const ScenarioConfig& c) { return c.out; }});
    k.push_back(number_key("scenario", "seed", [](ScenarioConfig& c) -> auto& { return c.seed; }));
    k.push_back(
        number_key("scenario", "threads", [](ScenarioConfig& c) -> auto& { return c.threads; }));

    k.push_back(number_key("domain", "n", [](ScenarioConfig& c) -> auto& { return c.domain.n; }));
    k.push_back(
        number_key("domain", "length", [](ScenarioConfig& c) -> auto& { return c.domain.length; }));

    k.push_back({"field", "variant",
                 [](ScenarioConfig& c, std::string_view v) -> std::string {
                   try {
                     c.field.variant = fields::field_variant_from_string(v);
                   } catch (const InvalidParameter& e) {
                     return e.what();
                   }
                   return {};
                 },
                 [](const ScenarioConfig& c) { return std::string(fields::to_string(c.field.variant)); }});
    k.push_back(number_key("field", "b0", [](ScenarioConfig& c) -> auto& { return c.field.b0; }));
    k.push_back(vec2_key("field", "grad", [](ScenarioConfig& c) -> auto& { return c.field.grad; }));
    k.push_back(
        number_key("field", "amplitude", [](ScenarioConfig& c) -> auto& { return c.field.amplitude; }));
    k.push_back(number_key("field", "alpha", [](ScenarioConfig& c) -> auto& { return c.field.alpha; }));

    k.push_back(
        number_key("epsilon", "value", [](ScenarioConfig& c) -> auto& { return c.epsilon.value; }));
    k.push_back({"epsilon", "list",
                 [](ScenarioConfig& c, std::string_view v) -> std::string {
                   if (!parse_doubles(v, ',', c.epsilon.list)) {
                     return "expected comma-separated numbers, got '" + std::string(v) + "'";
                   }
                   return {};
                 },
                 [](const ScenarioConfig& c) { return join_doubles(c.epsilon.list, ", "); }});

    k.push_back(number_key("pic", "particles", [](ScenarioConfig& c) -> auto& { return c.pic.particles; }));
    k.push_back(number_key("pic", "ds", [](ScenarioConfig& c) -> auto& { return c.pic.ds; }));
    k.push_back(number_key("pic", "steps_per_period",
                           [](ScenarioConfig& c) -> auto& { return c.pic.steps_per_period; }));
    k.push_back(number_key("pic", "t_end", [](ScenarioConfig& c) -> auto& { return c.pic.t_end; }));
    k.push_back(
        number_key("pic", "output_every", [](ScenarioConfig& c) -> auto& { return c.pic.output_every; }));
    k.push_back(number_key("pic", "snapshot_every",
                           [](ScenarioConfig& c) -> auto& { return c.pic.snapshot_every; }));
    k.push_back(number_key("pic", "vortex_amplitude",
                           [](ScenarioConfig& c) -> auto& { return c.pic.vortex_amplitude; }));
    k.push_back(
        number_key("pic", "thermal_speed", [](ScenarioConfig& c) -> auto& { return c.pic.thermal_speed; }));

    k.push_back(number_key("gc2d", "n", [](ScenarioConfig& c) -> auto& { return c.gc2d.n; }));
    k.push_back(number_key("gc2d", "dt", [](ScenarioConfig& c) -> auto& { return c.gc2d.dt; }));
    k.push_back(number_key("gc2d", "t_end", [](ScenarioConfig& c) -> auto& { return c.gc2d.t_end; }));
    k.push_back(
        number_key("gc2d", "output_every", [](ScenarioConfig& c) -> auto& { return c.gc2d.output_every; }));
    k.push_back(
        number_key("gc2d", "amplitude", [](ScenarioConfig& c) -> auto& { return c.gc2d.amplitude; }));
    k.push_back(number_key("gc2d", "perturbation",
                           [](ScenarioConfig& c) -> auto& { return c.gc2d.perturbation; }));
    k.push_back(number_key("gc2d", "mode", [](ScenarioConfig& c) -> auto& { return c.gc2d.mode; }));

    k.push_back(number_key("orbit", "e0", [](ScenarioConfig& c) -> auto& { return c.orbit.e0; }));
    k.push_back(number_key("orbit", "w", [](ScenarioConfig& c) -> auto& { return c.orbit.w; }));
    k.push_back(
        number_key("orbit", "n_periods", [](ScenarioConfig& c) -> auto& { return c.orbit.n_periods; }));
    k.push_back(number_key("orbit", "steps_per_period",
                           [](ScenarioConfig& c) -> auto& { return c.orbit.steps_per_period; }));
    k.push_back(number_key("orbit", "dt", [](ScenarioConfig& c) -> auto& { return c.orbit.dt; }));
    k.push_back(number_key("orbit", "t_end", [](ScenarioConfig& c) -> auto& { return c.orbit.t_end; }));
    k.push_back({"orbit", "states",
                 [](ScenarioConfig& c, std::string_view v) -> std::string {
                   c.orbit.states.clear();
                   for (auto item : split(v, ';')) {
                     std::vector<double> xs;
                     std::vector<std::string_view> parts;
                     for (auto p : split(item, ' ')) {
                       if (!p.empty()) parts.push_back(p);
                     }
                     for (auto p : parts) {
                       double d;
                       if (!parse_number(p, d)) break;
                       xs.push_back(d);
                     }
                     if (xs.size() != 3 || parts.size() != 3) {
                       return "expected 'x y w' triples separated by ';', got '" + std::string(item) + "'";
                     }
                     c.orbit.states.push_back({{xs[0], xs[1]}, xs[2]});
                   }
                   return {};
                 },
                 [](const ScenarioConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.orbit.states.size(); ++i) {
                     const auto& st = c.orbit.states[i];
                     if (i) s += "; ";
                     s += join_doubles({st.x.x, st.x.y, st.w}, " ");
                   }
                   return s;
                 }});
    k.push_back({"orbit", "potential",
                 [](ScenarioConfig& c, std::string_view v) -> std::string {
                   if (v == "zero") {
                     c.orbit.potential = FrozenPotential::zero;
                   } else if (v == "cellular") {
                     c.orbit.potential = FrozenPotential::cellular;
                   } else {
                     return "expected 'zero' or 'cellular', got '" + std::string(v) + "'";
                   }
                   return {};
                 },
                 [](const ScenarioConfig& c) {
                   return std::string(c.orbit.potential == FrozenPotential::zero ? "zero" : "cellular");
                 }});
    k.push_back(number_key("orbit", "potential_amplitude",
                           [](ScenarioConfig& c) -> auto& { return c.orbit.potential_amplitude; }));

    k.push_back(number_key("defect", "n", [](ScenarioConfig& c) -> auto& { return c.defect.n; }));
    k.push_back(number_key("defect", "n_w", [](ScenarioConfig& c) -> auto& { return c.defect.n_w; }));
    k.push_back(number_key("defect", "w_max", [](ScenarioConfig& c) -> auto& { return c.defect.w_max; }));
    k.push_back(number_key("defect", "n_par", [](ScenarioConfig& c) -> auto& { return c.defect.n_par; }));
    k.push_back(
        number_key("defect", "par_max", [](ScenarioConfig& c) -> auto& { return c.defect.par_max; }));
    k.push_back(
        number_key("defect", "n_theta", [](ScenarioConfig& c) -> auto& { return c.defect.n_theta; }));
    k.push_back(number_key("defect", "vortex_amplitude",
                           [](ScenarioConfig& c) -> auto& { return c.defect.vortex_amplitude; }));

    k.push_back(number_key("convergence", "particles",
                           [](ScenarioConfig& c) -> auto& { return c.convergence.particles; }));
    k.push_back(
        number_key("convergence", "t_end", [](ScenarioConfig& c) -> auto& { return c.convergence.t_end; }));
    k.push_back(number_key("convergence", "steps_per_period",
                           [](ScenarioConfig& c) -> auto& { return c.convergence.steps_per_period; }));
    k.push_back(number_key("convergence", "ring_speed",
                           [](ScenarioConfig& c) -> auto& { return c.convergence.ring_speed; }));
    k.push_back(number_key("convergence", "vortex_amplitude",
                           [](ScenarioConfig& c) -> auto& { return c.convergence.vortex_amplitude; }));
    k.push_back(number_key("convergence", "orbit_dt",
                           [](ScenarioConfig& c) -> auto& { return c.convergence.orbit_dt; }));

    k.push_back(number_key("thresholds", "drift_rel",
                           [](ScenarioConfig& c) -> auto& { return c.thresholds.drift_rel; }));
    k.push_back(number_key("thresholds", "mu_drift",
                           [](ScenarioConfig& c) -> auto& { return c.thresholds.mu_drift; }));
    k.push_back(number_key("thresholds", "energy_drift",
                           [](ScenarioConfig& c) -> auto& { return c.thresholds.energy_drift; }));
    k.push_back(
        number_key("thresholds", "mass", [](ScenarioConfig& c) -> auto& { return c.thresholds.mass; }));
    k.push_back(number_key("thresholds", "defect_ratio_min",
                           [](ScenarioConfig& c) -> auto& { return c.thresholds.defect_ratio_min; }));
    k.push_back(number_key("thresholds", "defect_ratio_max",
                           [](ScenarioConfig& c) -> auto& { return c.thresholds.defect_ratio_max; }));
    k.push_back(number_key("thresholds", "convergence_ratio_min",
                           [](ScenarioConfig& c) -> auto& { return c.thresholds.convergence_ratio_min; }));
    k.push_back(number_key("thresholds", "convergence_ratio_max",
                           [](ScenarioConfig& c) -> auto& { return c.thresholds.convergence_ratio_max; }));
    return k;
  }();
  return table;
}

const Key* find_key(std::string_view section, std::string_view name) {
  for (const auto& k : keys()) {
    if (k.section == section && k.name == name) return &k;
  }
  return nullptr;
}

bool power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view to_string(Scenario s) {
  for (const auto& [value, name] : kNames) {
    if (value == s) return name;
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
  for (const auto& [value, n] : kNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> list = [] {
    std::vector<Scenario> v;
    for (const auto& [value, name] : kNames) v.push_back(value);
    return v;
  }();
  return list;
}

std::string_view describe(Scenario s) {
  switch (s) {
    case Scenario::exb_drift: return "full-orbit E x B drift against the drift velocity";
    case Scenario::gradb_drift: return "full-orbit grad-B drift against the drift velocity";
    case Scenario::mu_invariance: return "drift orbits in a static nonuniform field, magnetic moment drift";
    case Scenario::gc2d: return "2D guiding-center Kelvin-Helmholtz run with invariants";
    case Scenario::pic_run: return "full-kinetic PIC run of the steady-vortex family";
    case Scenario::defect_scan: return "Hilbert defect of F + eps f1 over the epsilon list";
    case Scenario::convergence: return "PIC marker displacement against drift orbits over the epsilon list";
  }
  return "";
}

ScenarioConfig default_config(Scenario s) {
  ScenarioConfig c;
  c.scenario = s;
  if (s == Scenario::gradb_drift) c.field.variant = fields::FieldVariant::linear_ramp;
  if (s == Scenario::mu_invariance) c.field.variant = fields::FieldVariant::periodic_bump;
  return c;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, const std::string& key, const std::string& rule) {
    if (!ok) errors.push_back(key + ": " + rule);
  };
  require(c.threads >= 1, "scenario.threads", "must be >= 1");
  require(power_of_two(c.domain.n) && c.domain.n >= 8, "domain.n", "must be a power of two >= 8");
  require(c.domain.length > 0.0, "domain.length", "must be > 0");
  require(c.field.b0 > c.field.alpha, "field.b0", "must exceed field.alpha");
  require(c.field.alpha > 0.0, "field.alpha", "must be > 0");
  require(c.field.amplitude >= 0.0 && c.field.amplitude < 1.0, "field.amplitude", "must lie in [0, 1)");
  require(c.epsilon.value > 0.0, "epsilon.value", "must be > 0");
  require(c.epsilon.list.size() >= 3, "epsilon.list", "needs at least 3 values");
  for (std::size_t i = 0; i < c.epsilon.list.size(); ++i) {
    if (!(c.epsilon.list[i] > 0.0)) {
      errors.push_back("epsilon.list: every value must be > 0");
      break;
    }
    if (i > 0 && !(c.epsilon.list[i] < c.epsilon.list[i - 1])) {
      errors.push_back("epsilon.list: values must be strictly decreasing");
      break;
    }
  }
  require(c.pic.particles >= 1, "pic.particles", "must be >= 1");
  require(c.pic.ds >= 0.0, "pic.ds", "must be >= 0");
  require(c.pic.steps_per_period >= 13, "pic.steps_per_period", "must be >= 13");
  require(c.pic.t_end > 0.0, "pic.t_end", "must be > 0");
  require(c.pic.output_every >= 1, "pic.output_every", "must be >= 1");
  require(c.pic.snapshot_every >= 0, "pic.snapshot_every", "must be >= 0");
  require(std::abs(c.pic.vortex_amplitude) < 1.0, "pic.vortex_amplitude", "must lie in (-1, 1)");
  require(c.pic.thermal_speed >= 0.0, "pic.thermal_speed", "must be >= 0");
  require(power_of_two(c.gc2d.n) && c.gc2d.n >= 8, "gc2d.n", "must be a power of two >= 8");
  require(c.gc2d.dt > 0.0, "gc2d.dt", "must be > 0");
  require(c.gc2d.t_end > 0.0, "gc2d.t_end", "must be > 0");
  require(c.gc2d.output_every >= 1, "gc2d.output_every", "must be >= 1");
  require(c.gc2d.mode > 0.0, "gc2d.mode", "must be > 0");
  require(c.orbit.w >= 0.0, "orbit.w", "must be >= 0");
  require(c.orbit.n_periods >= 1, "orbit.n_periods", "must be >= 1");
  require(c.orbit.steps_per_period >= 13, "orbit.steps_per_period", "must be >= 13");
  require(c.orbit.dt > 0.0, "orbit.dt", "must be > 0");
  require(c.orbit.t_end > 0.0, "orbit.t_end", "must be > 0");
  require(!c.orbit.states.empty(), "orbit.states", "needs at least one state");
  for (const auto& s : c.orbit.states) {
    if (!(s.w >= 0.0)) {
      errors.push_back("orbit.states: w must be >= 0");
      break;
    }
  }
  require(c.defect.n >= 8 && power_of_two(c.defect.n), "defect.n", "must be a power of two >= 8");
  require(c.defect.n_w >= 5, "defect.n_w", "must be >= 5");
  require(c.defect.w_max > 0.0, "defect.w_max", "must be > 0");
  require(c.defect.n_par >= 3 && c.defect.n_par % 2 == 1, "defect.n_par", "must be odd and >= 3");
  require(c.defect.par_max > 0.0, "defect.par_max", "must be > 0");
  require(c.defect.n_theta >= 4 && c.defect.n_theta % 2 == 0, "defect.n_theta",
          "must be even and >= 4");
  require(std::abs(c.defect.vortex_amplitude) < 0.5, "defect.vortex_amplitude", "must lie in (-0.5, 0.5)");
  require(c.convergence.particles >= 1, "convergence.particles", "must be >= 1");
  require(c.convergence.t_end > 0.0, "convergence.t_end", "must be > 0");
  require(c.convergence.steps_per_period >= 13, "convergence.steps_per_period", "must be >= 13");
  require(c.convergence.ring_speed >= 0.0, "convergence.ring_speed", "must be >= 0");
  require(std::abs(c.convergence.vortex_amplitude) < 0.5, "convergence.vortex_amplitude",
          "must lie in (-0.5, 0.5)");
  require(c.convergence.orbit_dt > 0.0, "convergence.orbit_dt", "must be > 0");
  const Thresholds& t = c.thresholds;
  require(t.drift_rel > 0.0, "thresholds.drift_rel", "must be > 0");
  require(t.mu_drift > 0.0, "thresholds.mu_drift", "must be > 0");
  require(t.energy_drift > 0.0, "thresholds.energy_drift", "must be > 0");
  require(t.mass > 0.0, "thresholds.mass", "must be > 0");
  require(t.defect_ratio_min < t.defect_ratio_max, "thresholds.defect_ratio_min",
          "must be below thresholds.defect_ratio_max");
  require(t.convergence_ratio_min < t.convergence_ratio_max, "thresholds.convergence_ratio_min",
          "must be below thresholds.convergence_ratio_max");
  return errors;
}

ScenarioConfig parse_config(std::string_view text) {
  std::vector<std::string> errors;
  struct Entry {
    const Key* key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::map<std::string, int> seen;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "malformed section header '" + std::string(line) + "'");
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (const auto& k : keys()) known = known || k.section == section;
      if (!known) errors.push_back(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected 'key = value', got '" + std::string(line) + "'");
      continue;
    }
    const std::string name(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (section.empty()) {
      errors.push_back(where + "key '" + name + "' outside any section");
      continue;
    }
    const std::string full = section + "." + name;
    const Key* key = find_key(section, name);
    if (!key) {
      errors.push_back(where + "unknown key '" + full + "'");
      continue;
    }
    if (const auto it = seen.find(full); it != seen.end()) {
      errors.push_back(where + "duplicate key '" + full + "' (first set on line " +
                       std::to_string(it->second) + ")");
      continue;
    }
    seen.emplace(full, line_no);
    entries.push_back({key, value, line_no});
  }

  ScenarioConfig config;
  if (!seen.count("scenario.name")) {
    errors.push_back("scenario.name: missing required key");
  } else {
    for (const auto& e : entries) {
      if (e.key->section == "scenario" && e.key->name == "name") {
        const auto s = scenario_from_string(e.value);
        if (s) config = default_config(*s);
      }
    }
  }
  for (const auto& e : entries) {
    const std::string err = e.key->set(config, e.value);
    if (!err.empty()) {
      errors.push_back("line " + std::to_string(e.line) + ": " + e.key->section + "." +
                       e.key->name + ": " + err);
    }
  }
  for (auto& v : validate(config)) errors.push_back(std::move(v));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return config;
}

std::string serialize(const ScenarioConfig& config) {
  std::ostringstream os;
  std::string section;
  for (const auto& k : keys()) {
    if (k.section != section) {
      if (!section.empty()) os << '\n';
      section = k.section;
      os << '[' << section << "]\n";
    }
    os << k.name << " = " << k.get(config) << '\n';
  }
  return os.str();
}

}  // namespace driftkin::config
