#include "doctest.h"

#include <algorithm>
#include <string>

#include "driftkin/cli/run.hpp"
#include "driftkin/config/scenario.hpp"
#include "driftkin/error.hpp"

using namespace driftkin;
using namespace driftkin::config;

namespace {

std::vector<std::string> errors_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.messages();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(),
                     [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("a minimal config takes every default") {
  const auto c = parse_config("[scenario]\nname = gc2d\n");
  CHECK(c == default_config(Scenario::gc2d));
  CHECK(c.gc2d.n == 128);
  CHECK(c.epsilon.list == std::vector<double>{0.1, 0.05, 0.025});
}

TEST_CASE("comments, blank lines and overrides") {
  const auto c = parse_config(
      "# header\n\n[scenario]\nname = pic-run\nseed = 7\n\n[epsilon]\nvalue = 0.02 # trailing\n"
      "list = 0.2, 0.1, 0.05, 0.025\n[field]\nvariant = linear-ramp\ngrad = 0.05, -0.02\n");
  CHECK(c.scenario == Scenario::pic_run);
  CHECK(c.seed == 7);
  CHECK(c.epsilon.value == 0.02);
  CHECK(c.epsilon.list.size() == 4);
  CHECK(c.field.variant == fields::FieldVariant::linear_ramp);
  CHECK(c.field.grad == Vec2{0.05, -0.02});
}

TEST_CASE("invalid values name their key") {
  const auto e = errors_of("[scenario]\nname = exb-drift\n[epsilon]\nvalue = -0.1\n");
  REQUIRE(e.size() == 1);
  CHECK(mentions(e, "epsilon.value"));
  CHECK(mentions(errors_of("[scenario]\nname = gc2d\n[domain]\nn = 48\n"), "domain.n"));
  CHECK(mentions(errors_of("[scenario]\nname = gc2d\n[epsilon]\nlist = 0.1, 0.2, 0.05\n"), "epsilon.list"));
}

TEST_CASE("structural errors carry line numbers") {
  auto e = errors_of("[scenario]\nname = gc2d\n[gc2d]\ndt = 0.1\ndt = 0.2\n");
  REQUIRE(e.size() == 1);
  CHECK(mentions(e, "line 5"));
  CHECK(mentions(e, "line 4"));
  CHECK(mentions(e, "gc2d.dt"));

  e = errors_of("[scenario]\nname = gc2d\n[gc2d]\nsteps = 3\n");
  CHECK(mentions(e, "line 4"));
  CHECK(mentions(e, "unknown key"));
  CHECK(mentions(errors_of("[scenario]\nname = gc2d\n[plasma]\n"), "unknown section"));
  CHECK(mentions(errors_of("seed = 1\n[scenario]\nname = gc2d\n"), "outside any section"));
  CHECK(mentions(errors_of("[scenario]\nname = gc2d\njunk\n"), "line 3"));
  CHECK(mentions(errors_of("[scenario]\nname = warp-drive\n"), "unknown scenario"));
  CHECK(mentions(errors_of("[gc2d]\ndt = 0.1\n"), "scenario.name"));
}

TEST_CASE("every error is reported at once") {
  const auto e = errors_of("[scenario]\nname = gc2d\nthreads = 0\n[gc2d]\nn = 100\ndt = 0\n[orbit]\nbogus = 1\n");
  CHECK(e.size() == 4);
  CHECK(mentions(e, "scenario.threads"));
  CHECK(mentions(e, "gc2d.n"));
  CHECK(mentions(e, "gc2d.dt"));
  CHECK(mentions(e, "bogus"));
}

TEST_CASE("serialize and parse round trip for every scenario") {
  for (Scenario s : all_scenarios()) {
    CAPTURE(to_string(s));
    auto c = default_config(s);
    c.seed = 99;
    c.epsilon.value = 0.1 / 3.0;
    c.orbit.states.push_back({{0.1, 0.7}, 2.0 / 3.0});
    c.orbit.potential = FrozenPotential::zero;
    const auto text = serialize(c);
    const auto back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
    CHECK(scenario_from_string(to_string(s)) == s);
    CHECK(!describe(s).empty());
  }
  CHECK(!scenario_from_string("nope"));
}

TEST_CASE("defaults validate") {
  for (Scenario s : all_scenarios()) CHECK(validate(default_config(s)).empty());
  CHECK(default_config(Scenario::gradb_drift).field.variant == fields::FieldVariant::linear_ramp);
  CHECK(default_config(Scenario::mu_invariance).field.variant == fields::FieldVariant::periodic_bump);
}

TEST_CASE("field sections build the matching model") {
  FieldSpec spec;
  spec.variant = fields::FieldVariant::periodic_bump;
  spec.b0 = 1.5;
  spec.amplitude = 0.2;
  const auto m = cli::make_field(spec, kTwoPi);
  CHECK(fields::eval_b(m, 0.0, {kPi, kPi}) == doctest::Approx(1.7).epsilon(1e-14));
  CHECK(fields::eval_b(m, 0.0, {0.3, 0.4}) == doctest::Approx(fields::eval_b(m, 0.0, {0.3 + kTwoPi, 0.4})).epsilon(1e-14));
  spec.variant = fields::FieldVariant::linear_ramp;
  spec.b0 = 1.0;
  spec.grad = {0.1, 0.0};
  CHECK(fields::eval_b(cli::make_field(spec, kTwoPi), 0.0, {2.0, 0.0}) == doctest::Approx(1.2).epsilon(1e-14));
}
