#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "dockbot/errors.hpp"
#include "dockbot/scenario_io.hpp"

using namespace dockbot;

namespace {

const std::string kMinimal = R"({
  "mode": "dock_only",
  "robots": [ { "wheel_radius": 0.05, "center_offset": 0.12, "mass": 4.0, "inertia": 0.06 } ]
})";

ConfigError config_error(const std::string& text, const std::vector<Override>& o = {}) {
  try {
    parse_scenario(text, o);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for " << text;
  return ConfigError("", "");
}

}  // namespace

TEST(ScenarioIo, MinimalDocumentUsesDefaults) {
  const Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.mode, Mode::dock_only);
  EXPECT_EQ(s.robots[0].wheel_radius, 0.05);
  EXPECT_EQ(s.robots[1].center_offset, 0.12);  // single geometry shared by both robots
  EXPECT_EQ(s.lighting, Lighting::bright);
  EXPECT_EQ(s.dt, Scenario{}.dt);
}

TEST(ScenarioIo, MissingWheelRadiusNamesField) {
  const ConfigError e = config_error(R"({"robots": [{"center_offset": 0.12, "mass": 4, "inertia": 0.06}]})");
  EXPECT_EQ(e.field(), "/robots/0/wheel_radius");
  EXPECT_NE(std::string(e.what()).find("wheel_radius"), std::string::npos);
}

TEST(ScenarioIo, RejectsUnknownKeys) {
  const ConfigError e = config_error(R"({"robots": [{"wheel_radius": 0.05, "center_offset": 0.12, "mass": 4,
    "inertia": 0.06}], "docking": {"k_lateal": 1.0}})");
  EXPECT_EQ(e.field(), "/docking/k_lateal");
}

TEST(ScenarioIo, RejectsBadValues) {
  EXPECT_EQ(config_error(kMinimal, {{"dt", "-1"}}).field(), "/");
  EXPECT_EQ(config_error(kMinimal, {{"lighting", "dusk"}}).field(), "/lighting");
  EXPECT_EQ(config_error(kMinimal, {{"mode", "fly"}}).field(), "/mode");
  EXPECT_EQ(config_error(kMinimal, {{"robots.0.mass", "\"heavy\""}}).field(), "/robots/0/mass");
  EXPECT_EQ(config_error("{not json").field(), "");
}

TEST(ScenarioIo, OverridesUseDottedPaths) {
  const Scenario s = parse_scenario(kMinimal, {{"docking.k_lateral", "2.5"},
                                               {"lighting", "low"},
                                               {"noise.perception", "false"},
                                               {"docking.lock_law", "wheel_equation"}});
  EXPECT_EQ(s.docking.k_lateral, 2.5);
  EXPECT_EQ(s.lighting, Lighting::low);
  EXPECT_FALSE(s.noise.perception);
  EXPECT_EQ(s.docking.lock_law, LockLaw::wheel_equation);
}

TEST(ScenarioIo, DegreeSuffixConverts) {
  const Scenario s = parse_scenario(kMinimal, {{"dock_setup.deviation", "45deg"}});
  EXPECT_NEAR(s.dock_setup.deviation, std::atan(1.0), 1e-15);
}

TEST(ScenarioIo, PathForms) {
  const Scenario l = parse_scenario(kMinimal, {{"path.forward_leg", "1.0"}, {"path.lateral_leg", "0.5"}});
  ASSERT_EQ(l.path.waypoints.size(), 3u);
  EXPECT_NEAR(l.path.waypoints[2].y(), 0.5, 1e-15);
  const Scenario w = parse_scenario(kMinimal, {{"path.waypoints", "[[0,0],[1,1]]"}});
  EXPECT_EQ(w.path.waypoints.size(), 2u);
}

TEST(ScenarioIo, ParseOverrideAndSweep) {
  const Override o = parse_override("a.b=c=d");
  EXPECT_EQ(o.key, "a.b");
  EXPECT_EQ(o.value, "c=d");
  EXPECT_THROW(parse_override("novalue"), ConfigError);
  const auto sw = parse_sweep("lighting=bright,low");
  ASSERT_EQ(sw.size(), 2u);
  EXPECT_EQ(sw[1].key, "lighting");
  EXPECT_EQ(sw[1].value, "low");
  EXPECT_THROW(parse_sweep("lighting=bright,,low"), ConfigError);
}

TEST(ScenarioIo, BundledScenariosLoad) {
  for (const char* name : {"dock_only", "docked_transport", "cooperating_transport", "track_single"}) {
    const Scenario s = load_scenario(std::string(DOCKBOT_SCENARIO_DIR) + "/" + name + ".json");
    EXPECT_EQ(to_string(s.mode), name);
  }
  EXPECT_THROW(load_scenario(std::string(DOCKBOT_SCENARIO_DIR) + "/missing.json"), ConfigError);
}
