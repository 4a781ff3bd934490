#include "dockbot/scenario.hpp"

#include <cmath>
#include <string>

#include "dockbot/errors.hpp"

namespace dockbot {

namespace {

void require(bool ok, const char* what) {
  if (!ok) {
    throw InvalidInputError(what);
  }
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::dock_only:
      return "dock_only";
    case Mode::docked_transport:
      return "docked_transport";
    case Mode::cooperating_transport:
      return "cooperating_transport";
    case Mode::track_single:
      return "track_single";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::dock_only, Mode::docked_transport, Mode::cooperating_transport, Mode::track_single}) {
    if (to_string(m) == name) {
      return m;
    }
  }
  throw InvalidInputError("unknown mode '" + std::string(name) + "'");
}

void NoiseConfig::validate() const {
  require(std::isfinite(actuation_relative) && actuation_relative >= 0.0, "actuation_relative must be >= 0");
  require(std::isfinite(actuation_floor) && actuation_floor >= 0.0, "actuation_floor must be >= 0");
  require(std::isfinite(actuation_correlation_time) && actuation_correlation_time >= 0.0,
          "actuation_correlation_time must be >= 0");
}

NoiseConfig NoiseConfig::none() {
  NoiseConfig n;
  n.actuation_relative = 0.0;
  n.actuation_floor = 0.0;
  n.perception = false;
  return n;
}

void DockSetup::validate() const {
  require(std::isfinite(female_pose.x) && std::isfinite(female_pose.y) && std::isfinite(female_pose.theta),
          "female_pose must be finite");
  require(std::isfinite(distance) && distance > 0.0, "dock distance must be > 0");
  require(std::isfinite(distance_jitter) && distance_jitter >= 0.0 && distance_jitter < distance,
          "distance_jitter must lie in [0, distance)");
  require(std::isfinite(deviation) && deviation >= 0.0 && deviation < std::numbers::pi / 2.0,
          "deviation must lie in [0, 90 deg)");
  require(!active_heading || std::isfinite(*active_heading), "active_heading must be finite");
  require(!side || *side == 1 || *side == -1, "side must be +1 or -1");
}

void ContactModel::validate() const {
  require(std::isfinite(centering_rate) && centering_rate >= 0.0, "centering_rate must be >= 0");
  require(std::isfinite(compliance) && compliance >= 0.0 && compliance <= 1.0, "compliance must lie in [0, 1]");
}

void CooperationConfig::validate() const {
  require(std::isfinite(grasp_force_limit) && grasp_force_limit > 0.0, "grasp_force_limit must be > 0");
  require(std::isfinite(force_filter_time) && force_filter_time > 0.0, "force_filter_time must be > 0");
}

void TransportConfig::validate() const {
  require(std::isfinite(object_forward_offset), "object_forward_offset must be finite");
  require(std::isfinite(docked_stiffness_scale) && docked_stiffness_scale > 0.0,
          "docked_stiffness_scale must be > 0");
}

CameraModel Scenario::active_camera() const { return camera ? *camera : CameraModel::over_dock_wheel(robots[0]); }

void Scenario::validate() const {
  require(std::isfinite(dt) && dt > 0.0 && dt <= 0.1, "dt must lie in (0, 0.1]");
  require(std::isfinite(max_time) && max_time > dt, "max_time must exceed dt");
  for (const auto& g : robots) {
    g.validate();
  }
  active_camera().validate();
  lighting_table.validate();
  require(std::isfinite(perception.deviation_limit) && perception.deviation_limit > 0.0,
          "deviation_limit must be > 0");
  docking.validate();
  dock_setup.validate();
  contact.validate();
  path.validate();
  tracking.validate();
  coupling.validate();
  cooperation.validate();
  transport.validate();
  noise.validate();
}

}  // namespace dockbot
