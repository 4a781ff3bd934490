#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "dockbot/docking.hpp"
#include "dockbot/kinematics.hpp"
#include "dockbot/object.hpp"
#include "dockbot/path.hpp"
#include "dockbot/perception.hpp"

namespace dockbot {

enum class Mode { dock_only, docked_transport, cooperating_transport, track_single };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

/// Wheel-speed disturbance: sigma = relative * |command| + floor, shaped by a
/// critically damped second-order filter with the given correlation time.
struct NoiseConfig {
  double actuation_relative = 0.02;
  double actuation_floor = 0.01;            // rad/s
  double actuation_correlation_time = 0.05;  // s
  bool perception = true;                   // false zeroes the observation noise of every lighting level

  void validate() const;
  static NoiseConfig none();
};

/// Initial placement for dock_only. Robot b (tag carrier, female hub) sits at
/// `female_pose`; robot a (camera, male hub) is placed on a ray from b's tag
/// at `deviation` from the tag normal and `distance` +- `distance_jitter`.
struct DockSetup {
  Pose female_pose;
  double distance = 0.8;         // m
  double distance_jitter = 0.1;  // m, uniform half-width
  double deviation = deg_to_rad(30.0);
  std::optional<double> active_heading;  // random when empty
  std::optional<int> side;                // +1 / -1 side of the normal; random when empty

  void validate() const;
};

/// Mechanical behavior of the hub interface while locking.
struct ContactModel {
  double centering_rate = 4.0;  // 1/s, bevel self-alignment while pressed
  double compliance = 0.01;     // fraction of the free lateral hub velocity that leaks through the bevel

  void validate() const;
};

struct CooperationConfig {
  /// Each robot scales its along-track speed by min(1, limit / drag), where
  /// drag is its own low-passed grasp reaction opposing its path direction.
  double grasp_force_limit = 0.1;  // N
  double force_filter_time = 0.2;  // s

  void validate() const;
};

struct TransportConfig {
  double object_forward_offset = 0.25;  // m, object center ahead of the pair, across the docking axis
  double docked_stiffness_scale = 10.0; // grasp stiffness multiplier when carried by the docked body

  void validate() const;
};

struct Scenario {
  Mode mode = Mode::dock_only;
  std::uint64_t seed = 1;
  double dt = 0.005;
  double max_time = 240.0;

  std::array<RobotGeometry, 2> robots{};  // a = active/male, b = tag carrier/female
  std::optional<CameraModel> camera;       // defaults to CameraModel::over_dock_wheel(robots[0])
  Lighting lighting = Lighting::bright;
  LightingTable lighting_table;
  PerceptionParams perception;
  DockingParams docking;
  DockSetup dock_setup;
  ContactModel contact;

  PathSpec path = PathSpec::l_shape(Vec2(0.0, 0.0));
  TrackingGains tracking;
  ObjectCoupling coupling;
  CooperationConfig cooperation;
  TransportConfig transport;
  NoiseConfig noise;

  CameraModel active_camera() const;
  void validate() const;
};

}  // namespace dockbot
