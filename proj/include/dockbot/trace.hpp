#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dockbot/composite.hpp"
#include "dockbot/kinematics.hpp"

namespace dockbot {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RobotSample {
  Pose pose;
  Twist commanded;  // body frame
  Twist actual;     // body frame, from forward kinematics of the wheel speeds actually applied
  double heading_error = kNaN;  // rad, relative to the path's reference heading
};

struct TraceSample {
  double t = 0.0;
  std::string_view phase;  // static label
  std::array<RobotSample, 2> robots;
  double object_ax = kNaN;  // m/s^2, world frame
  double object_ay = kNaN;
};

struct PhaseEvent {
  double t = 0.0;
  std::string from;
  std::string to;
  std::string reason;  // failure reason, if any
};

struct RunTrace {
  std::string mode;
  std::uint64_t seed = 0;
  double dt = 0.0;
  int robot_count = 2;
  std::vector<TraceSample> samples;
  std::vector<PhaseEvent> events;

  bool success = false;
  std::string outcome;  // "completed", "docked", or a failure reason
  std::optional<double> completion_time;
  std::optional<CompositeBody> composite;
  double final_position_error = kNaN;  // m, tracked point to final waypoint
  double max_module_distance_drift = kNaN;  // m, docked transport only
  double max_pin_residual = kNaN;          // rad/s, docked transport only

  // Free-motion twist produced by the lock wheel command, averaged over lock
  // steps, and its mean deviation from (A, 0, spin).
  std::optional<Twist> lock_mean_twist;
  double lock_mean_deviation = kNaN;

  // Docking setup actually used (dock_only).
  double setup_deviation = kNaN;
  double setup_distance = kNaN;
};

}  // namespace dockbot
