#pragma once

#include <cstddef>
#include <vector>

#include "dockbot/kinematics.hpp"

namespace dockbot {

/// Waypoint path. A segment counts as "forward" when it lies within 45 deg of
/// `forward_axis` (either direction) and as "lateral" otherwise; each kind has
/// its own speed.
struct PathSpec {
  std::vector<Vec2> waypoints;
  bool hold_heading = true;
  double forward_speed = 0.1;   // m/s
  double lateral_speed = 0.05;  // m/s
  double forward_axis = 0.0;    // world direction, rad

  void validate() const;
  std::size_t segment_count() const { return waypoints.empty() ? 0 : waypoints.size() - 1; }
  double segment_speed(std::size_t segment) const;
  PathSpec shifted(const Vec2& offset) const;

  /// Forward leg along `forward_axis`, then a 90 deg turn to the left.
  static PathSpec l_shape(const Vec2& start, double forward_leg = 2.0, double lateral_leg = 1.2,
                          double forward_axis = 0.0);
};

struct TrackingGains {
  double k_along = 0.5;              // 1/s
  double k_cross = 1.0;              // 1/s
  double k_heading = 1.0;            // 1/s
  double max_turn_rate = 0.5;        // rad/s
  double waypoint_tolerance = 0.02;  // m
  double max_accel = 0.1;            // m/s^2, command slew limit
  double max_angular_accel = 1.0;    // rad/s^2

  void validate() const;
};

struct PathTracker {
  std::size_t segment = 0;
  bool finished = false;
  double reference_heading = 0.0;
};

/// Proportional path-following law. Returns a world-frame twist and advances
/// `tracker` past waypoints reached within the tolerance. `speed_scale` in
/// (0, 1] scales the along-track speed limit.
Twist follow_path(const Pose& pose, const PathSpec& path, PathTracker& tracker, const TrackingGains& gains,
                  double speed_scale = 1.0);

/// Bounds the change of a world-frame velocity command per step.
class RateLimiter {
 public:
  RateLimiter(double max_accel, double max_angular_accel)
      : max_accel_(max_accel), max_angular_accel_(max_angular_accel) {}

  Twist apply(const Twist& target, double dt);
  const Twist& last() const { return last_; }

 private:
  double max_accel_;
  double max_angular_accel_;
  Twist last_ = Twist::world(0.0, 0.0, 0.0);
};

}  // namespace dockbot
