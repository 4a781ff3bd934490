#include "dockbot/path.hpp"

#include <algorithm>
#include <cmath>

#include "dockbot/errors.hpp"

namespace dockbot {

void PathSpec::validate() const {
  if (waypoints.size() < 2) {
    throw InvalidInputError("path needs at least two waypoints");
  }
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if ((waypoints[i + 1] - waypoints[i]).norm() == 0.0) {
      throw InvalidInputError("consecutive waypoints must be distinct");
    }
  }
  if (!(forward_speed > 0.0 && lateral_speed > 0.0)) {
    throw InvalidInputError("path speeds must be > 0");
  }
}

double PathSpec::segment_speed(std::size_t segment) const {
  const Vec2 d = waypoints.at(segment + 1) - waypoints.at(segment);
  const double along = std::abs(d.dot(Vec2(std::cos(forward_axis), std::sin(forward_axis))));
  return along >= std::cos(std::numbers::pi / 4.0) * d.norm() ? forward_speed : lateral_speed;
}

PathSpec PathSpec::shifted(const Vec2& offset) const {
  PathSpec out = *this;
  for (auto& w : out.waypoints) {
    w += offset;
  }
  return out;
}

PathSpec PathSpec::l_shape(const Vec2& start, double forward_leg, double lateral_leg, double forward_axis) {
  const Vec2 f(std::cos(forward_axis), std::sin(forward_axis));
  const Vec2 l(-f.y(), f.x());
  PathSpec p;
  p.forward_axis = forward_axis;
  p.waypoints = {start, start + forward_leg * f, start + forward_leg * f + lateral_leg * l};
  return p;
}

void TrackingGains::validate() const {
  for (double v : {k_along, k_cross, k_heading, max_turn_rate, waypoint_tolerance, max_accel, max_angular_accel}) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidInputError("tracking gains and limits must be > 0");
    }
  }
}

Twist follow_path(const Pose& pose, const PathSpec& path, PathTracker& tracker, const TrackingGains& gains,
                  double speed_scale) {
  const Vec2 p = pose.position();
  while (!tracker.finished) {
    const Vec2 end = path.waypoints[tracker.segment + 1];
    if ((end - p).norm() > gains.waypoint_tolerance) {
      break;
    }
    if (++tracker.segment >= path.segment_count()) {
      tracker.finished = true;
      tracker.segment = path.segment_count() - 1;
    }
  }
  if (tracker.finished) {
    return Twist::world(0.0, 0.0, 0.0);
  }

  const Vec2 start = path.waypoints[tracker.segment];
  const Vec2 end = path.waypoints[tracker.segment + 1];
  const Vec2 dir = (end - start).normalized();
  const Vec2 normal(-dir.y(), dir.x());
  const double speed = path.segment_speed(tracker.segment);
  const double cap = speed * std::clamp(speed_scale, 0.0, 1.0);

  const double remaining = (end - p).dot(dir);
  const double cross = (p - start).dot(normal);
  const double v_along = std::clamp(gains.k_along * remaining, -cap, cap);
  const double v_cross = std::clamp(-gains.k_cross * cross, -speed, speed);
  Vec2 v = v_along * dir + v_cross * normal;
  if (v.norm() > speed) {
    v *= speed / v.norm();
  }

  double omega = 0.0;
  if (path.hold_heading) {
    omega = std::clamp(-gains.k_heading * wrap_angle(pose.theta - tracker.reference_heading), -gains.max_turn_rate,
                       gains.max_turn_rate);
  }
  return Twist::world(v.x(), v.y(), omega);
}

Twist RateLimiter::apply(const Twist& target, double dt) {
  if (target.frame != Frame::world) {
    throw FrameError("RateLimiter works on world-frame twists");
  }
  Vec2 dv = target.linear() - last_.linear();
  const double max_dv = max_accel_ * dt;
  if (dv.norm() > max_dv) {
    dv *= max_dv / dv.norm();
  }
  const double dw = std::clamp(target.omega - last_.omega, -max_angular_accel_ * dt, max_angular_accel_ * dt);
  const Vec2 v = last_.linear() + dv;
  last_ = Twist::world(v.x(), v.y(), last_.omega + dw);
  return last_;
}

}  // namespace dockbot
