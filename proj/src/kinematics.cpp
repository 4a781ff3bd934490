#include "dockbot/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "dockbot/errors.hpp"

namespace dockbot {

namespace {

constexpr double kPi = std::numbers::pi;

void require_frame(const Twist& t, Frame expected, const char* op) {
  if (t.frame != expected) {
    throw FrameError(std::string(op) + ": expected a " +
                     (expected == Frame::body ? "body" : "world") + "-frame twist");
  }
}

}  // namespace

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) {
    w += 2.0 * kPi;
  }
  return w;
}

Vec2 Pose::rotate(const Vec2& local) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * local.x() - s * local.y(), s * local.x() + c * local.y()};
}

Vec2 Pose::transform(const Vec2& local) const { return position() + rotate(local); }

Vec2 Pose::inverse_transform(const Vec2& parent) const {
  const Vec2 d = parent - position();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y()};
}

Pose compose_poses(const Pose& parent, const Pose& child) {
  const Vec2 p = parent.transform(child.position());
  return {p.x(), p.y(), parent.theta + child.theta};
}

Pose relative_pose(const Pose& reference, const Pose& target) {
  const Vec2 p = reference.inverse_transform(target.position());
  return {p.x(), p.y(), target.theta - reference.theta};
}

bool Twist::is_finite() const {
  return std::isfinite(vx) && std::isfinite(vy) && std::isfinite(omega);
}

double WheelSpeeds::max_abs() const {
  return std::max({std::abs(phi[0]), std::abs(phi[1]), std::abs(phi[2])});
}

bool WheelSpeeds::is_finite() const {
  return std::all_of(phi.begin(), phi.end(), [](double v) { return std::isfinite(v); });
}

void RobotGeometry::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidInputError(std::string(name) + " must be finite and > 0");
    }
  };
  positive(wheel_radius, "wheel_radius");
  positive(center_offset, "center_offset");
  positive(mass, "mass");
  positive(body_inertia, "body_inertia");
  positive(max_wheel_speed, "max_wheel_speed");
  if (!(std::isfinite(hub_protrusion) && hub_protrusion >= 0.0)) {
    throw InvalidInputError("hub_protrusion must be finite and >= 0");
  }
  for (double a : mount_angles) {
    if (!std::isfinite(a)) {
      throw InvalidInputError("mount angles must be finite");
    }
  }
  if (dock_wheel_index < 1 || dock_wheel_index > 3) {
    throw InvalidInputError("dock_wheel_index must be 1, 2 or 3");
  }
  if (std::abs(kinematic_matrix().determinant()) < kMinKinematicDeterminant) {
    throw GeometryError("kinematic matrix is singular for the given mount angles");
  }
}

Eigen::Matrix3d RobotGeometry::kinematic_matrix() const {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    const double a = mount_angles[static_cast<std::size_t>(i)];
    m(i, 0) = -std::sin(a);
    m(i, 1) = std::cos(a);
    m(i, 2) = center_offset;
  }
  return m;
}

Vec2 RobotGeometry::hub_center() const {
  const double a = dock_axis_angle();
  const double reach = center_offset + hub_protrusion;
  return {reach * std::cos(a), reach * std::sin(a)};
}

WheelSpeeds inverse_kinematics(const Twist& body_twist, const RobotGeometry& geom) {
  require_frame(body_twist, Frame::body, "inverse_kinematics");
  if (!body_twist.is_finite()) {
    throw InvalidInputError("inverse_kinematics: non-finite twist");
  }
  WheelSpeeds out;
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = geom.mount_angles[i];
    out[i] = (-std::sin(a) * body_twist.vx + std::cos(a) * body_twist.vy +
              geom.center_offset * body_twist.omega) /
             geom.wheel_radius;
  }
  return out;
}

Twist forward_kinematics(const WheelSpeeds& wheels, const RobotGeometry& geom) {
  if (!wheels.is_finite()) {
    throw InvalidInputError("forward_kinematics: non-finite wheel speeds");
  }
  const Eigen::Matrix3d m = geom.kinematic_matrix();
  const double det = m.determinant();
  if (std::abs(det) < kMinKinematicDeterminant) {
    throw GeometryError("forward_kinematics: singular kinematic matrix");
  }
  // Eigen's fixed-size 3x3 inverse is the closed-form cofactor expansion.
  const Eigen::Vector3d rates(wheels[0], wheels[1], wheels[2]);
  const Eigen::Vector3d q = m.inverse() * (geom.wheel_radius * rates);
  return Twist::body(q(0), q(1), q(2));
}

WheelModel::WheelModel(const RobotGeometry& geom) {
  geom.validate();
  const Eigen::Matrix3d m = geom.kinematic_matrix();
  to_wheels_ = m / geom.wheel_radius;
  to_twist_ = m.inverse() * geom.wheel_radius;
}

WheelSpeeds WheelModel::inverse(const Twist& body_twist) const {
  require_frame(body_twist, Frame::body, "WheelModel::inverse");
  const Eigen::Vector3d w = to_wheels_ * Eigen::Vector3d(body_twist.vx, body_twist.vy, body_twist.omega);
  return WheelSpeeds{{w(0), w(1), w(2)}};
}

Twist WheelModel::forward(const WheelSpeeds& wheels) const {
  const Eigen::Vector3d q = to_twist_ * Eigen::Vector3d(wheels[0], wheels[1], wheels[2]);
  return Twist::body(q(0), q(1), q(2));
}

Twist body_to_world(const Twist& body_twist, const Pose& pose) {
  require_frame(body_twist, Frame::body, "body_to_world");
  const Vec2 v = pose.rotate(body_twist.linear());
  return Twist::world(v.x(), v.y(), body_twist.omega);
}

Twist world_to_body(const Twist& world_twist, const Pose& pose) {
  require_frame(world_twist, Frame::world, "world_to_body");
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  return Twist::body(c * world_twist.vx + s * world_twist.vy,
                     -s * world_twist.vx + c * world_twist.vy, world_twist.omega);
}

WheelSpeeds saturate(const WheelSpeeds& wheels, double max_speed) {
  const double peak = wheels.max_abs();
  if (peak <= max_speed || peak == 0.0) {
    return wheels;
  }
  const double k = max_speed / peak;
  WheelSpeeds out = wheels;
  for (auto& v : out.phi) {
    v *= k;
  }
  return out;
}

Pose integrate_semi_implicit(const Pose& pose, const Twist& body_twist, double dt) {
  require_frame(body_twist, Frame::body, "integrate_semi_implicit");
  Pose next = pose;
  next.theta = wrap_angle(pose.theta + body_twist.omega * dt);
  const Vec2 v = next.rotate(body_twist.linear());
  next.x += v.x() * dt;
  next.y += v.y() * dt;
  return next;
}

Pose integrate_exact(const Pose& pose, const Twist& body_twist, double dt) {
  require_frame(body_twist, Frame::body, "integrate_exact");
  const double dth = body_twist.omega * dt;
  Vec2 local;
  if (std::abs(dth) < 1e-12) {
    local = body_twist.linear() * dt;
  } else {
    const double s = std::sin(dth);
    const double c = std::cos(dth);
    const double w = body_twist.omega;
    local = {(body_twist.vx * s + body_twist.vy * (c - 1.0)) / w,
             (body_twist.vx * (1.0 - c) + body_twist.vy * s) / w};
  }
  const Vec2 p = pose.transform(local);
  return {p.x(), p.y(), pose.theta + dth};
}

}  // namespace dockbot
