#include "dockbot/composite.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "dockbot/errors.hpp"

namespace dockbot {

MassProperties combine_mass_properties(std::span<const PointBody> bodies) {
  MassProperties out;
  Vec2 weighted(0.0, 0.0);
  for (const auto& b : bodies) {
    if (!(b.mass > 0.0) || !(b.inertia >= 0.0)) {
      throw InvalidInputError("bodies need mass > 0 and inertia >= 0");
    }
    out.mass += b.mass;
    weighted += b.mass * b.position;
  }
  if (bodies.empty()) {
    throw InvalidInputError("no bodies to combine");
  }
  out.center_of_mass = weighted / out.mass;
  for (const auto& b : bodies) {
    const double d = (b.position - out.center_of_mass).norm();
    out.inertia += b.inertia + b.mass * d * d;
  }
  return out;
}

Vec2 hub_world_position(const Pose& pose, const RobotGeometry& geom) {
  return pose.transform(geom.hub_center());
}

Pose CompositeBody::module_pose(const Pose& composite_world, int i) const {
  return compose_poses(composite_world, module_in_frame.at(static_cast<std::size_t>(i)));
}

CompositeBody compose(const RobotGeometry& geom_a, const Pose& pose_a, const RobotGeometry& geom_b,
                      const Pose& pose_b, double contact_tolerance) {
  geom_a.validate();
  geom_b.validate();
  const double hub_gap = (hub_world_position(pose_a, geom_a) - hub_world_position(pose_b, geom_b)).norm();
  if (hub_gap > contact_tolerance) {
    throw CompositionError("modules are not docked: hub faces are " + std::to_string(hub_gap) + " m apart");
  }
  const Vec2 axis = pose_b.position() - pose_a.position();
  if (axis.norm() == 0.0) {
    throw CompositionError("module centers coincide");
  }

  const std::array<PointBody, 2> parts{PointBody{geom_a.mass, geom_a.body_inertia, pose_a.position()},
                                       PointBody{geom_b.mass, geom_b.body_inertia, pose_b.position()}};
  const MassProperties mp = combine_mass_properties(parts);

  CompositeBody body;
  body.mass = mp.mass;
  body.inertia = mp.inertia;
  body.docking_axis = axis.normalized();
  body.frame = Pose(mp.center_of_mass.x(), mp.center_of_mass.y(), std::atan2(axis.y(), axis.x()));
  body.module_in_frame = {relative_pose(body.frame, pose_a), relative_pose(body.frame, pose_b)};
  return body;
}

Pose docked_partner_pose(const RobotGeometry& geom_a, const Pose& pose_a, const RobotGeometry& geom_b) {
  const Vec2 hub = hub_world_position(pose_a, geom_a);
  const double axis_b = pose_a.theta + geom_a.dock_axis_angle() + std::numbers::pi;
  const double theta_b = axis_b - geom_b.dock_axis_angle();
  const Pose oriented(0.0, 0.0, theta_b);
  const Vec2 center = hub - oriented.rotate(geom_b.hub_center());
  return {center.x(), center.y(), theta_b};
}

std::array<Twist, 2> module_twists(const Twist& composite_twist, const CompositeBody& body) {
  if (composite_twist.frame != Frame::body) {
    throw FrameError("module_twists: composite twist must be in the composite body frame");
  }
  std::array<Twist, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    const Pose& m = body.module_in_frame[i];
    const double w = composite_twist.omega;
    const Vec2 v = composite_twist.linear() + w * Vec2(-m.y, m.x);
    const double c = std::cos(m.theta);
    const double s = std::sin(m.theta);
    out[i] = Twist::body(c * v.x() + s * v.y(), -s * v.x() + c * v.y(), w);
  }
  return out;
}

CompositeWheelCommand composite_twist_to_wheels(const Twist& composite_twist, const CompositeBody& body,
                                                const RobotGeometry& geom_a, const RobotGeometry& geom_b,
                                                CompositeMode mode) {
  if (mode == CompositeMode::translate && composite_twist.omega != 0.0) {
    throw ModeError("translate mode requires omega = 0");
  }
  if (mode == CompositeMode::rotate && (composite_twist.vx != 0.0 || composite_twist.vy != 0.0)) {
    throw ModeError("rotate mode requires vx = vy = 0");
  }
  const auto twists = module_twists(composite_twist, body);
  CompositeWheelCommand out;
  out.wheels = {inverse_kinematics(twists[0], geom_a), inverse_kinematics(twists[1], geom_b)};
  if (mode == CompositeMode::rotate) {
    const auto da = static_cast<std::size_t>(geom_a.dock_wheel_index - 1);
    const auto db = static_cast<std::size_t>(geom_b.dock_wheel_index - 1);
    const double mean = 0.5 * (out.wheels[0][da] + out.wheels[1][db]);
    out.pin_residual = std::abs(out.wheels[0][da] - mean);
    out.wheels[0][da] = mean;
    out.wheels[1][db] = mean;
  }
  return out;
}

Twist composite_forward_kinematics(const std::array<WheelSpeeds, 2>& wheels, const CompositeBody& body,
                                   const RobotGeometry& geom_a, const RobotGeometry& geom_b) {
  // Row k maps the composite twist to wheel k's speed; columns are the wheel
  // responses to unit vx, vy and omega.
  Eigen::Matrix<double, 6, 3> a;
  Eigen::Matrix<double, 6, 1> b;
  const std::array<const RobotGeometry*, 2> geoms{&geom_a, &geom_b};
  for (int col = 0; col < 3; ++col) {
    const Twist unit = Twist::body(col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0, col == 2 ? 1.0 : 0.0);
    const auto twists = module_twists(unit, body);
    for (std::size_t i = 0; i < 2; ++i) {
      const WheelSpeeds w = inverse_kinematics(twists[i], *geoms[i]);
      for (std::size_t k = 0; k < 3; ++k) {
        a(static_cast<int>(3 * i + k), col) = w[k];
      }
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      b(static_cast<int>(3 * i + k)) = wheels[i][k];
    }
  }
  const Eigen::Vector3d q = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  return Twist::body(q(0), q(1), q(2));
}

}  // namespace dockbot
