#pragma once

// Three-wheel omnidirectional base kinematics and planar frame transforms.
//
// Wheel i sits at angle alpha_i around the body center, at distance L. Its
// rolling direction is (-sin alpha_i, cos alpha_i), so
//
//   phi_dot_i = (1/r) * (-sin(alpha_i) * vx + cos(alpha_i) * vy + L * omega)
//
// with (vx, vy, omega) in the body frame (+x forward, +y left, CCW positive).

#include <array>
#include <cstddef>
#include <numbers>

#include <Eigen/Core>

namespace dockbot {

using Vec2 = Eigen::Vector2d;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Planar configuration. theta is kept in (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose() = default;
  Pose(double x_, double y_, double theta_) : x(x_), y(y_), theta(wrap_angle(theta_)) {}

  Vec2 position() const { return {x, y}; }
  /// Maps a point given in this body frame into the parent frame.
  Vec2 transform(const Vec2& local) const;
  /// Maps a direction given in this body frame into the parent frame.
  Vec2 rotate(const Vec2& local) const;
  /// Maps a parent-frame point into this body frame.
  Vec2 inverse_transform(const Vec2& parent) const;

  bool operator==(const Pose&) const = default;
};

/// Composition: pose of `child` (expressed in `parent`'s frame) in the parent's parent frame.
Pose compose_poses(const Pose& parent, const Pose& child);
/// Pose of `target` expressed in `reference`'s frame.
Pose relative_pose(const Pose& reference, const Pose& target);

enum class Frame { body, world };

struct Twist {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;
  Frame frame = Frame::body;

  static Twist body(double vx, double vy, double omega) { return {vx, vy, omega, Frame::body}; }
  static Twist world(double vx, double vy, double omega) { return {vx, vy, omega, Frame::world}; }

  Vec2 linear() const { return {vx, vy}; }
  bool is_finite() const;
  bool operator==(const Twist&) const = default;
};

struct WheelSpeeds {
  std::array<double, 3> phi{0.0, 0.0, 0.0};

  double& operator[](std::size_t i) { return phi[i]; }
  double operator[](std::size_t i) const { return phi[i]; }
  double max_abs() const;
  bool is_finite() const;
  bool operator==(const WheelSpeeds&) const = default;
};

struct RobotGeometry {
  double wheel_radius = 0.05;      // m
  double center_offset = 0.12;     // L, m
  std::array<double, 3> mount_angles{deg_to_rad(150.0), deg_to_rad(270.0), deg_to_rad(30.0)};
  double mass = 4.0;               // kg
  double body_inertia = 0.06;      // kg m^2, about the body center
  int dock_wheel_index = 3;        // 1-based
  double max_wheel_speed = 10.0;   // rad/s
  double hub_protrusion = 0.03;    // m, hub face beyond the dock wheel center along its axle

  /// Throws GeometryError / InvalidInputError if any invariant is violated.
  void validate() const;

  /// The bracketed matrix of the wheel equation (without the 1/r factor).
  Eigen::Matrix3d kinematic_matrix() const;

  /// Outward axle direction of the dock wheel in the body frame.
  double dock_axis_angle() const { return mount_angles[static_cast<std::size_t>(dock_wheel_index - 1)]; }
  /// Hub face center in the body frame.
  Vec2 hub_center() const;
};

/// Minimum |det| of the kinematic matrix accepted as invertible.
inline constexpr double kMinKinematicDeterminant = 1e-9;

/// Body twist -> wheel speeds (exact wheel equation).
WheelSpeeds inverse_kinematics(const Twist& body_twist, const RobotGeometry& geom);

/// Wheel speeds -> body twist through the exact 3x3 inverse.
Twist forward_kinematics(const WheelSpeeds& wheels, const RobotGeometry& geom);

/// Wheel matrix and its inverse computed once, for repeated use with one
/// geometry. Same results as the free functions up to rounding.
class WheelModel {
 public:
  explicit WheelModel(const RobotGeometry& geom);

  WheelSpeeds inverse(const Twist& body_twist) const;
  Twist forward(const WheelSpeeds& wheels) const;

 private:
  Eigen::Matrix3d to_wheels_;
  Eigen::Matrix3d to_twist_;
};

Twist body_to_world(const Twist& body_twist, const Pose& pose);
Twist world_to_body(const Twist& world_twist, const Pose& pose);

/// Uniformly scales wheel speeds so that none exceeds `max_speed` in magnitude.
WheelSpeeds saturate(const WheelSpeeds& wheels, double max_speed);

/// Semi-implicit Euler: heading first, then position with the updated heading.
Pose integrate_semi_implicit(const Pose& pose, const Twist& body_twist, double dt);

/// Exact SE(2) exponential for a twist held constant over dt.
Pose integrate_exact(const Pose& pose, const Twist& body_twist, double dt);

}  // namespace dockbot
