#pragma once

// The rigid body formed by two docked modules, and how a motion request for
// that body is split into per-module wheel commands.

#include <array>
#include <span>

#include "dockbot/kinematics.hpp"

namespace dockbot {

/// A planar body reduced to mass, scalar inertia about its own center, and position.
struct PointBody {
  double mass = 0.0;
  double inertia = 0.0;
  Vec2 position{0.0, 0.0};
};

struct MassProperties {
  double mass = 0.0;
  Vec2 center_of_mass{0.0, 0.0};
  double inertia = 0.0;  // about center_of_mass
};

/// Combined mass, mass-weighted center, and parallel-axis inertia.
MassProperties combine_mass_properties(std::span<const PointBody> bodies);

/// Hub face center of a robot in the world frame.
Vec2 hub_world_position(const Pose& pose, const RobotGeometry& geom);

struct CompositeBody {
  double mass = 0.0;
  double inertia = 0.0;                // about the center of mass
  Pose frame;                          // composite frame in the world at docking: origin at CoM, +x along docking axis
  std::array<Pose, 2> module_in_frame;  // frozen pose of each module body frame in the composite frame
  Vec2 docking_axis{1.0, 0.0};         // world unit vector from module a's center toward module b's

  Vec2 center_of_mass() const { return frame.position(); }
  /// World pose of module i when the composite frame sits at `composite_world`.
  Pose module_pose(const Pose& composite_world, int i) const;
};

/// Builds the docked body. Throws CompositionError if the hub faces are more
/// than `contact_tolerance` apart.
CompositeBody compose(const RobotGeometry& geom_a, const Pose& pose_a, const RobotGeometry& geom_b,
                      const Pose& pose_b, double contact_tolerance = 0.008);

/// World pose for module b that puts its hub face onto module a's, axes opposed.
Pose docked_partner_pose(const RobotGeometry& geom_a, const Pose& pose_a, const RobotGeometry& geom_b);

enum class CompositeMode { translate, rotate };

/// Body twists of the two modules (each in its own body frame) for a rigid
/// composite twist given in the composite frame.
std::array<Twist, 2> module_twists(const Twist& composite_twist, const CompositeBody& body);

struct CompositeWheelCommand {
  std::array<WheelSpeeds, 2> wheels;
  double pin_residual = 0.0;  // rad/s moved on each dock wheel to synchronize them (rotate mode)
};

/// translate: omega must be 0. rotate: vx = vy = 0; the two dock wheels are
/// then pinned to their common mean. Throws ModeError on a mixed request.
CompositeWheelCommand composite_twist_to_wheels(const Twist& composite_twist, const CompositeBody& body,
                                                const RobotGeometry& geom_a, const RobotGeometry& geom_b,
                                                CompositeMode mode);

/// Least-squares composite twist (composite frame) explaining all six wheel speeds.
Twist composite_forward_kinematics(const std::array<WheelSpeeds, 2>& wheels, const CompositeBody& body,
                                   const RobotGeometry& geom_a, const RobotGeometry& geom_b);

}  // namespace dockbot
