#pragma once

// Planar payload held at two grasp points by spring-damper couplings to the
// robots' end effectors.

#include <array>

#include "dockbot/kinematics.hpp"

namespace dockbot {

struct ObjectCoupling {
  std::array<Vec2, 2> grasp_points{Vec2(-0.2, 0.0), Vec2(0.2, 0.0)};  // object frame, m
  double stiffness = 800.0;     // N/m, per grasp
  double damping = 40.0;        // N s/m, per grasp
  double object_mass = 0.5;     // kg
  double object_inertia = 0.0104;  // kg m^2

  void validate() const;
  /// Same coupling with stiffness * k and damping * sqrt(k) (unchanged damping ratio).
  ObjectCoupling stiffened(double k) const;
};

/// World position and velocity of an end effector.
struct Anchor {
  Vec2 position{0.0, 0.0};
  Vec2 velocity{0.0, 0.0};
};

class CarriedObject {
 public:
  CarriedObject(const ObjectCoupling& coupling, const Pose& initial);

  /// Advances by dt with the anchors moving linearly from `begin` to `end`.
  /// Internally sub-steps so that the fastest coupling mode is well resolved.
  void step(const std::array<Anchor, 2>& begin, const std::array<Anchor, 2>& end, double dt);

  const Pose& pose() const { return pose_; }
  const Vec2& velocity() const { return velocity_; }
  double angular_velocity() const { return omega_; }
  /// Mean linear acceleration of the object center over the last step.
  const Vec2& acceleration() const { return acceleration_; }
  /// Force applied to the object at grasp i by its end effector, at the end of the last step.
  const Vec2& grasp_force(int i) const { return forces_.at(static_cast<std::size_t>(i)); }
  Vec2 grasp_world(int i) const { return pose_.transform(coupling_.grasp_points.at(static_cast<std::size_t>(i))); }

 private:
  std::array<Vec2, 2> forces_at(const std::array<Anchor, 2>& anchors) const;

  ObjectCoupling coupling_;
  Pose pose_;
  Vec2 velocity_{0.0, 0.0};
  double omega_ = 0.0;
  Vec2 acceleration_{0.0, 0.0};
  std::array<Vec2, 2> forces_{Vec2::Zero(), Vec2::Zero()};
  int substeps_per_second_ = 0;
};

}  // namespace dockbot
