#pragma once

// Fixed-step deterministic world. One World runs one scenario mode for one
// seed; every random draw comes from a named stream derived from that seed.

#include <array>
#include <cstdint>
#include <optional>

#include "dockbot/composite.hpp"
#include "dockbot/docking.hpp"
#include "dockbot/object.hpp"
#include "dockbot/path.hpp"
#include "dockbot/rng.hpp"
#include "dockbot/scenario.hpp"
#include "dockbot/trace.hpp"

namespace dockbot {

/// Band-limited wheel-speed disturbance for one robot (three wheels).
class ActuationNoise {
 public:
  ActuationNoise(const NoiseConfig& config, double dt, Rng rng);

  WheelSpeeds apply(const WheelSpeeds& command);

 private:
  NoiseConfig config_;
  double pole_ = 0.0;
  double drive_ = 1.0;
  double stage2_sigma_ = 1.0;
  Rng rng_;
  std::normal_distribution<double> normal_;  // kept so its spare variate is not thrown away
  std::array<double, 3> stage1_{};
  std::array<double, 3> stage2_{};
};

/// Male hub of `active` relative to the female hub of `passive`.
RelativeHubPose relative_hub_pose(const Pose& active, const RobotGeometry& geom_active, const Pose& passive,
                                  const RobotGeometry& geom_passive);

/// Inverse of relative_hub_pose: active robot pose for a given hub relation.
Pose pose_from_hub_relation(const RelativeHubPose& rel, const RobotGeometry& geom_active, const Pose& passive,
                            const RobotGeometry& geom_passive);

struct RobotState {
  Pose pose;
  Twist commanded = Twist::body(0.0, 0.0, 0.0);
  Twist actual = Twist::body(0.0, 0.0, 0.0);
};

/// One free-motion step: body command -> saturated wheel speeds -> actuation
/// noise -> forward kinematics -> semi-implicit Euler.
RobotState actuate(const RobotState& robot, const Twist& body_command, const RobotGeometry& geom,
                   const WheelModel& wheels, ActuationNoise& noise, double dt);

struct WorldState {
  double time = 0.0;
  int robot_count = 2;
  std::array<RobotState, 2> robots;
  DockingState docking;
  std::optional<CompositeBody> composite;
  Pose composite_pose;
  std::optional<Pose> object_pose;
  Vec2 object_acceleration{0.0, 0.0};
};

class World {
 public:
  World(const Scenario& scenario, std::uint64_t seed);

  /// Advances by one dt. Throws SimulationDiverged if the state becomes non-finite.
  void step();
  bool done() const { return done_; }
  const WorldState& state() const { return state_; }
  const RunTrace& trace() const { return trace_; }

  /// Steps until done and hands over the trace.
  RunTrace run();

 private:
  void init_docking();
  void init_transport();
  void step_docking();
  void step_docked();
  void step_cooperating();
  void step_single();
  void record(std::string_view phase, const std::array<double, 2>& heading_errors);
  void finish(bool success, std::string outcome);
  void check_finite() const;
  std::array<Anchor, 2> anchors_for(const std::array<Pose, 2>& poses) const;

  Scenario scenario_;
  std::uint64_t seed_;
  double dt_;
  WorldState state_;
  RunTrace trace_;
  bool done_ = false;
  std::uint64_t steps_ = 0;

  std::array<WheelModel, 2> wheels_;
  std::array<ActuationNoise, 2> noise_;
  Rng perception_rng_;
  CameraModel camera_;

  // Transport.
  std::array<PathSpec, 2> paths_;
  std::array<PathTracker, 2> trackers_;
  std::array<RateLimiter, 2> limiters_;
  std::optional<CarriedObject> object_;
  std::array<Vec2, 2> anchor_local_{Vec2::Zero(), Vec2::Zero()};  // in robot (or composite) frame
  std::array<double, 2> filtered_force_{0.0, 0.0};
  Vec2 last_velocity_{0.0, 0.0};
  double module_distance_ = 0.0;

  // Lock statistics.
  Eigen::Vector3d lock_twist_sum_ = Eigen::Vector3d::Zero();
  double lock_deviation_sum_ = 0.0;
  std::size_t lock_steps_ = 0;
};

RunTrace run_scenario(const Scenario& scenario, std::uint64_t seed);
RunTrace run_docking(Scenario scenario, std::uint64_t seed);
RunTrace run_docked_transport(Scenario scenario, std::uint64_t seed);
RunTrace run_cooperating_transport(Scenario scenario, std::uint64_t seed);
RunTrace run_single_tracking(Scenario scenario, std::uint64_t seed);

}  // namespace dockbot
