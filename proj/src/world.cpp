#include "dockbot/world.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dockbot/errors.hpp"

namespace dockbot {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(const Pose& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.theta); }


RobotSample absent_robot() {
  RobotSample s;
  s.pose = Pose(kNaN, kNaN, 0.0);
  s.pose.theta = kNaN;
  s.commanded = Twist::body(kNaN, kNaN, kNaN);
  s.actual = Twist::body(kNaN, kNaN, kNaN);
  return s;
}

// Composite and module poses of a docked pair whose center of mass starts at
// `start`, with the pair's broadside (composite +y) facing `forward_axis`.
struct DockedLayout {
  CompositeBody body;
  Pose composite_pose;
};

DockedLayout docked_layout(const RobotGeometry& geom_a, const RobotGeometry& geom_b, const Vec2& start,
                           double forward_axis) {
  const Pose a(0.0, 0.0, -geom_a.dock_axis_angle());
  const Pose b = docked_partner_pose(geom_a, a, geom_b);
  DockedLayout out;
  out.body = compose(geom_a, a, geom_b, b, 1e-9);
  out.composite_pose = Pose(start.x(), start.y(), forward_axis - kPi / 2.0);
  // Re-anchor the body so that its recorded docking frame is the start pose.
  const double axis = out.composite_pose.theta;
  out.body.frame = out.composite_pose;
  out.body.docking_axis = Vec2(std::cos(axis), std::sin(axis));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ActuationNoise::ActuationNoise(const NoiseConfig& config, double dt, Rng rng) : config_(config), rng_(std::move(rng)) {
  const double tau = config_.actuation_correlation_time;
  pole_ = tau > 0.0 ? std::exp(-dt / tau) : 0.0;
  drive_ = std::sqrt(1.0 - pole_ * pole_);

  // Stationary covariance of (stage1, stage2) by fixed-point iteration of the
  // discrete Lyapunov equation.
  Eigen::Matrix2d f;
  f << pole_, 0.0, pole_ * drive_, pole_;
  const Eigen::Vector2d g(drive_, drive_ * drive_);
  Eigen::Matrix2d p = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 200000; ++i) {
    const Eigen::Matrix2d next = f * p * f.transpose() + g * g.transpose();
    const double change = (next - p).cwiseAbs().maxCoeff();
    p = next;
    if (change < 1e-15) {
      break;
    }
  }
  stage2_sigma_ = std::sqrt(p(1, 1));
  const double slope = p(0, 1) / p(0, 0);
  const double rest = std::sqrt(std::max(0.0, p(1, 1) - slope * p(0, 1)));
  for (std::size_t k = 0; k < 3; ++k) {
    const double z1 = normal_(rng_);
    const double z2 = normal_(rng_);
    stage1_[k] = std::sqrt(p(0, 0)) * z1;
    stage2_[k] = slope * stage1_[k] + rest * z2;
  }
}

WheelSpeeds ActuationNoise::apply(const WheelSpeeds& command) {
  WheelSpeeds out = command;
  for (std::size_t k = 0; k < 3; ++k) {
    stage1_[k] = pole_ * stage1_[k] + drive_ * normal_(rng_);
    stage2_[k] = pole_ * stage2_[k] + drive_ * stage1_[k];
    const double sigma = config_.actuation_relative * std::abs(command[k]) + config_.actuation_floor;
    out[k] += sigma * stage2_[k] / stage2_sigma_;
  }
  return out;
}

// ---------------------------------------------------------------------------

RelativeHubPose relative_hub_pose(const Pose& active, const RobotGeometry& geom_active, const Pose& passive,
                                  const RobotGeometry& geom_passive) {
  const double normal = passive.theta + geom_passive.dock_axis_angle();
  const Pose female(hub_world_position(passive, geom_passive).x(), hub_world_position(passive, geom_passive).y(),
                    normal);
  const Vec2 local = female.inverse_transform(hub_world_position(active, geom_active));
  RelativeHubPose rel;
  rel.gap = local.x();
  rel.lateral = local.y();
  rel.angular = wrap_angle(active.theta + geom_active.dock_axis_angle() - normal - kPi);
  return rel;
}

Pose pose_from_hub_relation(const RelativeHubPose& rel, const RobotGeometry& geom_active, const Pose& passive,
                            const RobotGeometry& geom_passive) {
  const double normal = passive.theta + geom_passive.dock_axis_angle();
  const Vec2 f = hub_world_position(passive, geom_passive);
  const Pose female(f.x(), f.y(), normal);
  const Vec2 hub = female.transform(Vec2(rel.gap, rel.lateral));
  const double theta = normal + kPi + rel.angular - geom_active.dock_axis_angle();
  const Vec2 center = hub - Pose(0.0, 0.0, theta).rotate(geom_active.hub_center());
  return {center.x(), center.y(), theta};
}

// ---------------------------------------------------------------------------

RobotState actuate(const RobotState& robot, const Twist& body_command, const RobotGeometry& geom,
                   const WheelModel& wheels, ActuationNoise& noise, double dt) {
  const WheelSpeeds applied = noise.apply(saturate(wheels.inverse(body_command), geom.max_wheel_speed));
  RobotState next = robot;
  next.commanded = body_command;
  next.actual = wheels.forward(applied);
  next.pose = integrate_semi_implicit(robot.pose, next.actual, dt);
  return next;
}

World::World(const Scenario& scenario, std::uint64_t seed)
    : scenario_(scenario),
      seed_(seed),
      dt_(scenario.dt),
      wheels_{WheelModel(scenario.robots[0]), WheelModel(scenario.robots[1])},
      noise_{ActuationNoise(scenario.noise, scenario.dt, make_stream(seed, "actuation/a")),
             ActuationNoise(scenario.noise, scenario.dt, make_stream(seed, "actuation/b"))},
      perception_rng_(make_stream(seed, "perception")),
      camera_(scenario.active_camera()),
      limiters_{RateLimiter(scenario.tracking.max_accel, scenario.tracking.max_angular_accel),
                RateLimiter(scenario.tracking.max_accel, scenario.tracking.max_angular_accel)} {
  scenario_.validate();
  if (!scenario_.noise.perception) {
    scenario_.lighting_table = scenario_.lighting_table.noiseless();
  }
  trace_.mode = std::string(to_string(scenario_.mode));
  trace_.seed = seed_;
  trace_.dt = dt_;
  trace_.samples.reserve(static_cast<std::size_t>(std::ceil(scenario_.max_time / dt_)) + 1);
  if (scenario_.mode == Mode::dock_only) {
    init_docking();
    record(to_string(DockPhase::search), {kNaN, kNaN});
  } else {
    init_transport();
    record("transport", {0.0, state_.robot_count == 2 ? 0.0 : kNaN});
  }
}

void World::init_docking() {
  const DockSetup& setup = scenario_.dock_setup;
  Rng rng = make_stream(seed_, "setup");
  // Always three draws, used or not.
  const double u_distance = uniform01(rng);
  const double u_side = uniform01(rng);
  const double u_heading = uniform01(rng);

  const RobotGeometry& gb = scenario_.robots[1];
  state_.robots[1].pose = setup.female_pose;
  const TagPose tag = tag_on_hub(setup.female_pose, gb, 1);

  const double distance = setup.distance + setup.distance_jitter * (2.0 * u_distance - 1.0);
  const int side = setup.side ? *setup.side : (u_side < 0.5 ? -1 : 1);
  const double dir = tag.normal + side * setup.deviation;
  const Vec2 center = tag.position + distance * Vec2(std::cos(dir), std::sin(dir));
  const double heading = setup.active_heading ? *setup.active_heading : kPi * (2.0 * u_heading - 1.0);
  state_.robots[0].pose = Pose(center.x(), center.y(), heading);

  state_.robot_count = 2;
  trace_.robot_count = 2;
  trace_.setup_deviation = setup.deviation;
  trace_.setup_distance = distance;
}

void World::init_transport() {
  const RobotGeometry& ga = scenario_.robots[0];
  const RobotGeometry& gb = scenario_.robots[1];
  const PathSpec& path = scenario_.path;

  if (scenario_.mode == Mode::track_single) {
    state_.robot_count = 1;
    trace_.robot_count = 1;
    const Vec2 s = path.waypoints.front();
    state_.robots[0].pose = Pose(s.x(), s.y(), path.forward_axis);
    paths_[0] = path;
    trackers_[0].reference_heading = state_.robots[0].pose.theta;
    return;
  }

  const DockedLayout layout = docked_layout(ga, gb, path.waypoints.front(), path.forward_axis);
  state_.composite = layout.body;
  state_.composite_pose = layout.composite_pose;
  for (int i = 0; i < 2; ++i) {
    state_.robots[static_cast<std::size_t>(i)].pose = layout.body.module_pose(layout.composite_pose, i);
  }
  module_distance_ = (state_.robots[0].pose.position() - state_.robots[1].pose.position()).norm();

  // Object center ahead of the pair; grasp i is held by module i.
  const double ahead = scenario_.transport.object_forward_offset;
  const Pose object_in_composite(0.0, ahead, 0.0);
  const Pose object_world = compose_poses(state_.composite_pose, object_in_composite);
  for (std::size_t i = 0; i < 2; ++i) {
    const Vec2 grasp_c = object_in_composite.transform(scenario_.coupling.grasp_points[i]);
    if (scenario_.mode == Mode::docked_transport) {
      anchor_local_[i] = grasp_c;
    } else {
      anchor_local_[i] = layout.body.module_in_frame[i].inverse_transform(grasp_c);
    }
  }
  const ObjectCoupling coupling = scenario_.mode == Mode::docked_transport
                                      ? scenario_.coupling.stiffened(scenario_.transport.docked_stiffness_scale)
                                      : scenario_.coupling;
  object_.emplace(coupling, object_world);
  state_.object_pose = object_world;

  if (scenario_.mode == Mode::docked_transport) {
    paths_[0] = path;
    trackers_[0].reference_heading = state_.composite_pose.theta;
    trace_.composite = layout.body;
    trace_.max_module_distance_drift = 0.0;
    trace_.max_pin_residual = 0.0;
  } else {
    for (std::size_t i = 0; i < 2; ++i) {
      paths_[i] = path.shifted(state_.robots[i].pose.position() - path.waypoints.front());
      trackers_[i].reference_heading = state_.robots[i].pose.theta;
    }
  }
}

std::array<Anchor, 2> World::anchors_for(const std::array<Pose, 2>& poses) const {
  std::array<Anchor, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    out[i].position = poses[i].transform(anchor_local_[i]);
  }
  return out;
}

void World::record(std::string_view phase, const std::array<double, 2>& heading_errors) {
  TraceSample s;
  s.t = state_.time;
  s.phase = phase;
  for (std::size_t i = 0; i < 2; ++i) {
    if (static_cast<int>(i) >= state_.robot_count) {
      s.robots[i] = absent_robot();
      continue;
    }
    s.robots[i].pose = state_.robots[i].pose;
    s.robots[i].commanded = state_.robots[i].commanded;
    s.robots[i].actual = state_.robots[i].actual;
    s.robots[i].heading_error = heading_errors[i];
  }
  if (scenario_.mode != Mode::dock_only) {
    s.object_ax = state_.object_acceleration.x();
    s.object_ay = state_.object_acceleration.y();
  }
  trace_.samples.push_back(s);
}

void World::finish(bool success, std::string outcome) {
  done_ = true;
  trace_.success = success;
  trace_.outcome = std::move(outcome);
}

void World::check_finite() const {
  for (int i = 0; i < state_.robot_count; ++i) {
    const auto& r = state_.robots[static_cast<std::size_t>(i)];
    if (!finite(r.pose) || !r.actual.is_finite() || !r.commanded.is_finite()) {
      throw SimulationDiverged(state_.time, "robot " + std::to_string(i) + " state is not finite");
    }
  }
  if (object_ && (!finite(object_->pose()) || !object_->velocity().allFinite())) {
    throw SimulationDiverged(state_.time, "carried object state is not finite");
  }
}

void World::step() {
  if (done_) {
    return;
  }
  switch (scenario_.mode) {
    case Mode::dock_only:
      step_docking();
      break;
    case Mode::docked_transport:
      step_docked();
      break;
    case Mode::cooperating_transport:
      step_cooperating();
      break;
    case Mode::track_single:
      step_single();
      break;
  }
  if (!done_ && state_.time >= scenario_.max_time - 1e-12) {
    finish(false, "timeout");
  }
}

RunTrace World::run() {
  while (!done_) {
    step();
  }
  return std::move(trace_);
}

// ---------------------------------------------------------------------------
// Docking

void World::step_docking() {
  const RobotGeometry& ga = scenario_.robots[0];
  const RobotGeometry& gb = scenario_.robots[1];
  const DockingParams& params = scenario_.docking;
  RobotState& a = state_.robots[0];
  RobotState& b = state_.robots[1];
  const double t = state_.time;
  const DockPhase before = state_.docking.phase;

  WheelSpeeds cmd_a;
  Twist cmd_twist = Twist::body(0.0, 0.0, 0.0);
  if (before == DockPhase::search || before == DockPhase::align) {
    const TagObservation obs =
        observe_tag(camera_pose(a.pose, camera_), tag_on_hub(b.pose, gb, 1), camera_,
                    scenario_.lighting_table[scenario_.lighting], scenario_.perception, perception_rng_);
    const TwistStep st = before == DockPhase::search ? search_step(state_.docking, t, obs, params)
                                                     : align_step(state_.docking, t, obs, params, camera_, ga);
    state_.docking = st.next;
    cmd_twist = st.command;
    cmd_a = saturate(wheels_[0].inverse(cmd_twist), ga.max_wheel_speed);
  } else if (before == DockPhase::lock) {
    const WheelStep st = lock_step(state_.docking, t, relative_hub_pose(a.pose, ga, b.pose, gb), params, ga, dt_);
    state_.docking = st.next;
    cmd_a = st.command;
    if (cmd_a.max_abs() > 0.0) {
      cmd_twist = Twist::body(params.lock_forward_speed, 0.0, params.lock_hub_spin);
    }
  }

  const DockPhase after = state_.docking.phase;
  if (after != before) {
    PhaseEvent ev{t, std::string(to_string(before)), std::string(to_string(after)), ""};
    if (state_.docking.failure) {
      ev.reason = std::string(to_string(*state_.docking.failure));
    }
    trace_.events.push_back(std::move(ev));
  }

  // Plant. The passive robot holds still up to actuation noise.
  const WheelSpeeds applied_a = noise_[0].apply(cmd_a);
  const WheelSpeeds applied_b = noise_[1].apply(WheelSpeeds{});
  const Twist free_a = wheels_[0].forward(applied_a);
  const Twist free_b = wheels_[1].forward(applied_b);
  b.pose = integrate_semi_implicit(b.pose, free_b, dt_);

  RelativeHubPose rel;
  if (after == DockPhase::lock) {
    rel = relative_hub_pose(a.pose, ga, b.pose, gb);
  }
  const bool captured = after == DockPhase::lock && rel.gap <= params.capture_depth &&
                        std::abs(rel.lateral) <= params.capture_lateral &&
                        std::abs(rel.angular) <= params.capture_angular;
  if (captured) {
    // The bevel admits only axial closing; it centers the hub while pressed
    // and lets a small share of the free lateral hub motion through.
    const Vec2 hub_local = ga.hub_center();
    const Vec2 v_hub = a.pose.rotate(free_a.linear() + free_a.omega * Vec2(-hub_local.y(), hub_local.x()));
    const double normal = b.pose.theta + gb.dock_axis_angle();
    const Vec2 n(std::cos(normal), std::sin(normal));
    const Vec2 across(-n.y(), n.x());
    const double closing = -v_hub.dot(n);
    const double decay = std::max(0.0, 1.0 - scenario_.contact.centering_rate * dt_);
    rel.gap = std::max(0.0, rel.gap - std::max(closing, 0.0) * dt_);
    rel.lateral = rel.lateral * decay + scenario_.contact.compliance * v_hub.dot(across) * dt_;
    rel.angular *= decay;
    a.pose = pose_from_hub_relation(rel, ga, b.pose, gb);
  } else {
    a.pose = integrate_semi_implicit(a.pose, free_a, dt_);
  }

  if (after == DockPhase::lock && cmd_a.max_abs() > 0.0) {
    lock_twist_sum_ += Eigen::Vector3d(free_a.vx, free_a.vy, free_a.omega);
    lock_deviation_sum_ += Eigen::Vector3d(free_a.vx - params.lock_forward_speed, free_a.vy,
                                           free_a.omega - params.lock_hub_spin)
                               .norm();
    ++lock_steps_;
  }

  a.commanded = cmd_twist;
  a.actual = free_a;
  b.commanded = Twist::body(0.0, 0.0, 0.0);
  b.actual = free_b;
  state_.time = static_cast<double>(++steps_) * dt_;
  check_finite();
  record(to_string(after), {kNaN, kNaN});

  if (lock_steps_ > 0) {
    const Eigen::Vector3d m = lock_twist_sum_ / static_cast<double>(lock_steps_);
    trace_.lock_mean_twist = Twist::body(m.x(), m.y(), m.z());
    trace_.lock_mean_deviation = lock_deviation_sum_ / static_cast<double>(lock_steps_);
  }
  if (after == DockPhase::docked) {
    trace_.composite = compose(ga, a.pose, gb, b.pose, params.capture_lateral);
    state_.composite = trace_.composite;
    trace_.completion_time = state_.time;
    finish(true, "docked");
  } else if (after == DockPhase::failed) {
    finish(false, std::string(to_string(*state_.docking.failure)));
  }
}

// ---------------------------------------------------------------------------
// Transport

void World::step_docked() {
  const RobotGeometry& ga = scenario_.robots[0];
  const RobotGeometry& gb = scenario_.robots[1];
  const CompositeBody& body = *state_.composite;
  const double t = state_.time;

  Twist cmd_world = follow_path(state_.composite_pose, paths_[0], trackers_[0], scenario_.tracking);
  if (trackers_[0].finished) {
    trace_.completion_time = t;
    trace_.final_position_error = (state_.composite_pose.position() - paths_[0].waypoints.back()).norm();
    finish(true, "completed");
    return;
  }
  cmd_world = limiters_[0].apply(cmd_world, dt_);
  const Twist cmd = world_to_body(cmd_world, state_.composite_pose);

  // Translation and rotation are split into the two motion modes and the
  // wheel commands superposed.
  CompositeWheelCommand wheels =
      composite_twist_to_wheels(Twist::body(cmd.vx, cmd.vy, 0.0), body, ga, gb, CompositeMode::translate);
  if (cmd.omega != 0.0) {
    const CompositeWheelCommand spin =
        composite_twist_to_wheels(Twist::body(0.0, 0.0, cmd.omega), body, ga, gb, CompositeMode::rotate);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < 3; ++k) {
        wheels.wheels[i][k] += spin.wheels[i][k];
      }
    }
    trace_.max_pin_residual = std::max(trace_.max_pin_residual, spin.pin_residual);
  }
  const double peak = std::max(wheels.wheels[0].max_abs(), wheels.wheels[1].max_abs());
  const double limit = std::min(ga.max_wheel_speed, gb.max_wheel_speed);
  if (peak > limit) {
    for (auto& w : wheels.wheels) {
      for (double& phi : w.phi) {
        phi *= limit / peak;
      }
    }
  }

  const std::array<WheelSpeeds, 2> applied{noise_[0].apply(wheels.wheels[0]), noise_[1].apply(wheels.wheels[1])};
  const Twist actual = composite_forward_kinematics(applied, body, ga, gb);

  const std::array<Pose, 2> before_c{state_.composite_pose, state_.composite_pose};
  state_.composite_pose = integrate_semi_implicit(state_.composite_pose, actual, dt_);
  const std::array<Pose, 2> after_c{state_.composite_pose, state_.composite_pose};

  std::array<Anchor, 2> a0 = anchors_for(before_c);
  std::array<Anchor, 2> a1 = anchors_for(after_c);
  for (std::size_t i = 0; i < 2; ++i) {
    a0[i].velocity = a1[i].velocity = (a1[i].position - a0[i].position) / dt_;
  }
  object_->step(a0, a1, dt_);
  state_.object_pose = object_->pose();
  state_.object_acceleration = object_->acceleration();

  const auto cmd_modules = module_twists(cmd, body);
  const auto act_modules = module_twists(actual, body);
  for (std::size_t i = 0; i < 2; ++i) {
    state_.robots[i].pose = body.module_pose(state_.composite_pose, static_cast<int>(i));
    state_.robots[i].commanded = cmd_modules[i];
    state_.robots[i].actual = act_modules[i];
  }
  const double drift =
      std::abs((state_.robots[0].pose.position() - state_.robots[1].pose.position()).norm() - module_distance_);
  trace_.max_module_distance_drift = std::max(trace_.max_module_distance_drift, drift);

  state_.time = static_cast<double>(++steps_) * dt_;
  check_finite();
  const double err = wrap_angle(state_.composite_pose.theta - trackers_[0].reference_heading);
  record("transport", {err, err});
}

void World::step_cooperating() {
  const double t = state_.time;
  const CooperationConfig& coop = scenario_.cooperation;

  std::array<Twist, 2> cmd_world;
  for (std::size_t i = 0; i < 2; ++i) {
    const double scale =
        filtered_force_[i] > coop.grasp_force_limit ? coop.grasp_force_limit / filtered_force_[i] : 1.0;
    cmd_world[i] = follow_path(state_.robots[i].pose, paths_[i], trackers_[i], scenario_.tracking, scale);
  }
  if (trackers_[0].finished && trackers_[1].finished) {
    trace_.completion_time = t;
    const Vec2 mid = 0.5 * (state_.robots[0].pose.position() + state_.robots[1].pose.position());
    const Vec2 center_offset = 0.5 * ((paths_[0].waypoints.front() - scenario_.path.waypoints.front()) +
                                      (paths_[1].waypoints.front() - scenario_.path.waypoints.front()));
    trace_.final_position_error = (mid - center_offset - scenario_.path.waypoints.back()).norm();
    finish(true, "completed");
    return;
  }

  std::array<Pose, 2> before;
  std::array<Pose, 2> after;
  for (std::size_t i = 0; i < 2; ++i) {
    const RobotGeometry& g = scenario_.robots[i];
    RobotState& r = state_.robots[i];
    before[i] = r.pose;
    r = actuate(r, world_to_body(limiters_[i].apply(cmd_world[i], dt_), r.pose), g, wheels_[i], noise_[i], dt_);
    after[i] = r.pose;
  }

  std::array<Anchor, 2> a0 = anchors_for(before);
  std::array<Anchor, 2> a1 = anchors_for(after);
  for (std::size_t i = 0; i < 2; ++i) {
    a0[i].velocity = a1[i].velocity = (a1[i].position - a0[i].position) / dt_;
  }
  object_->step(a0, a1, dt_);
  state_.object_pose = object_->pose();
  state_.object_acceleration = object_->acceleration();
  const double alpha = std::min(1.0, dt_ / coop.force_filter_time);
  for (std::size_t i = 0; i < 2; ++i) {
    // Only the share of the grasp reaction that holds the robot back along its
    // path counts: a leading robot yields, a lagging one keeps going.
    const PathSpec& p = paths_[i];
    const std::size_t seg = trackers_[i].segment;
    const Vec2 dir = (p.waypoints[seg + 1] - p.waypoints[seg]).normalized();
    const double drag = std::max(0.0, object_->grasp_force(static_cast<int>(i)).dot(dir));
    filtered_force_[i] += alpha * (drag - filtered_force_[i]);
  }

  state_.time = static_cast<double>(++steps_) * dt_;
  check_finite();
  record("transport", {wrap_angle(state_.robots[0].pose.theta - trackers_[0].reference_heading),
                       wrap_angle(state_.robots[1].pose.theta - trackers_[1].reference_heading)});
}

void World::step_single() {
  const RobotGeometry& g = scenario_.robots[0];
  RobotState& r = state_.robots[0];
  const double t = state_.time;

  const Twist target = follow_path(r.pose, paths_[0], trackers_[0], scenario_.tracking);
  if (trackers_[0].finished) {
    trace_.completion_time = t;
    trace_.final_position_error = (r.pose.position() - paths_[0].waypoints.back()).norm();
    finish(true, "completed");
    return;
  }
  const Pose before = r.pose;
  r = actuate(r, world_to_body(limiters_[0].apply(target, dt_), r.pose), g, wheels_[0], noise_[0], dt_);

  // The robot center stands in for the payload.
  const Vec2 v = (r.pose.position() - before.position()) / dt_;
  state_.object_acceleration = (v - last_velocity_) / dt_;
  last_velocity_ = v;

  state_.time = static_cast<double>(++steps_) * dt_;
  check_finite();
  record("transport", {wrap_angle(r.pose.theta - trackers_[0].reference_heading), kNaN});
}

// ---------------------------------------------------------------------------

RunTrace run_scenario(const Scenario& scenario, std::uint64_t seed) { return World(scenario, seed).run(); }

RunTrace run_docking(Scenario scenario, std::uint64_t seed) {
  scenario.mode = Mode::dock_only;
  return run_scenario(scenario, seed);
}

RunTrace run_docked_transport(Scenario scenario, std::uint64_t seed) {
  scenario.mode = Mode::docked_transport;
  return run_scenario(scenario, seed);
}

RunTrace run_cooperating_transport(Scenario scenario, std::uint64_t seed) {
  scenario.mode = Mode::cooperating_transport;
  return run_scenario(scenario, seed);
}

RunTrace run_single_tracking(Scenario scenario, std::uint64_t seed) {
  scenario.mode = Mode::track_single;
  return run_scenario(scenario, seed);
}

}  // namespace dockbot
