#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dockbot/docking.hpp"
#include "dockbot/errors.hpp"
#include "gen.hpp"

using namespace dockbot;

namespace {

constexpr double kPi = std::numbers::pi;

TagOffsets offsets(double x, double z, double yaw = 0.0) {
  TagOffsets o;
  o.x_offset = x;
  o.z_offset = z;
  o.bearing = std::atan2(x, z);
  o.relative_yaw = yaw;
  return o;
}

DockingState in_phase(DockPhase p, double entry = 0.0) {
  DockingState s;
  s.phase = p;
  s.phase_entry_time = entry;
  return s;
}

}  // namespace

TEST(Search, SpinsInPlaceWhileBlind) {
  const DockingParams p;
  const TwistStep out = search_step(in_phase(DockPhase::search), 1.0, std::nullopt, p);
  EXPECT_EQ(out.command.vx, 0.0);
  EXPECT_EQ(out.command.vy, 0.0);
  EXPECT_EQ(out.command.omega, p.search_spin_rate);
  EXPECT_EQ(out.next.phase, DockPhase::search);
}

TEST(Search, ObservationStartsAlign) {
  const TwistStep out = search_step(in_phase(DockPhase::search), 2.5, offsets(0.01, 0.5), DockingParams{});
  EXPECT_EQ(out.next.phase, DockPhase::align);
  EXPECT_EQ(out.next.phase_entry_time, 2.5);
  EXPECT_TRUE(out.next.tag_seen);
  EXPECT_EQ(out.next.tag.frames, 1);
  EXPECT_EQ(out.next.tag.x_offset, 0.01);
}

TEST(Search, TimesOut) {
  const DockingParams p;
  const TwistStep out = search_step(in_phase(DockPhase::search), p.phase_timeout, offsets(0.0, 0.5), p);
  EXPECT_EQ(out.next.phase, DockPhase::failed);
  EXPECT_EQ(out.next.failure, FailureReason::timeout);

  DockingState seen = in_phase(DockPhase::search, 3.0);
  seen.tag_seen = true;
  const TwistStep lost = search_step(seen, 3.0 + p.phase_timeout, std::nullopt, p);
  EXPECT_EQ(lost.next.failure, FailureReason::tag_lost);

  const TwistStep early = search_step(in_phase(DockPhase::search), p.phase_timeout - 1e-9, std::nullopt, p);
  EXPECT_EQ(early.next.phase, DockPhase::search);
}

TEST(Search, WrongPhaseThrows) {
  EXPECT_THROW(search_step(in_phase(DockPhase::align), 0.0, std::nullopt, DockingParams{}), PhaseError);
  EXPECT_THROW(lock_step(in_phase(DockPhase::search), 0.0, {}, DockingParams{}, RobotGeometry{}, 0.01), PhaseError);
}

TEST(Align, ConvergedEntersLockWithZeroCommand) {
  const DockingParams p;
  const RobotGeometry g;
  DockingState s = in_phase(DockPhase::align);
  for (int k = 0; k < p.min_filter_frames; ++k) {
    s.tag.update(offsets(0.0, p.standoff), p.filter_gain);
  }
  const TwistStep out =
      align_step(s, 1.0, offsets(0.001, p.standoff + 0.001), p, CameraModel::over_dock_wheel(g), g);
  EXPECT_EQ(out.next.phase, DockPhase::lock);
  EXPECT_EQ(out.command.vx, 0.0);
  EXPECT_EQ(out.command.vy, 0.0);
  EXPECT_EQ(out.command.omega, 0.0);
}

TEST(Align, NeedsEnoughFrames) {
  const DockingParams p;
  const RobotGeometry g;
  const TwistStep out =
      align_step(in_phase(DockPhase::align), 1.0, offsets(0.0, p.standoff), p, CameraModel::over_dock_wheel(g), g);
  EXPECT_EQ(out.next.phase, DockPhase::align);
}

TEST(Align, LateralOffsetShrinksAfterOneStep) {
  const DockingParams p;
  const RobotGeometry g;
  const CameraModel cam = CameraModel::over_dock_wheel(g);
  const Pose robot(0.0, 0.0, 0.3);
  const Pose cam_world = camera_pose(robot, cam);

  // Tag 0.05 right of the optical axis, 0.3 deep, facing the camera.
  const Vec2 fwd(std::cos(cam_world.theta), std::sin(cam_world.theta));
  const Vec2 right(std::sin(cam_world.theta), -std::cos(cam_world.theta));
  const TagPose tag{cam_world.position() + 0.3 * fwd + 0.05 * right, cam_world.theta + kPi, 1};
  const TagOffsets before = true_offsets(cam_world, tag);
  ASSERT_NEAR(before.x_offset, 0.05, 1e-12);

  const TwistStep out = align_step(in_phase(DockPhase::align), 0.0, before, p, cam, g);
  ASSERT_EQ(out.next.phase, DockPhase::align);
  const Pose moved = integrate_exact(robot, out.command, 0.05);
  const TagOffsets after = true_offsets(camera_pose(moved, cam), tag);
  EXPECT_LT(std::abs(after.x_offset), std::abs(before.x_offset));
}

TEST(Align, ServoConvergesFromRandomStarts) {
  // Closed loop with a perfect sensor: the servo must reach the standoff.
  const DockingParams p;
  const RobotGeometry g;
  const CameraModel cam = CameraModel::over_dock_wheel(g);
  dockbot::testing::Gen gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const TagPose tag{Vec2(0.0, 0.0), 0.0, 1};
    const double dev = gen.uniform(-deg_to_rad(50.0), deg_to_rad(50.0));
    const double dist = gen.uniform(0.3, 0.9);
    const Vec2 cam_at(dist * std::cos(dev), dist * std::sin(dev));
    const double cam_heading = dev + kPi + gen.uniform(-0.3, 0.3);
    // Place the robot so that its camera lands on cam_at with cam_heading.
    const double body_heading = cam_heading - cam.mount.theta;
    Pose body(0.0, 0.0, body_heading);
    const Vec2 offset = body.rotate(cam.mount.position());
    body.x = cam_at.x() - offset.x();
    body.y = cam_at.y() - offset.y();

    const double dt = 0.02;
    bool done = false;
    for (int k = 0; k < 3000 && !done; ++k) {
      const TagOffsets o = true_offsets(camera_pose(body, cam), tag);
      const Twist cmd = align_command(o, p, cam, g);
      body = integrate_exact(body, cmd, dt);
      done = std::abs(o.x_offset) < p.align_tolerance && std::abs(o.z_offset - p.standoff) < p.align_tolerance &&
             std::abs(o.relative_yaw) < p.align_yaw_tolerance;
    }
    EXPECT_TRUE(done) << "trial " << trial;
  }
}

TEST(Align, LostTagReturnsToSearch) {
  const DockingParams p;
  const RobotGeometry g;
  const CameraModel cam = CameraModel::over_dock_wheel(g);
  DockingState s = in_phase(DockPhase::align);
  s.tag.update(offsets(0.0, 0.3), p.filter_gain);
  for (int k = 0; k < p.lost_frames - 1; ++k) {
    const TwistStep out = align_step(s, 0.1 * k, std::nullopt, p, cam, g);
    EXPECT_EQ(out.next.phase, DockPhase::align);
    EXPECT_EQ(out.command.omega, 0.0);
    s = out.next;
  }
  const TwistStep out = align_step(s, 5.0, std::nullopt, p, cam, g);
  EXPECT_EQ(out.next.phase, DockPhase::search);
  EXPECT_EQ(out.next.tag.frames, 0);
  EXPECT_TRUE(is_legal_transition(DockPhase::align, DockPhase::search));
}

TEST(Align, TimesOut) {
  const DockingParams p;
  const RobotGeometry g;
  const TwistStep out =
      align_step(in_phase(DockPhase::align), p.phase_timeout, offsets(0.2, 0.3), p, CameraModel::over_dock_wheel(g), g);
  EXPECT_EQ(out.next.failure, FailureReason::timeout);
}

TEST(LockLaw, PrintedLawValues) {
  const WheelSpeeds w = lock_wheel_speeds(0.1, 2.0, RobotGeometry{}, LockLaw::cosine_forward);
  // cos(150 deg) = -sqrt(3)/2, cos(270 deg) = 0.
  EXPECT_NEAR(w[0], (-std::sqrt(3.0) / 2.0 * 0.1 + 0.12 * 2.0) / 0.05, 1e-9);
  EXPECT_NEAR(w[0], 3.068, 1e-3);
  EXPECT_NEAR(w[1], 4.8, 1e-9);
  EXPECT_EQ(w[2], 2.0);
}

TEST(LockLaw, WheelEquationVariant) {
  const RobotGeometry g;
  const WheelSpeeds w = lock_wheel_speeds(0.1, 2.0, g, LockLaw::wheel_equation);
  EXPECT_NEAR(w[0], 3.8, 1e-12);
  EXPECT_NEAR(w[1], 6.8, 1e-12);
  EXPECT_EQ(w[2], 2.0);
  // Rows 1 and 2 of the wheel equation with vy = 0.
  const WheelSpeeds rows = inverse_kinematics(Twist::body(0.1, 0.0, 2.0), g);
  EXPECT_NEAR(w[0], rows[0], 1e-12);
  EXPECT_NEAR(w[1], rows[1], 1e-12);
}

TEST(LockLaw, ZeroInputsGiveZero) {
  for (LockLaw law : {LockLaw::cosine_forward, LockLaw::wheel_equation}) {
    const WheelSpeeds w = lock_wheel_speeds(0.0, 0.0, RobotGeometry{}, law);
    EXPECT_EQ(w.max_abs(), 0.0);
  }
  EXPECT_THROW(lock_wheel_speeds(NAN, 1.0, RobotGeometry{}, LockLaw::cosine_forward), InvalidInputError);
  EXPECT_EQ(parse_lock_law(to_string(LockLaw::wheel_equation)), LockLaw::wheel_equation);
  EXPECT_THROW(parse_lock_law("spiral"), InvalidInputError);
}

TEST(LockLaw, PrintedLawStillClosesTheGap) {
  // The printed law is not an exact wheel-equation solution, but its forward
  // kinematics still pushes the hub outward along the dock axis.
  const RobotGeometry g;
  const Twist t = forward_kinematics(lock_wheel_speeds(0.1, 2.0, g, LockLaw::cosine_forward), g);
  const Vec2 hub = g.hub_center();
  const Vec2 v_hub = t.linear() + t.omega * Vec2(-hub.y(), hub.x());
  EXPECT_GT(v_hub.dot(hub.normalized()), 0.0);
}

TEST(Lock, DocksAfterRequiredRotationInContact) {
  const DockingParams p;
  const RobotGeometry g;
  const double dt = 0.01;
  DockingState s = in_phase(DockPhase::lock);
  s.hub_rotation = p.required_rotation() - 0.5 * p.lock_hub_spin * dt;
  const WheelStep out = lock_step(s, 4.0, RelativeHubPose{0.0, 0.001, 0.01}, p, g, dt);
  EXPECT_EQ(out.next.phase, DockPhase::docked);
  EXPECT_EQ(out.command.max_abs(), 0.0);
  EXPECT_TRUE(out.next.terminal());
}

TEST(Lock, NoRotationCreditBeforeContact) {
  const DockingParams p;
  const RobotGeometry g;
  DockingState s = in_phase(DockPhase::lock);
  const WheelStep out = lock_step(s, 1.0, RelativeHubPose{0.004, 0.0, 0.0}, p, g, 0.01);
  EXPECT_EQ(out.next.phase, DockPhase::lock);
  EXPECT_EQ(out.next.hub_rotation, 0.0);
  EXPECT_EQ(out.command[2], p.lock_hub_spin);
  const WheelStep touching = lock_step(s, 1.0, RelativeHubPose{0.0, 0.0, 0.0}, p, g, 0.01);
  EXPECT_NEAR(touching.next.hub_rotation, p.lock_hub_spin * 0.01, 1e-15);
}

TEST(Lock, DriftFails) {
  const DockingParams p;
  const RobotGeometry g;
  const WheelStep lateral =
      lock_step(in_phase(DockPhase::lock), 1.0, RelativeHubPose{0.0, 1.01 * p.capture_lateral, 0.0}, p, g, 0.01);
  EXPECT_EQ(lateral.next.failure, FailureReason::misalignment);
  const WheelStep angular =
      lock_step(in_phase(DockPhase::lock), 1.0, RelativeHubPose{0.0, 0.0, -1.01 * p.capture_angular}, p, g, 0.01);
  EXPECT_EQ(angular.next.failure, FailureReason::misalignment);
  EXPECT_EQ(angular.command.max_abs(), 0.0);
}

TEST(Phases, LegalTransitions) {
  using P = DockPhase;
  EXPECT_TRUE(is_legal_transition(P::search, P::align));
  EXPECT_TRUE(is_legal_transition(P::align, P::lock));
  EXPECT_TRUE(is_legal_transition(P::lock, P::docked));
  EXPECT_TRUE(is_legal_transition(P::search, P::failed));
  EXPECT_TRUE(is_legal_transition(P::lock, P::failed));
  EXPECT_FALSE(is_legal_transition(P::search, P::lock));
  EXPECT_FALSE(is_legal_transition(P::lock, P::align));
  EXPECT_FALSE(is_legal_transition(P::docked, P::failed));
  EXPECT_FALSE(is_legal_transition(P::failed, P::search));
  EXPECT_FALSE(is_legal_transition(P::align, P::align));
}

TEST(Phases, RandomStepsOnlyTakeLegalTransitions) {
  const DockingParams p;
  const RobotGeometry g;
  const CameraModel cam = CameraModel::over_dock_wheel(g);
  dockbot::testing::Gen gen(99);
  for (int run = 0; run < 200; ++run) {
    DockingState s;
    double t = 0.0;
    for (int k = 0; k < 400 && !s.terminal(); ++k) {
      t += gen.uniform(0.0, 1.0);
      TagObservation obs;
      if (gen.uniform(0.0, 1.0) < 0.6) {
        obs = offsets(gen.uniform(-0.01, 0.01), p.standoff + gen.uniform(-0.01, 0.01), gen.uniform(-0.05, 0.05));
      }
      DockingState next;
      switch (s.phase) {
        case DockPhase::search:
          next = search_step(s, t, obs, p).next;
          break;
        case DockPhase::align:
          next = align_step(s, t, obs, p, cam, g).next;
          break;
        default:
          next = lock_step(s, t, RelativeHubPose{gen.uniform(-0.01, 0.01), gen.uniform(-0.01, 0.01), 0.0}, p, g,
                           gen.uniform(0.0, 2.0))
                     .next;
      }
      if (next.phase != s.phase) {
        EXPECT_TRUE(is_legal_transition(s.phase, next.phase))
            << to_string(s.phase) << " -> " << to_string(next.phase);
        EXPECT_EQ(next.phase_entry_time, t);
      }
      s = next;
    }
  }
}

TEST(HubSpec, Metadata) {
  const DockHubSpec hub;
  EXPECT_EQ(hub.designation, "M56x5.5");
  EXPECT_NEAR(hub.engagement_length(3), 0.0165, 1e-15);
  EXPECT_LT(hub.minor_diameter, hub.pitch_diameter);
  EXPECT_LT(hub.pitch_diameter, hub.major_diameter);
}

TEST(DockingParams, Validation) {
  DockingParams p;
  EXPECT_NO_THROW(p.validate());
  p.required_turns = 0;
  EXPECT_THROW(p.validate(), InvalidInputError);
  DockingParams q;
  q.filter_gain = 0.0;
  EXPECT_THROW(q.validate(), InvalidInputError);
}
