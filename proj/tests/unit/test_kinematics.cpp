#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dockbot/errors.hpp"
#include "dockbot/kinematics.hpp"
#include "gen.hpp"

using namespace dockbot;
using dockbot::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

// Wheel speeds straight from the row formula, no matrices.
WheelSpeeds wheel_oracle(const Twist& t, const RobotGeometry& g) {
  WheelSpeeds w;
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = g.mount_angles[i];
    w[i] = (-std::sin(a) * t.vx + std::cos(a) * t.vy + g.center_offset * t.omega) / g.wheel_radius;
  }
  return w;
}

}  // namespace

TEST(Kinematics, ForwardUnitTwist) {
  // r = 0.05, L = 0.12, mounts 150/270/30 deg. Hand values:
  //   wheel 1: -sin150 / r = -10, wheel 2: -sin270 / r = 20, wheel 3: -sin30 / r = -10
  const WheelSpeeds w = inverse_kinematics(Twist::body(1.0, 0.0, 0.0), RobotGeometry{});
  EXPECT_NEAR(w[0], -10.0, 1e-12);
  EXPECT_NEAR(w[1], 20.0, 1e-12);
  EXPECT_NEAR(w[2], -10.0, 1e-12);
}

TEST(Kinematics, PureRotationWheelsAreExactlyEqual) {
  const RobotGeometry g;
  for (double omega : {0.3, -1.7, 2.0, 1e-6}) {
    const WheelSpeeds w = inverse_kinematics(Twist::body(0.0, 0.0, omega), g);
    EXPECT_EQ(w[0], w[1]);
    EXPECT_EQ(w[1], w[2]);
    EXPECT_NEAR(w[0], g.center_offset * omega / g.wheel_radius, 1e-15);
  }
}

TEST(Kinematics, EqualWheelsGivePureRotation) {
  const RobotGeometry g;
  const double phi = g.center_offset / g.wheel_radius;
  const Twist t = forward_kinematics(WheelSpeeds{{phi, phi, phi}}, g);
  EXPECT_NEAR(t.vx, 0.0, 1e-12);
  EXPECT_NEAR(t.vy, 0.0, 1e-12);
  EXPECT_NEAR(t.omega, 1.0, 1e-12);
  EXPECT_EQ(t.frame, Frame::body);
}

TEST(Kinematics, InverseMatchesRowFormula) {
  Gen gen(11);
  for (int k = 0; k < 500; ++k) {
    const RobotGeometry g = gen.geometry();
    const Twist t = gen.body_twist();
    const WheelSpeeds w = inverse_kinematics(t, g);
    const WheelSpeeds o = wheel_oracle(t, g);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(w[i], o[i], 1e-12 * (1.0 + std::abs(o[i])));
    }
  }
}

TEST(Kinematics, RoundTripRandomTwists) {
  Gen gen(1);
  const RobotGeometry g;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Twist t = gen.body_twist();
    const Twist back = forward_kinematics(inverse_kinematics(t, g), g);
    worst = std::max({worst, std::abs(back.vx - t.vx), std::abs(back.vy - t.vy), std::abs(back.omega - t.omega)});
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Kinematics, RoundTripJitteredGeometry) {
  Gen gen(2);
  for (int k = 0; k < 300; ++k) {
    const RobotGeometry g = gen.geometry();
    const Twist t = gen.body_twist();
    const Twist back = forward_kinematics(inverse_kinematics(t, g), g);
    EXPECT_NEAR(back.vx, t.vx, 1e-9);
    EXPECT_NEAR(back.vy, t.vy, 1e-9);
    EXPECT_NEAR(back.omega, t.omega, 1e-9);
  }
}

TEST(Kinematics, InverseIsLinear) {
  Gen gen(3);
  const RobotGeometry g;
  for (int k = 0; k < 500; ++k) {
    const Twist a = gen.body_twist();
    const Twist b = gen.body_twist();
    const double s = gen.uniform(-3.0, 3.0);
    const Twist combo = Twist::body(s * a.vx + b.vx, s * a.vy + b.vy, s * a.omega + b.omega);
    const WheelSpeeds wa = inverse_kinematics(a, g);
    const WheelSpeeds wb = inverse_kinematics(b, g);
    const WheelSpeeds wc = inverse_kinematics(combo, g);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(wc[i], s * wa[i] + wb[i], 1e-12 * (1.0 + std::abs(wc[i])));
    }
  }
}

TEST(Kinematics, WheelModelAgreesWithFreeFunctions) {
  Gen gen(4);
  for (int k = 0; k < 200; ++k) {
    const RobotGeometry g = gen.geometry();
    const WheelModel m(g);
    const Twist t = gen.body_twist();
    const WheelSpeeds a = m.inverse(t);
    const WheelSpeeds b = inverse_kinematics(t, g);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-12 * (1.0 + std::abs(b[i])));
    }
    const Twist f = m.forward(b);
    EXPECT_NEAR(f.vx, t.vx, 1e-9);
    EXPECT_NEAR(f.vy, t.vy, 1e-9);
    EXPECT_NEAR(f.omega, t.omega, 1e-9);
  }
}

TEST(Kinematics, RejectsBadInput) {
  const RobotGeometry g;
  EXPECT_THROW(inverse_kinematics(Twist::world(1.0, 0.0, 0.0), g), FrameError);
  EXPECT_THROW(inverse_kinematics(Twist::body(NAN, 0.0, 0.0), g), InvalidInputError);
  EXPECT_THROW(forward_kinematics(WheelSpeeds{{INFINITY, 0.0, 0.0}}, g), InvalidInputError);

  RobotGeometry singular;
  singular.mount_angles = {0.3, 0.3, 2.0};  // two identical rows
  EXPECT_THROW(singular.validate(), GeometryError);
  EXPECT_THROW(forward_kinematics(WheelSpeeds{}, singular), GeometryError);

  RobotGeometry flat;
  flat.wheel_radius = 0.0;
  EXPECT_THROW(flat.validate(), InvalidInputError);
  RobotGeometry wheel4;
  wheel4.dock_wheel_index = 4;
  EXPECT_THROW(wheel4.validate(), InvalidInputError);
}

TEST(Kinematics, SaturateKeepsDirection) {
  const WheelSpeeds w{{4.0, -20.0, 10.0}};
  const WheelSpeeds s = saturate(w, 10.0);
  EXPECT_DOUBLE_EQ(s[1], -10.0);
  EXPECT_DOUBLE_EQ(s[0] / s[2], w[0] / w[2]);
  EXPECT_EQ(saturate(w, 25.0), w);
}

TEST(Frames, QuarterTurn) {
  const Pose p(0.0, 0.0, kPi / 2.0);
  const Twist w = body_to_world(Twist::body(1.0, 0.0, 0.0), p);
  EXPECT_NEAR(w.vx, 0.0, 1e-15);
  EXPECT_NEAR(w.vy, 1.0, 1e-15);
  EXPECT_EQ(w.frame, Frame::world);
}

TEST(Frames, RoundTrip) {
  Gen gen(5);
  for (int k = 0; k < 1000; ++k) {
    const Pose p = gen.pose();
    const Twist t = gen.body_twist();
    const Twist back = world_to_body(body_to_world(t, p), p);
    EXPECT_NEAR(back.vx, t.vx, 1e-12);
    EXPECT_NEAR(back.vy, t.vy, 1e-12);
    EXPECT_EQ(back.omega, t.omega);
  }
}

TEST(Frames, MismatchThrows) {
  EXPECT_THROW(body_to_world(Twist::world(1.0, 0.0, 0.0), Pose{}), FrameError);
  EXPECT_THROW(world_to_body(Twist::body(1.0, 0.0, 0.0), Pose{}), FrameError);
}

TEST(Frames, PoseCompositionInverts) {
  Gen gen(6);
  for (int k = 0; k < 500; ++k) {
    const Pose a = gen.pose();
    const Pose b = gen.pose();
    const Pose rel = relative_pose(a, b);
    const Pose again = compose_poses(a, rel);
    EXPECT_NEAR(again.x, b.x, 1e-12);
    EXPECT_NEAR(again.y, b.y, 1e-12);
    EXPECT_NEAR(wrap_angle(again.theta - b.theta), 0.0, 1e-12);
  }
}

TEST(Frames, WrapAngleRange) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3.0 * kPi / 2.0), -kPi / 2.0, 1e-15);
  Gen gen(7);
  for (int k = 0; k < 1000; ++k) {
    const double a = gen.uniform(-50.0, 50.0);
    const double w = wrap_angle(a);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_NEAR(std::remainder(a - w, 2.0 * kPi), 0.0, 1e-12);
  }
}

TEST(Integration, ConstantVelocityIsExact) {
  // 2000 steps of 0.005 s at 0.1 m/s.
  Pose p;
  const Twist t = Twist::body(0.1, 0.0, 0.0);
  for (int k = 0; k < 2000; ++k) {
    p = integrate_semi_implicit(p, t, 0.005);
  }
  EXPECT_NEAR(p.x, 1.0, 1e-9);
  EXPECT_EQ(p.y, 0.0);
}

TEST(Integration, ExactArcMatchesClosedForm) {
  // Body speed v with rate w traces a circle of radius v / w.
  const double v = 0.2;
  const double w = 0.5;
  const double t = 2.0;
  const Pose p = integrate_exact(Pose{}, Twist::body(v, 0.0, w), t);
  EXPECT_NEAR(p.x, v / w * std::sin(w * t), 1e-12);
  EXPECT_NEAR(p.y, v / w * (1.0 - std::cos(w * t)), 1e-12);
  EXPECT_NEAR(p.theta, w * t, 1e-12);
}

TEST(Integration, SemiImplicitConvergesToExact) {
  const Twist tw = Twist::body(0.2, -0.1, 0.7);
  const Pose exact = integrate_exact(Pose(1.0, 2.0, 0.3), tw, 1.0);
  double previous = 1e9;
  for (int n : {100, 1000, 10000}) {
    Pose p(1.0, 2.0, 0.3);
    for (int k = 0; k < n; ++k) {
      p = integrate_semi_implicit(p, tw, 1.0 / n);
    }
    const double err = std::hypot(p.x - exact.x, p.y - exact.y);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-4);
}
