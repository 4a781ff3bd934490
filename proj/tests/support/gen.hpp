#pragma once

// Small hand-rolled generators for property tests. Fixed seeds so a failure
// reproduces; widen `count` locally when hunting.

#include <cstdint>
#include <random>

#include "dockbot/kinematics.hpp"

namespace dockbot::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Twist body_twist(double v = 1.0, double w = 3.0) {
    return Twist::body(uniform(-v, v), uniform(-v, v), uniform(-w, w));
  }

  Pose pose(double extent = 5.0) {
    return {uniform(-extent, extent), uniform(-extent, extent), uniform(-3.14159, 3.14159)};
  }

  /// Geometry with jittered dimensions and mount angles, never near singular.
  RobotGeometry geometry() {
    RobotGeometry g;
    g.wheel_radius = uniform(0.02, 0.1);
    g.center_offset = uniform(0.08, 0.3);
    g.mass = uniform(1.0, 10.0);
    g.body_inertia = uniform(0.01, 0.2);
    for (auto& a : g.mount_angles) {
      a += uniform(-0.2, 0.2);
    }
    return g;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dockbot::testing
