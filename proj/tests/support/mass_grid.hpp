#pragma once

// Brute-force mass properties from point masses. Each module is treated as a
// uniform disk whose radius reproduces its inertia (I = m R^2 / 2) and
// sampled on a square grid clipped to the disk.

#include <cmath>
#include <span>
#include <vector>

#include "dockbot/kinematics.hpp"

namespace dockbot::testing {

struct PointMass {
  Vec2 at;
  double mass;
};

inline std::vector<PointMass> disk_grid(const Vec2& center, double mass, double inertia, int per_side) {
  const double radius = std::sqrt(2.0 * inertia / mass);
  const double h = 2.0 * radius / per_side;
  std::vector<PointMass> pts;
  for (int i = 0; i < per_side; ++i) {
    for (int j = 0; j < per_side; ++j) {
      const Vec2 local(-radius + (i + 0.5) * h, -radius + (j + 0.5) * h);
      if (local.squaredNorm() <= radius * radius) {
        pts.push_back({center + local, 0.0});
      }
    }
  }
  for (auto& p : pts) {
    p.mass = mass / static_cast<double>(pts.size());
  }
  return pts;
}

struct GridProperties {
  double mass = 0.0;
  Vec2 center{0.0, 0.0};
  double inertia = 0.0;
};

inline GridProperties sum_points(std::span<const PointMass> pts) {
  GridProperties g;
  for (const auto& p : pts) {
    g.mass += p.mass;
    g.center += p.mass * p.at;
  }
  g.center /= g.mass;
  for (const auto& p : pts) {
    g.inertia += p.mass * (p.at - g.center).squaredNorm();
  }
  return g;
}

}  // namespace dockbot::testing
