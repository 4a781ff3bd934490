#include "dockbot/perception.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dockbot/errors.hpp"

namespace dockbot {

std::string_view to_string(Lighting l) {
  switch (l) {
    case Lighting::bright:
      return "bright";
    case Lighting::moderate:
      return "moderate";
    case Lighting::low:
      return "low";
    case Lighting::dark:
      return "dark";
  }
  return "unknown";
}

Lighting parse_lighting(std::string_view name) {
  for (Lighting l : {Lighting::bright, Lighting::moderate, Lighting::low, Lighting::dark}) {
    if (to_string(l) == name) {
      return l;
    }
  }
  throw InvalidInputError("unknown lighting level '" + std::string(name) + "'");
}

LightingTable::LightingTable()
    : levels_{LightingProfile{0.99, 0.002, deg_to_rad(0.5)},
              LightingProfile{0.97, 0.004, deg_to_rad(1.0)},
              LightingProfile{0.90, 0.008, deg_to_rad(2.0)},
              LightingProfile{0.0, 0.008, deg_to_rad(2.0)}} {}

void LightingTable::validate() const {
  for (const auto& p : levels_) {
    if (!(p.detection_probability >= 0.0 && p.detection_probability <= 1.0)) {
      throw InvalidInputError("detection probability must lie in [0, 1]");
    }
    if (!(p.offset_sigma >= 0.0 && p.yaw_sigma >= 0.0)) {
      throw InvalidInputError("observation noise sigmas must be >= 0");
    }
  }
  const auto& t = *this;
  if (t[Lighting::dark].detection_probability != 0.0) {
    throw InvalidInputError("detection probability in the dark must be 0");
  }
  if (!(t[Lighting::bright].detection_probability >= t[Lighting::moderate].detection_probability &&
        t[Lighting::moderate].detection_probability >= t[Lighting::low].detection_probability &&
        t[Lighting::low].detection_probability > 0.0)) {
    throw InvalidInputError("detection probabilities must satisfy bright >= moderate >= low > 0");
  }
}

LightingTable LightingTable::noiseless() const {
  LightingTable out = *this;
  for (auto& p : out.levels_) {
    p.offset_sigma = 0.0;
    p.yaw_sigma = 0.0;
  }
  return out;
}

void CameraModel::validate() const {
  if (!(field_of_view > 0.0 && field_of_view < std::numbers::pi)) {
    throw InvalidInputError("camera field_of_view must lie in (0, pi)");
  }
  if (!(max_range > 0.0)) {
    throw InvalidInputError("camera max_range must be > 0");
  }
}

CameraModel CameraModel::over_dock_wheel(const RobotGeometry& geom) {
  const double a = geom.dock_axis_angle();
  CameraModel cam;
  cam.mount = Pose(geom.center_offset * std::cos(a), geom.center_offset * std::sin(a), a);
  return cam;
}

Pose camera_pose(const Pose& owner, const CameraModel& camera) {
  return compose_poses(owner, camera.mount);
}

TagPose tag_on_hub(const Pose& owner_pose, const RobotGeometry& geom, int owner_id) {
  return {owner_pose.transform(geom.hub_center()), wrap_angle(owner_pose.theta + geom.dock_axis_angle()),
          owner_id};
}

double angular_deviation(const Vec2& viewer, const TagPose& tag) {
  const Vec2 to_viewer = viewer - tag.position;
  const double dist = to_viewer.norm();
  if (dist == 0.0) {
    return 0.0;
  }
  const Vec2 n(std::cos(tag.normal), std::sin(tag.normal));
  return std::acos(std::clamp(n.dot(to_viewer) / dist, -1.0, 1.0));
}

TagOffsets true_offsets(const Pose& camera_world, const TagPose& tag) {
  const Vec2 forward(std::cos(camera_world.theta), std::sin(camera_world.theta));
  const Vec2 right(std::sin(camera_world.theta), -std::cos(camera_world.theta));
  const Vec2 d = tag.position - camera_world.position();
  const Vec2 reversed_normal(-std::cos(tag.normal), -std::sin(tag.normal));

  TagOffsets o;
  o.x_offset = d.dot(right);
  o.z_offset = d.dot(forward);
  o.bearing = std::atan2(o.x_offset, o.z_offset);
  o.relative_yaw = std::atan2(reversed_normal.dot(right), reversed_normal.dot(forward));
  return o;
}

TagObservation observe_tag(const Pose& camera_world, const TagPose& tag, const CameraModel& camera,
                           const LightingProfile& light, const PerceptionParams& params, Rng& rng) {
  const double detect_draw = uniform01(rng);
  const double nx = standard_normal(rng);
  const double nz = standard_normal(rng);
  const double nyaw = standard_normal(rng);

  const TagOffsets truth = true_offsets(camera_world, tag);
  const double range = std::hypot(truth.x_offset, truth.z_offset);
  const bool in_view = truth.z_offset > 0.0 && std::abs(truth.bearing) <= 0.5 * camera.field_of_view &&
                       range <= camera.max_range;
  if (!in_view) {
    return std::nullopt;
  }
  if (angular_deviation(camera_world.position(), tag) > params.deviation_limit) {
    return std::nullopt;
  }
  if (!(detect_draw < light.detection_probability)) {
    return std::nullopt;
  }

  TagOffsets seen;
  seen.x_offset = truth.x_offset + light.offset_sigma * nx;
  seen.z_offset = truth.z_offset + light.offset_sigma * nz;
  seen.bearing = std::atan2(seen.x_offset, seen.z_offset);
  seen.relative_yaw = wrap_angle(truth.relative_yaw + light.yaw_sigma * nyaw);
  return seen;
}

}  // namespace dockbot
