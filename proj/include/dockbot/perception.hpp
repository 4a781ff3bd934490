#pragma once

// Parametric fiducial-tag sensor. There is no image formation: a tag is seen
// when it is inside the camera's field of view and range, is not viewed too
// obliquely, and a per-frame detection draw for the current lighting succeeds.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "dockbot/kinematics.hpp"
#include "dockbot/rng.hpp"

namespace dockbot {

enum class Lighting { bright = 0, moderate = 1, low = 2, dark = 3 };

std::string_view to_string(Lighting l);
/// Throws InvalidInputError on unknown names.
Lighting parse_lighting(std::string_view name);

struct LightingProfile {
  double detection_probability = 1.0;
  double offset_sigma = 0.0;  // m, on x_offset and z_offset
  double yaw_sigma = 0.0;     // rad, on the relative tag yaw
};

class LightingTable {
 public:
  LightingTable();  // bright 0.99/2 mm, moderate 0.97/4 mm, low 0.90/8 mm, dark 0

  const LightingProfile& operator[](Lighting l) const { return levels_[static_cast<std::size_t>(l)]; }
  LightingProfile& operator[](Lighting l) { return levels_[static_cast<std::size_t>(l)]; }

  /// dark must be 0; bright >= moderate >= low > 0; sigmas >= 0.
  void validate() const;

  /// Same table with every sigma forced to zero.
  LightingTable noiseless() const;

 private:
  std::array<LightingProfile, 4> levels_;
};

enum class CameraPitch { forward, down };

struct CameraModel {
  Pose mount;                                 // camera frame in the body frame; optical axis = mount +x
  double field_of_view = deg_to_rad(70.0);    // horizontal, rad
  double max_range = 1.5;                     // m
  CameraPitch pitch = CameraPitch::forward;

  void validate() const;

  /// Camera mounted over the dock wheel, looking out along its axle.
  static CameraModel over_dock_wheel(const RobotGeometry& geom);
};

/// World pose of the camera frame for a robot at `owner`.
Pose camera_pose(const Pose& owner, const CameraModel& camera);

struct TagPose {
  Vec2 position{0.0, 0.0};  // world, m
  double normal = 0.0;      // world direction of the outward face normal, rad
  int owner = 0;
};

/// Tag printed on the dock-hub face of a robot at `owner_pose`.
TagPose tag_on_hub(const Pose& owner_pose, const RobotGeometry& geom, int owner_id);

/// Angle between the tag's face normal and the line from the tag to `viewer`.
double angular_deviation(const Vec2& viewer, const TagPose& tag);

/// Camera-frame measurement of a detected tag. Camera frame: +z along the
/// optical axis, +x to the right of it.
struct TagOffsets {
  double x_offset = 0.0;    // m, lateral
  double z_offset = 0.0;    // m, depth
  double bearing = 0.0;     // rad, atan2(x_offset, z_offset)
  double relative_yaw = 0.0;  // rad, direction of the reversed tag normal; 0 when viewed head-on
};

/// Empty when the tag was not detected.
using TagObservation = std::optional<TagOffsets>;

struct PerceptionParams {
  double deviation_limit = deg_to_rad(60.0);
};

/// Geometric (noise-free) camera-frame offsets of the tag, with no gating.
TagOffsets true_offsets(const Pose& camera_world, const TagPose& tag);

/// Draws a fixed number of variates from `rng` on every call, whether or not
/// the tag is visible, so a given rng state yields the same draw for any
/// geometry.
TagObservation observe_tag(const Pose& camera_world, const TagPose& tag, const CameraModel& camera,
                           const LightingProfile& light, const PerceptionParams& params, Rng& rng);

}  // namespace dockbot
