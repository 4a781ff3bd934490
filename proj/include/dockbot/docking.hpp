#pragma once

// Three-phase autonomous docking: rotate in place until the partner's hub tag
// is seen (search), servo the camera onto the tag normal at a short standoff
// (align), then press forward while spinning the dock wheel to drive the
// screw thread home (lock).

#include <optional>
#include <string>
#include <string_view>

#include "dockbot/kinematics.hpp"
#include "dockbot/perception.hpp"

namespace dockbot {

enum class DockPhase { search, align, lock, docked, failed };
enum class FailureReason { timeout, tag_lost, misalignment };

std::string_view to_string(DockPhase p);
std::string_view to_string(FailureReason r);

/// Whether `from -> to` is an allowed phase change (self-loops are not transitions).
bool is_legal_transition(DockPhase from, DockPhase to);

/// Wheel law used while screwing the hub in.
///  - cosine_forward: non-dock wheels get (1/r)(cos(a_i) * A + L * spin), the
///    law as printed for the physical robot.
///  - wheel_equation: non-dock wheels get (1/r)(-sin(a_i) * A + L * spin), i.e.
///    the wheel equation rows with vy = 0.
/// Both command the dock wheel at exactly `spin`.
enum class LockLaw { cosine_forward, wheel_equation };

std::string_view to_string(LockLaw l);
LockLaw parse_lock_law(std::string_view name);

struct DockingParams {
  double search_spin_rate = 0.5;                 // rad/s
  double align_tolerance = 0.003;                // m, on |x_offset| and |z_offset - standoff|
  double align_yaw_tolerance = deg_to_rad(2.0);  // rad, on |relative_yaw|
  double standoff = 0.036;                       // m, camera-to-tag depth that ends alignment
  double lock_forward_speed = 0.1;               // A, m/s
  double lock_hub_spin = 2.0;                    // rad/s
  int required_turns = 3;
  double capture_lateral = 0.008;                // m
  double capture_angular = deg_to_rad(5.0);      // rad
  double capture_depth = 0.012;                  // m, bevel depth inside which the hub is guided
  double phase_timeout = 60.0;                   // s
  LockLaw lock_law = LockLaw::cosine_forward;

  double k_lateral = 1.5;   // 1/s
  double k_depth = 1.0;     // 1/s
  double k_bearing = 2.0;   // 1/s
  int lost_frames = 20;     // consecutive misses in align before searching again
  double filter_gain = 0.05;  // per-frame EMA weight of a new tag observation
  int min_filter_frames = 10;

  void validate() const;
  double required_rotation() const;  // required_turns * 2 pi
};

/// Screw-lock thread metadata. Lengths in meters.
struct DockHubSpec {
  enum class Gender { male, female };

  std::string thread_type = "ISO metric thread";
  std::string designation = "M56x5.5";
  double nominal_diameter = 0.056;
  double pitch = 0.0055;
  double major_diameter = 0.056000;
  double pitch_diameter = 0.053917;
  double minor_diameter = 0.051835;
  double theoretical_height = 0.004763;  // H
  double effective_height = 0.003372;    // h
  double flank_angle = deg_to_rad(60.0);
  std::string tolerance_class = "6g/6H";
  Gender gender = Gender::male;

  /// Axial travel of a fully engaged joint after `turns` revolutions.
  double engagement_length(int turns) const { return turns * pitch; }
};

/// Exponentially smoothed tag measurement.
struct FilteredTag {
  double x_offset = 0.0;
  double z_offset = 0.0;
  double relative_yaw = 0.0;
  int frames = 0;

  void reset() { *this = FilteredTag{}; }
  void update(const TagOffsets& obs, double gain);
};

struct DockingState {
  DockPhase phase = DockPhase::search;
  double phase_entry_time = 0.0;
  double hub_rotation = 0.0;  // rad, accumulated while threads are engaged
  std::optional<FailureReason> failure;
  int missed_frames = 0;
  bool tag_seen = false;
  FilteredTag tag;

  bool terminal() const { return phase == DockPhase::docked || phase == DockPhase::failed; }
};

/// Male hub relative to the female hub, in the female hub frame.
struct RelativeHubPose {
  double gap = 0.0;      // m, along the female face normal; <= 0 means faces in contact
  double lateral = 0.0;  // m, across the normal
  double angular = 0.0;  // rad, misalignment of the two hub axes
};

struct TwistStep {
  Twist command;  // body frame
  DockingState next;
};

struct WheelStep {
  WheelSpeeds command;
  DockingState next;
};

TwistStep search_step(const DockingState& state, double t, const TagObservation& obs,
                      const DockingParams& params);

TwistStep align_step(const DockingState& state, double t, const TagObservation& obs,
                     const DockingParams& params, const CameraModel& camera, const RobotGeometry& geom);

/// Pure servo law used by align_step, from a (filtered) tag estimate to a body twist.
Twist align_command(const TagOffsets& tag, const DockingParams& params, const CameraModel& camera,
                    const RobotGeometry& geom);

WheelSpeeds lock_wheel_speeds(double forward_speed, double hub_spin, const RobotGeometry& geom, LockLaw law);

WheelStep lock_step(const DockingState& state, double t, const RelativeHubPose& hub, const DockingParams& params,
                    const RobotGeometry& geom, double dt);

}  // namespace dockbot
