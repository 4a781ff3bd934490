#include "dockbot/docking.hpp"

#include <cmath>
#include <string>

#include "dockbot/errors.hpp"

namespace dockbot {

namespace {

DockingState enter(DockingState s, DockPhase phase, double t) {
  s.phase = phase;
  s.phase_entry_time = t;
  s.missed_frames = 0;
  return s;
}

DockingState fail(DockingState s, FailureReason reason, double t) {
  s = enter(std::move(s), DockPhase::failed, t);
  s.failure = reason;
  return s;
}

bool timed_out(const DockingState& s, double t, const DockingParams& p) {
  return t - s.phase_entry_time >= p.phase_timeout;
}

void require_phase(const DockingState& s, DockPhase expected, const char* op) {
  if (s.phase != expected) {
    throw PhaseError(std::string(op) + " called in phase " + std::string(to_string(s.phase)));
  }
}

}  // namespace

std::string_view to_string(DockPhase p) {
  switch (p) {
    case DockPhase::search:
      return "search";
    case DockPhase::align:
      return "align";
    case DockPhase::lock:
      return "lock";
    case DockPhase::docked:
      return "docked";
    case DockPhase::failed:
      return "failed";
  }
  return "unknown";
}

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::timeout:
      return "timeout";
    case FailureReason::tag_lost:
      return "tag_lost";
    case FailureReason::misalignment:
      return "misalignment";
  }
  return "unknown";
}

std::string_view to_string(LockLaw l) {
  return l == LockLaw::cosine_forward ? "cosine_forward" : "wheel_equation";
}

LockLaw parse_lock_law(std::string_view name) {
  if (name == "cosine_forward") {
    return LockLaw::cosine_forward;
  }
  if (name == "wheel_equation") {
    return LockLaw::wheel_equation;
  }
  throw InvalidInputError("unknown lock law '" + std::string(name) + "'");
}

bool is_legal_transition(DockPhase from, DockPhase to) {
  if (from == DockPhase::docked || from == DockPhase::failed || from == to) {
    return false;
  }
  if (to == DockPhase::failed) {
    return true;
  }
  switch (from) {
    case DockPhase::search:
      return to == DockPhase::align;
    case DockPhase::align:
      return to == DockPhase::lock || to == DockPhase::search;
    case DockPhase::lock:
      return to == DockPhase::docked;
    default:
      return false;
  }
}

void DockingParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw InvalidInputError(std::string(name) + " must be > 0");
    }
  };
  positive(search_spin_rate, "search_spin_rate");
  positive(align_tolerance, "align_tolerance");
  positive(align_yaw_tolerance, "align_yaw_tolerance");
  positive(standoff, "standoff");
  positive(lock_forward_speed, "lock_forward_speed");
  positive(lock_hub_spin, "lock_hub_spin");
  positive(capture_lateral, "capture_lateral");
  positive(capture_angular, "capture_angular");
  positive(capture_depth, "capture_depth");
  positive(phase_timeout, "phase_timeout");
  positive(k_lateral, "k_lateral");
  positive(k_depth, "k_depth");
  positive(k_bearing, "k_bearing");
  if (required_turns < 1) {
    throw InvalidInputError("required_turns must be >= 1");
  }
  if (lost_frames < 1 || min_filter_frames < 1) {
    throw InvalidInputError("lost_frames and min_filter_frames must be >= 1");
  }
  if (!(filter_gain > 0.0 && filter_gain <= 1.0)) {
    throw InvalidInputError("filter_gain must lie in (0, 1]");
  }
}

double DockingParams::required_rotation() const { return required_turns * 2.0 * std::numbers::pi; }

void FilteredTag::update(const TagOffsets& obs, double gain) {
  if (frames == 0) {
    x_offset = obs.x_offset;
    z_offset = obs.z_offset;
    relative_yaw = obs.relative_yaw;
  } else {
    x_offset += gain * (obs.x_offset - x_offset);
    z_offset += gain * (obs.z_offset - z_offset);
    relative_yaw += gain * wrap_angle(obs.relative_yaw - relative_yaw);
  }
  ++frames;
}

TwistStep search_step(const DockingState& state, double t, const TagObservation& obs,
                      const DockingParams& params) {
  require_phase(state, DockPhase::search, "search_step");
  if (timed_out(state, t, params)) {
    return {Twist{}, fail(state, state.tag_seen ? FailureReason::tag_lost : FailureReason::timeout, t)};
  }
  if (obs) {
    DockingState next = enter(state, DockPhase::align, t);
    next.tag_seen = true;
    next.tag.reset();
    next.tag.update(*obs, params.filter_gain);
    return {Twist{}, next};
  }
  return {Twist::body(0.0, 0.0, params.search_spin_rate), state};
}

Twist align_command(const TagOffsets& tag, const DockingParams& params, const CameraModel& camera,
                    const RobotGeometry& geom) {
  // Camera-frame components: first = right (x), second = forward (z).
  const double s = std::sin(tag.relative_yaw);
  const double c = std::cos(tag.relative_yaw);
  const Vec2 normal(-s, -c);   // tag face normal
  const Vec2 across(c, -s);    // in the tag plane
  const Vec2 cam_from_tag(-tag.x_offset, -tag.z_offset);

  const double axial = cam_from_tag.dot(normal);
  const double lateral = cam_from_tag.dot(across);
  const Vec2 v_cam = -params.k_depth * (axial - params.standoff) * normal - params.k_lateral * lateral * across;
  const double omega = -params.k_bearing * std::atan2(tag.x_offset, tag.z_offset);

  const double m = camera.mount.theta;
  const Vec2 forward_b(std::cos(m), std::sin(m));
  const Vec2 right_b(std::sin(m), -std::cos(m));
  const Vec2 v_cam_body = v_cam.x() * right_b + v_cam.y() * forward_b;
  const Vec2 r = camera.mount.position();
  const Vec2 v_center = v_cam_body - omega * Vec2(-r.y(), r.x());

  Twist cmd = Twist::body(v_center.x(), v_center.y(), omega);
  const double peak = inverse_kinematics(cmd, geom).max_abs();
  if (peak > geom.max_wheel_speed) {
    const double k = geom.max_wheel_speed / peak;
    cmd = Twist::body(cmd.vx * k, cmd.vy * k, cmd.omega * k);
  }
  return cmd;
}

TwistStep align_step(const DockingState& state, double t, const TagObservation& obs,
                     const DockingParams& params, const CameraModel& camera, const RobotGeometry& geom) {
  require_phase(state, DockPhase::align, "align_step");
  if (timed_out(state, t, params)) {
    return {Twist{}, fail(state, FailureReason::timeout, t)};
  }
  DockingState next = state;
  if (!obs) {
    if (++next.missed_frames >= params.lost_frames) {
      next = enter(next, DockPhase::search, t);
      next.tag.reset();
    }
    return {Twist{}, next};
  }
  next.missed_frames = 0;
  next.tag.update(*obs, params.filter_gain);

  const FilteredTag& f = next.tag;
  const bool converged = f.frames >= params.min_filter_frames &&
                         std::abs(f.x_offset) <= params.align_tolerance &&
                         std::abs(f.z_offset - params.standoff) <= params.align_tolerance &&
                         std::abs(f.relative_yaw) <= params.align_yaw_tolerance;
  if (converged) {
    return {Twist{}, enter(next, DockPhase::lock, t)};
  }
  TagOffsets estimate;
  estimate.x_offset = f.x_offset;
  estimate.z_offset = f.z_offset;
  estimate.bearing = std::atan2(f.x_offset, f.z_offset);
  estimate.relative_yaw = f.relative_yaw;
  return {align_command(estimate, params, camera, geom), next};
}

WheelSpeeds lock_wheel_speeds(double forward_speed, double hub_spin, const RobotGeometry& geom, LockLaw law) {
  if (!std::isfinite(forward_speed) || !std::isfinite(hub_spin)) {
    throw InvalidInputError("lock_wheel_speeds: non-finite input");
  }
  geom.validate();
  const auto dock = static_cast<std::size_t>(geom.dock_wheel_index - 1);
  WheelSpeeds out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i == dock) {
      out[i] = hub_spin;
      continue;
    }
    const double a = geom.mount_angles[i];
    const double drive = law == LockLaw::cosine_forward ? std::cos(a) : -std::sin(a);
    out[i] = (drive * forward_speed + geom.center_offset * hub_spin) / geom.wheel_radius;
  }
  return out;
}

WheelStep lock_step(const DockingState& state, double t, const RelativeHubPose& hub, const DockingParams& params,
                    const RobotGeometry& geom, double dt) {
  require_phase(state, DockPhase::lock, "lock_step");
  if (timed_out(state, t, params)) {
    return {WheelSpeeds{}, fail(state, FailureReason::timeout, t)};
  }
  if (std::abs(hub.lateral) > params.capture_lateral || std::abs(hub.angular) > params.capture_angular) {
    return {WheelSpeeds{}, fail(state, FailureReason::misalignment, t)};
  }
  DockingState next = state;
  const bool in_contact = hub.gap <= 0.0;
  if (in_contact) {
    next.hub_rotation += std::abs(params.lock_hub_spin) * dt;
  }
  if (in_contact && next.hub_rotation >= params.required_rotation()) {
    return {WheelSpeeds{}, enter(next, DockPhase::docked, t)};
  }
  return {lock_wheel_speeds(params.lock_forward_speed, params.lock_hub_spin, geom, params.lock_law), next};
}

}  // namespace dockbot
