#include "dockbot/object.hpp"

#include <algorithm>
#include <cmath>

#include "dockbot/errors.hpp"

namespace dockbot {

namespace {

// Largest (natural frequency * substep) accepted.
constexpr double kMaxPhasePerSubstep = 0.1;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

void ObjectCoupling::validate() const {
  if (!(stiffness > 0.0 && damping > 0.0 && object_mass > 0.0 && object_inertia > 0.0)) {
    throw InvalidInputError("coupling stiffness, damping, object mass and inertia must be > 0");
  }
}

ObjectCoupling ObjectCoupling::stiffened(double k) const {
  ObjectCoupling out = *this;
  out.stiffness *= k;
  out.damping *= std::sqrt(k);
  return out;
}

CarriedObject::CarriedObject(const ObjectCoupling& coupling, const Pose& initial)
    : coupling_(coupling), pose_(initial) {
  coupling_.validate();
  double lever2 = 0.0;
  for (const auto& g : coupling_.grasp_points) {
    lever2 += g.squaredNorm();
  }
  const double k = coupling_.stiffness;
  const double c = coupling_.damping;
  const double w_lin = std::sqrt(2.0 * k / coupling_.object_mass);
  const double w_rot = std::sqrt(k * lever2 / coupling_.object_inertia);
  // Damping rates matter for explicit stability too.
  const double d_lin = 2.0 * c / coupling_.object_mass;
  const double d_rot = c * lever2 / coupling_.object_inertia;
  const double fastest = std::max({w_lin, w_rot, d_lin, d_rot});
  substeps_per_second_ = static_cast<int>(std::ceil(fastest / kMaxPhasePerSubstep));
}

std::array<Vec2, 2> CarriedObject::forces_at(const std::array<Anchor, 2>& anchors) const {
  std::array<Vec2, 2> f;
  for (std::size_t i = 0; i < 2; ++i) {
    const Vec2 r = pose_.rotate(coupling_.grasp_points[i]);
    const Vec2 g = pose_.position() + r;
    const Vec2 g_vel = velocity_ + omega_ * Vec2(-r.y(), r.x());
    f[i] = coupling_.stiffness * (anchors[i].position - g) + coupling_.damping * (anchors[i].velocity - g_vel);
  }
  return f;
}

void CarriedObject::step(const std::array<Anchor, 2>& begin, const std::array<Anchor, 2>& end, double dt) {
  const int n = std::max(1, static_cast<int>(std::ceil(dt * substeps_per_second_)));
  const double h = dt / n;
  const Vec2 v0 = velocity_;
  for (int k = 1; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;
    std::array<Anchor, 2> a;
    for (std::size_t i = 0; i < 2; ++i) {
      a[i].position = (1.0 - s) * begin[i].position + s * end[i].position;
      a[i].velocity = (1.0 - s) * begin[i].velocity + s * end[i].velocity;
    }
    const auto f = forces_at(a);
    Vec2 total = Vec2::Zero();
    double torque = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      total += f[i];
      torque += cross(pose_.rotate(coupling_.grasp_points[i]), f[i]);
    }
    velocity_ += h * total / coupling_.object_mass;
    omega_ += h * torque / coupling_.object_inertia;
    pose_ = Pose(pose_.x + h * velocity_.x(), pose_.y + h * velocity_.y(), pose_.theta + h * omega_);
  }
  forces_ = forces_at(end);
  acceleration_ = (velocity_ - v0) / dt;
}

}  // namespace dockbot
