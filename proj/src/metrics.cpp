#include "dockbot/metrics.hpp"

#include <cmath>

#include "dockbot/errors.hpp"

namespace dockbot {

double rmsa(std::span<const double> ax, std::span<const double> ay) {
  if (ax.empty() || ax.size() != ay.size()) {
    throw InvalidInputError("rmsa: series must be non-empty and of equal length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    sum += ax[i] * ax[i] + ay[i] * ay[i];
  }
  return std::sqrt(sum / static_cast<double>(ax.size()));
}

double mean_jerk(std::span<const double> ax, std::span<const double> ay, double dt) {
  if (ax.size() < 2 || ax.size() != ay.size()) {
    throw InvalidInputError("mean_jerk: need at least two samples of equal-length series");
  }
  if (!(dt > 0.0)) {
    throw InvalidInputError("mean_jerk: dt must be > 0");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < ax.size(); ++i) {
    sum += std::hypot(ax[i] - ax[i - 1], ay[i] - ay[i - 1]) / dt;
  }
  return sum / static_cast<double>(ax.size() - 1);
}

double sigma_omega(std::span<const double> heading_error_rad) {
  const std::size_t n = heading_error_rad.size();
  if (n < 2) {
    throw InvalidInputError("sigma_omega: need at least two samples");
  }
  double mean = 0.0;
  for (double v : heading_error_rad) {
    mean += v;
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : heading_error_rad) {
    var += (v - mean) * (v - mean);
  }
  return rad_to_deg(std::sqrt(var / static_cast<double>(n)));
}

StabilityReport evaluate(const RunTrace& trace) {
  std::vector<double> ax;
  std::vector<double> ay;
  std::vector<double> heading;
  ax.reserve(trace.samples.size());
  ay.reserve(trace.samples.size());
  for (const auto& s : trace.samples) {
    if (std::isfinite(s.object_ax) && std::isfinite(s.object_ay)) {
      ax.push_back(s.object_ax);
      ay.push_back(s.object_ay);
    }
    for (int r = 0; r < trace.robot_count; ++r) {
      const double h = s.robots[static_cast<std::size_t>(r)].heading_error;
      if (std::isfinite(h)) {
        heading.push_back(h);
      }
    }
  }
  StabilityReport rep;
  rep.n_samples = trace.samples.size();
  if (rep.n_samples < 2) {
    throw InvalidInputError("evaluate: trace has fewer than two samples");
  }
  if (ax.size() >= 2) {
    rep.rmsa = rmsa(ax, ay);
    rep.mean_jerk = mean_jerk(ax, ay, trace.dt);
  }
  if (heading.size() >= 2) {
    rep.sigma_omega = sigma_omega(heading);
  }
  rep.transport_time = trace.completion_time.value_or(trace.samples.back().t);
  return rep;
}

Summary summarize(std::span<const RunTrace> traces) {
  if (traces.empty()) {
    throw InvalidInputError("summarize: no traces");
  }
  Summary out;
  for (const auto& t : traces) {
    out.runs.push_back(evaluate(t));
  }
  const double n = static_cast<double>(out.runs.size());
  for (const auto& r : out.runs) {
    out.mean.rmsa += r.rmsa / n;
    out.mean.mean_jerk += r.mean_jerk / n;
    out.mean.sigma_omega += r.sigma_omega / n;
    out.mean.transport_time += r.transport_time / n;
    out.mean.n_samples += r.n_samples;
  }
  out.mean.n_samples /= out.runs.size();
  return out;
}

}  // namespace dockbot
