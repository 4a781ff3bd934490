#pragma once

// Smoothness and tracking metrics computed from run traces.

#include <span>
#include <vector>

#include "dockbot/trace.hpp"

namespace dockbot {

/// sqrt(mean(ax^2 + ay^2)).
double rmsa(std::span<const double> ax, std::span<const double> ay);

/// Mean magnitude of the finite-difference jerk vector.
double mean_jerk(std::span<const double> ax, std::span<const double> ay, double dt);

/// Population standard deviation of the heading-error series, in degrees.
double sigma_omega(std::span<const double> heading_error_rad);

struct StabilityReport {
  double rmsa = 0.0;            // m/s^2
  double mean_jerk = 0.0;       // m/s^3
  double sigma_omega = 0.0;     // deg
  double transport_time = 0.0;  // s
  std::size_t n_samples = 0;
};

/// Metrics of one trace. Heading errors of all robots present are pooled.
/// transport_time is the completion time, or the trace length if incomplete.
StabilityReport evaluate(const RunTrace& trace);

struct Summary {
  std::vector<StabilityReport> runs;
  StabilityReport mean;
};

Summary summarize(std::span<const RunTrace> traces);

}  // namespace dockbot
