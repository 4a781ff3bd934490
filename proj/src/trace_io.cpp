#include "dockbot/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>

#include <fmt/compile.h>
#include <fmt/format.h>

#include "dockbot/errors.hpp"
#include "dockbot/rng.hpp"
#include "json.hpp"

namespace dockbot {

namespace {

using json = nlohmann::json;

// Shortest representation that round-trips. Compiled format: traces run to
// ~10^4 rows and this is the hot loop of a batch.
void put_number(fmt::memory_buffer& out, double v) { fmt::format_to(fmt::appender(out), FMT_COMPILE("{}"), v); }

void put(fmt::memory_buffer& out, double v) {
  out.push_back(',');
  put_number(out, v);
}

void put(fmt::memory_buffer& out, std::string_view s) { out.append(s.data(), s.data() + s.size()); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json pose_json(const Pose& p) { return json::array({p.x, p.y, p.theta}); }

}  // namespace

std::string trace_csv(const RunTrace& trace) {
  fmt::memory_buffer out;
  out.reserve(trace.samples.size() * 300 + 512);
  for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
    if (i > 0) {
      out.push_back(',');
    }
    put(out, kTraceColumns[i]);
  }
  out.push_back('\n');
  for (const auto& s : trace.samples) {
    put_number(out, s.t);
    for (const auto& r : s.robots) {
      put(out, r.pose.x);
      put(out, r.pose.y);
      put(out, r.pose.theta);
      put(out, r.commanded.vx);
      put(out, r.commanded.vy);
      put(out, r.commanded.omega);
      put(out, r.actual.vx);
      put(out, r.actual.vy);
      put(out, r.actual.omega);
      put(out, r.heading_error);
    }
    put(out, s.object_ax);
    put(out, s.object_ay);
    out.push_back(',');
    put(out, s.phase);
    out.push_back('\n');
  }
  return fmt::to_string(out);
}

std::uint64_t trace_hash(const RunTrace& trace) { return fnv1a(trace_csv(trace)); }

std::string hash_hex(std::uint64_t h) { return fmt::format("{:016x}", h); }

std::vector<std::string> phase_sequence(const RunTrace& trace) {
  std::vector<std::string> seq;
  if (trace.mode != "dock_only") {
    return seq;
  }
  seq.emplace_back("search");
  for (const auto& e : trace.events) {
    seq.push_back(e.to);
  }
  return seq;
}

std::string summary_json(const RunTrace& trace, const std::optional<StabilityReport>& metrics,
                         const std::string& diverged, std::optional<std::uint64_t> hash) {
  json j;
  j["mode"] = trace.mode;
  j["seed"] = trace.seed;
  j["dt"] = trace.dt;
  j["success"] = trace.success;
  j["outcome"] = diverged.empty() ? trace.outcome : "diverged";
  if (!diverged.empty()) {
    j["error"] = diverged;
  }
  j["samples"] = trace.samples.size();
  j["duration"] = trace.samples.empty() ? 0.0 : trace.samples.back().t;
  j["completion_time"] = trace.completion_time ? json(*trace.completion_time) : json(nullptr);
  j["trace_hash"] = hash_hex(hash ? *hash : trace_hash(trace));

  if (trace.mode == "dock_only") {
    j["phases"] = phase_sequence(trace);
    json events = json::array();
    for (const auto& e : trace.events) {
      events.push_back({{"t", e.t}, {"from", e.from}, {"to", e.to}, {"reason", e.reason}});
    }
    j["events"] = events;
    j["setup"] = {{"deviation", number_or_null(trace.setup_deviation)},
                  {"distance", number_or_null(trace.setup_distance)}};
    if (trace.lock_mean_twist) {
      const Twist& t = *trace.lock_mean_twist;
      j["lock"] = {{"mean_free_twist", json::array({t.vx, t.vy, t.omega})},
                   {"mean_deviation", number_or_null(trace.lock_mean_deviation)}};
    }
  }
  if (trace.composite) {
    const CompositeBody& c = *trace.composite;
    j["composite"] = {{"mass", c.mass},
                      {"inertia", c.inertia},
                      {"center_of_mass", json::array({c.center_of_mass().x(), c.center_of_mass().y()})},
                      {"frame", pose_json(c.frame)},
                      {"module_in_frame", json::array({pose_json(c.module_in_frame[0]),
                                                       pose_json(c.module_in_frame[1])})}};
  }
  if (metrics) {
    j["metrics"] = {{"rmsa", metrics->rmsa},
                    {"mean_jerk", metrics->mean_jerk},
                    {"sigma_omega", metrics->sigma_omega},
                    {"transport_time", metrics->transport_time},
                    {"n_samples", metrics->n_samples}};
    j["final_position_error"] = number_or_null(trace.final_position_error);
  }
  if (trace.mode == "docked_transport") {
    j["max_module_distance_drift"] = number_or_null(trace.max_module_distance_drift);
    j["max_pin_residual"] = number_or_null(trace.max_pin_residual);
  }
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + file.string() + "'");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace dockbot
