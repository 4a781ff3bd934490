#pragma once

// File formats written by the CLI. Column order is fixed; see README.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dockbot/metrics.hpp"
#include "dockbot/trace.hpp"

namespace dockbot {

/// Per-sample trace columns. Robot b columns are NaN in single-robot runs;
/// object columns are NaN in dock_only.
inline constexpr std::array<std::string_view, 24> kTraceColumns{
    "t",          "a_x",          "a_y",          "a_theta",      "a_cmd_vx",  "a_cmd_vy",
    "a_cmd_omega", "a_act_vx",    "a_act_vy",     "a_act_omega",  "a_heading_error",
    "b_x",        "b_y",          "b_theta",      "b_cmd_vx",     "b_cmd_vy",  "b_cmd_omega",
    "b_act_vx",   "b_act_vy",     "b_act_omega",  "b_heading_error",
    "object_ax",  "object_ay",    "phase"};

std::string trace_csv(const RunTrace& trace);

/// FNV-1a of the trace CSV bytes.
std::uint64_t trace_hash(const RunTrace& trace);
std::string hash_hex(std::uint64_t h);

/// Phase labels visited by a docking run, starting with "search".
std::vector<std::string> phase_sequence(const RunTrace& trace);

/// Run summary record. `metrics` is present for transport modes.
std::string summary_json(const RunTrace& trace, const std::optional<StabilityReport>& metrics,
                         const std::string& diverged = {}, std::optional<std::uint64_t> hash = {});

void write_text_file(const std::filesystem::path& file, std::string_view text);

}  // namespace dockbot
