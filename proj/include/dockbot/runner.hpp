#pragma once

// Drivers behind the CLI: single runs, seeded Monte Carlo batches over a
// parameter grid, and paired docked-vs-cooperating comparisons.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dockbot/metrics.hpp"
#include "dockbot/scenario.hpp"
#include "dockbot/scenario_io.hpp"
#include "dockbot/trace.hpp"

namespace dockbot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTaskFailed = 3;  // docking failed, or the path was not completed in time
inline constexpr int kExitDiverged = 4;

struct RunResult {
  RunTrace trace;
  std::optional<StabilityReport> metrics;  // transport modes
  std::string diverged;                    // non-empty if the simulation blew up

  int exit_code() const;
};

/// Never throws SimulationDiverged; that is reported in the result instead.
RunResult execute(const Scenario& scenario, std::uint64_t seed);

/// trace.csv + summary.json. Creates the directory.
void write_run(const RunResult& result, const std::filesystem::path& out_dir);

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------

struct TrialRecord {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::string outcome;
  std::optional<double> completion_time;
  std::optional<StabilityReport> metrics;
  std::optional<std::uint64_t> trace_hash;  // only when requested; formatting the CSV dominates a trial
};

struct CellSummary {
  std::vector<Override> params;  // one per sweep key, in key order
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_completion_time = kNaN;  // over successful trials
  std::optional<StabilityReport> mean_metrics;
};

struct BatchReport {
  std::vector<std::string> sweep_keys;
  std::vector<CellSummary> cells;
  std::vector<TrialRecord> trials;  // cell-major, then seed order
};

/// Every combination of the sweep axes is one cell; each cell runs the seeds
/// base, base + 1, ..., base + n_seeds - 1 (base = the scenario's seed).
BatchReport run_batch(const std::string& scenario_text, const std::vector<Override>& fixed,
                      const std::vector<std::vector<Override>>& sweeps, int n_seeds, unsigned threads = 0,
                      bool hash_traces = true);

std::string batch_aggregate_csv(const BatchReport& report);
std::string batch_trials_csv(const BatchReport& report);

// ---------------------------------------------------------------------------

enum CompareMetric { kRmsa = 0, kJerk = 1, kSigmaOmega = 2, kTransportTime = 3 };

struct CompareReport {
  std::vector<std::uint64_t> seeds;
  std::vector<StabilityReport> docked;
  std::vector<StabilityReport> cooperating;
  std::vector<bool> docked_completed;
  std::vector<bool> cooperating_completed;
  StabilityReport docked_mean;
  StabilityReport cooperating_mean;
  std::array<int, 4> docked_wins{};  // pairs where docked is strictly lower

  int pairs() const { return static_cast<int>(seeds.size()); }
  /// |docked - cooperating| / max(|docked|, |cooperating|) of the means.
  double relative_difference(CompareMetric m) const;
};

double metric_value(const StabilityReport& r, CompareMetric m);

/// Paired seeds: seed k drives both a docked and a cooperating run.
CompareReport run_compare(const Scenario& scenario, int n_seeds, unsigned threads = 0);

std::string compare_csv(const CompareReport& report);
std::string compare_pairs_csv(const CompareReport& report);
std::string compare_json(const CompareReport& report);

}  // namespace dockbot
