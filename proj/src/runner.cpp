#include "dockbot/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "dockbot/errors.hpp"
#include "dockbot/rng.hpp"
#include "dockbot/trace_io.hpp"
#include "dockbot/world.hpp"
#include "json.hpp"

namespace dockbot {

namespace {

using json = nlohmann::json;

constexpr std::array<const char*, 4> kMetricNames{"rmsa", "mean_jerk", "sigma_omega", "transport_time"};

std::string num(double v) { return fmt::format("{}", v); }

std::string num(const std::optional<double>& v) { return v ? num(*v) : num(kNaN); }

StabilityReport mean_of(const std::vector<StabilityReport>& runs) {
  StabilityReport m;
  if (runs.empty()) {
    return m;
  }
  for (const auto& r : runs) {
    m.rmsa += r.rmsa;
    m.mean_jerk += r.mean_jerk;
    m.sigma_omega += r.sigma_omega;
    m.transport_time += r.transport_time;
    m.n_samples += r.n_samples;
  }
  const double n = static_cast<double>(runs.size());
  m.rmsa /= n;
  m.mean_jerk /= n;
  m.sigma_omega /= n;
  m.transport_time /= n;
  m.n_samples /= runs.size();
  return m;
}

// Cartesian product of the sweep axes, first axis slowest.
std::vector<std::vector<Override>> grid(const std::vector<std::vector<Override>>& sweeps) {
  std::vector<std::vector<Override>> cells{{}};
  for (const auto& axis : sweeps) {
    std::vector<std::vector<Override>> next;
    for (const auto& cell : cells) {
      for (const auto& value : axis) {
        auto c = cell;
        c.push_back(value);
        next.push_back(std::move(c));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

}  // namespace

int RunResult::exit_code() const {
  if (!diverged.empty()) {
    return kExitDiverged;
  }
  return trace.success ? kExitOk : kExitTaskFailed;
}

RunResult execute(const Scenario& scenario, std::uint64_t seed) {
  RunResult r;
  World world(scenario, seed);
  try {
    r.trace = world.run();
  } catch (const SimulationDiverged& e) {
    r.trace = world.trace();
    r.trace.success = false;
    r.trace.outcome = "diverged";
    r.diverged = e.what();
    return r;
  }
  if (scenario.mode != Mode::dock_only && r.trace.samples.size() >= 2) {
    r.metrics = evaluate(r.trace);
  }
  return r;
}

void write_run(const RunResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string csv = trace_csv(result.trace);
  write_text_file(out_dir / "trace.csv", csv);
  write_text_file(out_dir / "summary.json", summary_json(result.trace, result.metrics, result.diverged, fnv1a(csv)));
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

// ---------------------------------------------------------------------------

BatchReport run_batch(const std::string& scenario_text, const std::vector<Override>& fixed,
                      const std::vector<std::vector<Override>>& sweeps, int n_seeds, unsigned threads,
                      bool hash_traces) {
  if (n_seeds < 1) {
    throw ConfigError("", "--seeds must be >= 1");
  }
  BatchReport report;
  for (const auto& axis : sweeps) {
    if (axis.empty()) {
      throw ConfigError("", "empty sweep axis");
    }
    report.sweep_keys.push_back(axis.front().key);
  }

  // Resolve every cell up front so a bad sweep value fails before any work.
  const auto cells = grid(sweeps);
  std::vector<Scenario> scenarios;
  for (const auto& cell : cells) {
    std::vector<Override> all = fixed;
    all.insert(all.end(), cell.begin(), cell.end());
    scenarios.push_back(parse_scenario(scenario_text, all));
    CellSummary summary;
    summary.params = cell;
    report.cells.push_back(std::move(summary));
  }

  const auto per_cell = static_cast<std::size_t>(n_seeds);
  report.trials.resize(cells.size() * per_cell);
  parallel_for(report.trials.size(), threads, [&](std::size_t i) {
    const std::size_t c = i / per_cell;
    const std::uint64_t seed = scenarios[c].seed + i % per_cell;
    const RunResult r = execute(scenarios[c], seed);
    TrialRecord& t = report.trials[i];
    t.cell = c;
    t.seed = seed;
    t.success = r.trace.success;
    t.outcome = r.diverged.empty() ? r.trace.outcome : "diverged";
    t.completion_time = r.trace.completion_time;
    t.metrics = r.metrics;
    if (hash_traces) {
      t.trace_hash = trace_hash(r.trace);
    }
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellSummary& cell = report.cells[c];
    std::vector<StabilityReport> metrics;
    double completion = 0.0;
    for (std::size_t k = 0; k < per_cell; ++k) {
      const TrialRecord& t = report.trials[c * per_cell + k];
      ++cell.trials;
      if (t.success) {
        ++cell.successes;
        completion += t.completion_time.value_or(0.0);
      }
      if (t.metrics) {
        metrics.push_back(*t.metrics);
      }
    }
    cell.success_rate = static_cast<double>(cell.successes) / cell.trials;
    if (cell.successes > 0) {
      cell.mean_completion_time = completion / cell.successes;
    }
    if (!metrics.empty()) {
      cell.mean_metrics = mean_of(metrics);
    }
  }
  return report;
}

std::string batch_aggregate_csv(const BatchReport& report) {
  std::string out;
  for (const auto& k : report.sweep_keys) {
    out += k + ",";
  }
  out += "trials,successes,success_rate,mean_completion_time,mean_rmsa,mean_jerk,mean_sigma_omega,mean_transport_time\n";
  for (const auto& c : report.cells) {
    for (const auto& p : c.params) {
      out += p.value + ",";
    }
    const auto m = c.mean_metrics;
    out += fmt::format("{},{},{},{},{},{},{},{}\n", c.trials, c.successes, num(c.success_rate),
                       num(c.mean_completion_time), num(m ? m->rmsa : kNaN), num(m ? m->mean_jerk : kNaN),
                       num(m ? m->sigma_omega : kNaN), num(m ? m->transport_time : kNaN));
  }
  return out;
}

std::string batch_trials_csv(const BatchReport& report) {
  std::string out = "cell,";
  for (const auto& k : report.sweep_keys) {
    out += k + ",";
  }
  out += "seed,success,outcome,completion_time,rmsa,mean_jerk,sigma_omega,transport_time,trace_hash\n";
  for (const auto& t : report.trials) {
    out += fmt::format("{},", t.cell);
    for (const auto& p : report.cells[t.cell].params) {
      out += p.value + ",";
    }
    const auto& m = t.metrics;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", t.seed, t.success ? 1 : 0, t.outcome,
                       num(t.completion_time), num(m ? m->rmsa : kNaN), num(m ? m->mean_jerk : kNaN),
                       num(m ? m->sigma_omega : kNaN), num(m ? m->transport_time : kNaN),
                       t.trace_hash ? hash_hex(*t.trace_hash) : std::string());
  }
  return out;
}

// ---------------------------------------------------------------------------

double metric_value(const StabilityReport& r, CompareMetric m) {
  switch (m) {
    case kRmsa:
      return r.rmsa;
    case kJerk:
      return r.mean_jerk;
    case kSigmaOmega:
      return r.sigma_omega;
    case kTransportTime:
      return r.transport_time;
  }
  return kNaN;
}

double CompareReport::relative_difference(CompareMetric m) const {
  const double d = metric_value(docked_mean, m);
  const double c = metric_value(cooperating_mean, m);
  const double scale = std::max(std::abs(d), std::abs(c));
  return scale == 0.0 ? 0.0 : std::abs(d - c) / scale;
}

CompareReport run_compare(const Scenario& scenario, int n_seeds, unsigned threads) {
  if (n_seeds < 1) {
    throw ConfigError("", "--seeds must be >= 1");
  }
  const auto n = static_cast<std::size_t>(n_seeds);
  CompareReport report;
  report.docked.resize(n);
  report.cooperating.resize(n);
  report.docked_completed.resize(n);
  report.cooperating_completed.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    report.seeds.push_back(scenario.seed + k);
  }
  std::array<Scenario, 2> modes{scenario, scenario};
  modes[0].mode = Mode::docked_transport;
  modes[1].mode = Mode::cooperating_transport;

  std::vector<RunResult> results(2 * n);
  parallel_for(2 * n, threads, [&](std::size_t i) { results[i] = execute(modes[i % 2], report.seeds[i / 2]); });
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < 2; ++m) {
      const RunResult& r = results[2 * k + m];
      if (!r.diverged.empty()) {
        throw SimulationDiverged(r.trace.samples.empty() ? 0.0 : r.trace.samples.back().t, r.diverged);
      }
    }
    report.docked[k] = *results[2 * k].metrics;
    report.cooperating[k] = *results[2 * k + 1].metrics;
    report.docked_completed[k] = results[2 * k].trace.success;
    report.cooperating_completed[k] = results[2 * k + 1].trace.success;
    for (int m = 0; m < 4; ++m) {
      const auto metric = static_cast<CompareMetric>(m);
      if (metric_value(report.docked[k], metric) < metric_value(report.cooperating[k], metric)) {
        ++report.docked_wins[static_cast<std::size_t>(m)];
      }
    }
  }
  report.docked_mean = mean_of(report.docked);
  report.cooperating_mean = mean_of(report.cooperating);
  return report;
}

std::string compare_csv(const CompareReport& report) {
  std::string out = "mode,rmsa,mean_jerk,sigma_omega,avg_time\n";
  const auto row = [&](const char* name, const StabilityReport& r) {
    out += fmt::format("{},{},{},{},{}\n", name, num(r.rmsa), num(r.mean_jerk), num(r.sigma_omega),
                       num(r.transport_time));
  };
  row("docked", report.docked_mean);
  row("cooperating", report.cooperating_mean);
  return out;
}

std::string compare_pairs_csv(const CompareReport& report) {
  std::string out = "seed";
  for (const char* m : kMetricNames) {
    out += fmt::format(",docked_{0},cooperating_{0}", m);
  }
  out += ",docked_completed,cooperating_completed\n";
  for (std::size_t k = 0; k < report.seeds.size(); ++k) {
    out += fmt::format("{}", report.seeds[k]);
    for (int m = 0; m < 4; ++m) {
      const auto metric = static_cast<CompareMetric>(m);
      out += "," + num(metric_value(report.docked[k], metric)) + "," +
             num(metric_value(report.cooperating[k], metric));
    }
    out += fmt::format(",{},{}\n", report.docked_completed[k] ? 1 : 0, report.cooperating_completed[k] ? 1 : 0);
  }
  return out;
}

std::string compare_json(const CompareReport& report) {
  const auto metrics = [](const StabilityReport& r) {
    return json{{"rmsa", r.rmsa},
                {"mean_jerk", r.mean_jerk},
                {"sigma_omega", r.sigma_omega},
                {"transport_time", r.transport_time}};
  };
  json j;
  j["pairs"] = report.pairs();
  j["seeds"] = report.seeds;
  j["modes"] = {{"docked", metrics(report.docked_mean)}, {"cooperating", metrics(report.cooperating_mean)}};
  json wins;
  json rates;
  json diff;
  for (std::size_t m = 0; m < 4; ++m) {
    wins[kMetricNames[m]] = report.docked_wins[m];
    rates[kMetricNames[m]] = static_cast<double>(report.docked_wins[m]) / report.pairs();
    diff[kMetricNames[m]] = report.relative_difference(static_cast<CompareMetric>(m));
  }
  j["docked_wins"] = wins;
  j["docked_win_rate"] = rates;
  j["relative_difference"] = diff;
  return j.dump(2) + "\n";
}

}  // namespace dockbot
