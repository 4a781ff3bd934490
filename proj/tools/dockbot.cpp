// dockbot: run, batch and compare scenario files.
//
//   dockbot run <file> --out DIR --seed K
//   dockbot batch <file> --seeds N --sweep KEY=a,b,c [--sweep ...]
//   dockbot compare <file> --seeds N
//
// Exit codes: 0 ok, 2 config error, 3 task failed, 4 diverged.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "dockbot/errors.hpp"
#include "dockbot/runner.hpp"
#include "dockbot/scenario_io.hpp"
#include "dockbot/trace_io.hpp"

namespace {

using namespace dockbot;

std::vector<Override> overrides_from(const std::vector<std::string>& sets) {
  std::vector<Override> out;
  for (const auto& s : sets) {
    out.push_back(parse_override(s));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out += (i ? sep : "") + parts[i];
  }
  return out;
}

int cmd_run(const std::string& file, const std::filesystem::path& out, std::optional<std::uint64_t> seed,
            const std::vector<std::string>& sets) {
  const Scenario scenario = load_scenario(file, overrides_from(sets));
  const RunResult r = execute(scenario, seed.value_or(scenario.seed));
  write_run(r, out);

  fmt::print("mode {} seed {}\n", r.trace.mode, r.trace.seed);
  if (r.trace.mode == "dock_only") {
    fmt::print("phases {}\n", join(phase_sequence(r.trace), " -> "));
  }
  if (r.metrics) {
    fmt::print("rmsa {} jerk {} sigma_omega {} time {}\n", r.metrics->rmsa, r.metrics->mean_jerk,
               r.metrics->sigma_omega, r.metrics->transport_time);
  }
  fmt::print("outcome {}\n", r.diverged.empty() ? r.trace.outcome : "diverged");
  fmt::print("trace {}\n", (out / "trace.csv").string());

  const int code = r.exit_code();
  if (code == kExitDiverged) {
    std::cerr << r.diverged << "\n";
  } else if (code == kExitTaskFailed) {
    std::cerr << (r.trace.mode == "dock_only" ? "docking failed: " : "path not completed: ") << r.trace.outcome
              << "\n";
  }
  return code;
}

int cmd_batch(const std::string& file, const std::filesystem::path& out, int seeds,
              const std::vector<std::string>& sweeps, const std::vector<std::string>& sets, unsigned threads,
              bool hashes) {
  std::vector<std::vector<Override>> axes;
  for (const auto& s : sweeps) {
    axes.push_back(parse_sweep(s));
  }
  const BatchReport report = run_batch(read_text_file(file), overrides_from(sets), axes, seeds, threads, hashes);
  std::filesystem::create_directories(out);
  const std::string aggregate = batch_aggregate_csv(report);
  write_text_file(out / "batch_aggregate.csv", aggregate);
  write_text_file(out / "batch_trials.csv", batch_trials_csv(report));
  std::cout << aggregate;
  return kExitOk;
}

int cmd_compare(const std::string& file, const std::filesystem::path& out, int seeds,
                const std::vector<std::string>& sets, unsigned threads) {
  const Scenario scenario = load_scenario(file, overrides_from(sets));
  const CompareReport report = run_compare(scenario, seeds, threads);
  std::filesystem::create_directories(out);
  const std::string table = compare_csv(report);
  write_text_file(out / "compare.csv", table);
  write_text_file(out / "compare_pairs.csv", compare_pairs_csv(report));
  write_text_file(out / "compare.json", compare_json(report));
  std::cout << table;
  fmt::print("docked wins rmsa {}/{} jerk {}/{} sigma_omega {}/{} time {}/{}\n", report.docked_wins[kRmsa],
             report.pairs(), report.docked_wins[kJerk], report.pairs(), report.docked_wins[kSigmaOmega],
             report.pairs(), report.docked_wins[kTransportTime], report.pairs());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Docking and transport simulator for two omnidirectional modules"};
  app.require_subcommand(1);

  std::string file;
  std::string out = "out";
  std::vector<std::string> sets;
  std::vector<std::string> sweeps;
  std::optional<std::uint64_t> seed;
  int seeds = 10;
  unsigned threads = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", file, "scenario JSON")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--set", sets, "override KEY=VALUE (dotted key, JSON value, '30deg' allowed)");
  };

  CLI::App* run = app.add_subcommand("run", "run one scenario");
  common(run);
  run->add_option("--seed", seed, "seed (default: the scenario's)");

  CLI::App* batch = app.add_subcommand("batch", "seeded trials over a parameter grid");
  common(batch);
  batch->add_option("--seeds", seeds, "trials per grid cell")->check(CLI::PositiveNumber);
  batch->add_option("--sweep", sweeps, "KEY=a,b,c; repeat for a grid");
  batch->add_option("--threads", threads, "worker threads (0 = all cores)");
  bool no_hash = false;
  batch->add_flag("--no-hash", no_hash, "skip per-trial trace hashes (about 2x faster)");

  CLI::App* compare = app.add_subcommand("compare", "paired docked vs cooperating transport");
  common(compare);
  compare->add_option("--seeds", seeds, "seed pairs")->check(CLI::PositiveNumber);
  compare->add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      return cmd_run(file, out, seed, sets);
    }
    if (batch->parsed()) {
      return cmd_batch(file, out, seeds, sweeps, sets, threads, !no_hash);
    }
    return cmd_compare(file, out, seeds, sets, threads);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SimulationDiverged& e) {
    std::cerr << e.what() << "\n";
    return kExitDiverged;
  }
}
