#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "sorpcoag/config.hpp"
#include "sorpcoag/diagnostics.hpp"
#include "sorpcoag/stepper.hpp"

namespace sorpcoag {

/// Steps at which snapshots are taken, with the times that were asked for.
struct SnapshotPlan {
  struct Entry {
    std::int64_t step = 0;
    double requested = 0.0;
  };
  std::vector<Entry> entries;  // ascending step, no duplicates
};

/// Requested times are rounded to the nearest step; `stride` > 0 instead
/// takes every stride-th step plus the final one. Throws Error(config) for
/// times outside [0,T].
SnapshotPlan plan_snapshots(const TimeSpec& time, std::span<const double> times,
                            std::int64_t stride);

class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_record(const DiagnosticsRecord&) {}
  virtual void on_snapshot(const SimState&, double /*requested*/) {}
};

struct RunResult {
  SimState final_state;
  DiagnosticsRecord last;
  std::int64_t total_clamps = 0;
};

/// Executes time.N steps from the problem's initial data, reporting a
/// diagnostics record for every state (n = 0..N) and the planned snapshots.
RunResult run(const Problem& problem, const CoagTables& tables, const TimeSpec& time,
              const StabilityReport& gate, const SnapshotPlan& plan, RunObserver& observer,
              const StepOptions& options = {});

/// Discretizes, normalizes and assembles the problem described by a config.
Problem build_problem(const SimConfig& config);
/// Explicit dt (T must be a whole multiple) or auto dt from the gate.
TimeSpec resolve_time(const SimConfig& config, const Problem& problem);
/// Throws Error(config) reporting both bounds when the report fails.
void require_stable(const StabilityReport& report);

/// A configured run: problem, time axis, stability report and current state.
class Simulation {
 public:
  explicit Simulation(SimConfig config);

  const SimConfig& config() const { return config_; }
  const Problem& problem() const { return problem_; }
  const TimeSpec& time() const { return time_; }
  const StabilityReport& report() const { return report_; }
  const SimState& state() const { return state_; }
  double rho0() const { return rho0_; }

  /// Advances up to n steps, never beyond time().N. Enforces the gate.
  void advance(std::int64_t n);
  DiagnosticsRecord diagnostics() const;

  struct RunOptions {
    bool deterministic = true;
    std::int64_t snapshot_stride = -1;  // < 0: use the config
  };

  /// Full run from the initial state, writing into out_dir:
  ///   effective_config.cfg, series.txt, snapshot_NNN.txt, profile.txt.
  void run_to_directory(const std::filesystem::path& out_dir, const RunOptions& options);

 private:
  const CoagTables& tables();

  SimConfig config_;
  Problem problem_;
  TimeSpec time_;
  StabilityReport report_;
  std::optional<CoagTables> tables_;
  SimState state_;
  double rho0_ = 0.0;
  std::int64_t last_clamps_ = 0;
};

}  // namespace sorpcoag
