#include "sorpcoag/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <system_error>
#include <thread>

#include "sorpcoag/errors.hpp"
#include "sorpcoag/output.hpp"

namespace sorpcoag {

SnapshotPlan plan_snapshots(const TimeSpec& time, std::span<const double> times,
                            std::int64_t stride) {
  SnapshotPlan plan;
  if (stride > 0) {
    for (std::int64_t n = 0; n <= time.N; n += stride) plan.entries.push_back({n, time.time_at(n)});
    if (plan.entries.back().step != time.N) plan.entries.push_back({time.N, time.time_at(time.N)});
    return plan;
  }
  for (double t : times) {
    if (!(t >= 0.0 && t <= time.T * (1.0 + 1e-12))) {
      throw Error(ErrorKind::config, "snapshot time outside [0, T]: " + std::to_string(t));
    }
    const std::int64_t n =
        time.dt > 0.0 ? std::min<std::int64_t>(std::llround(t / time.dt), time.N) : 0;
    plan.entries.push_back({n, t});
  }
  std::stable_sort(plan.entries.begin(), plan.entries.end(),
                   [](const auto& a, const auto& b) { return a.step < b.step; });
  plan.entries.erase(std::unique(plan.entries.begin(), plan.entries.end(),
                                 [](const auto& a, const auto& b) { return a.step == b.step; }),
                     plan.entries.end());
  return plan;
}

RunResult run(const Problem& problem, const CoagTables& tables, const TimeSpec& time,
              const StabilityReport& gate, const SnapshotPlan& plan, RunObserver& observer,
              const StepOptions& options) {
  const GridSpec& grid = problem.grid;
  RunResult result;
  result.final_state = SimState{problem.f0, problem.u_in, 0, 0.0};
  const double rho0 = problem.u_in + moments(problem.f0, grid).Mrp;

  auto next_snap = plan.entries.begin();
  auto emit = [&](const SimState& s, std::int64_t clamps) {
    result.last = make_record(s, grid, rho0, clamps);
    observer.on_record(result.last);
    while (next_snap != plan.entries.end() && next_snap->step == s.step) {
      observer.on_snapshot(s, next_snap->requested);
      ++next_snap;
    }
  };

  emit(result.final_state, 0);
  for (std::int64_t n = 0; n < time.N; ++n) {
    StepStats stats;
    SimState next = step(result.final_state, problem.rate, tables, grid, time.dt, gate, options,
                         &stats);
    next.time = time.time_at(next.step);
    result.final_state = std::move(next);
    result.total_clamps += stats.clamp_count;
    emit(result.final_state, stats.clamp_count);
  }
  return result;
}

Problem build_problem(const SimConfig& cfg) {
  Problem pb;
  pb.grid = build_grid(cfg.grid.P, cfg.grid.J, cfg.grid.I);
  switch (cfg.rates.model) {
    case RateKind::section4: pb.rate = RateModel::section4(); break;
    case RateKind::langmuir:
      pb.rate = RateModel::langmuir(cfg.rates.k0, cfg.rates.alpha, cfg.rates.l0, cfg.rates.beta);
      break;
    case RateKind::constant: pb.rate = RateModel::constant(cfg.rates.k0, cfg.rates.l0); break;
    case RateKind::user: throw Error(ErrorKind::config, "rates.model: user models need the API");
  }
  switch (cfg.kernel.model) {
    case KernelKind::constant: pb.kernel = KernelModel::constant(cfg.kernel.value); break;
    case KernelKind::separable:
      pb.kernel = KernelModel::separable(cfg.kernel.value, cfg.kernel.gamma, cfg.kernel.delta);
      break;
    case KernelKind::user: throw Error(ErrorKind::config, "kernel.model: user kernels need the API");
  }
  pb.policy = cfg.kernel.overflow;
  switch (cfg.initial.profile) {
    case InitialKind::section4: pb.f0 = discretize_initial(section4_density, pb.grid); break;
    case InitialKind::constant: pb.f0 = Field(pb.grid, cfg.initial.value); break;
    case InitialKind::table: pb.f0 = read_snapshot(cfg.initial.file, pb.grid); break;
  }
  if (cfg.initial.target_Mrp) {
    pb.f0 = normalize_to_target(pb.f0, pb.grid, *cfg.initial.target_Mrp).field;
  }
  pb.u_in = cfg.initial.u_in;
  pb.stability.vsup_safety = cfg.rates.vsup_safety;
  return pb;
}

TimeSpec resolve_time(const SimConfig& cfg, const Problem& problem) {
  if (!cfg.time.dt) return auto_time_spec(problem, cfg.time.T, cfg.time.safety);
  const auto N = static_cast<std::int64_t>(std::llround(cfg.time.T / *cfg.time.dt));
  if (N == 0) return make_time_spec(0.0, 0);
  return make_time_spec(cfg.time.T, N);
}

void require_stable(const StabilityReport& r) {
  if (r.ok()) return;
  std::ostringstream msg;
  msg.precision(17);
  msg << "dt = " << r.dt << " fails the stability gate: transport needs dt < "
      << r.dt_max_transport << " (margin " << r.transport_margin() << ", "
      << (r.transport_ok ? "ok" : "violated") << "), coagulation needs dt < " << r.dt_max_coag
      << " (margin " << r.coag_margin() << ", " << (r.coag_ok ? "ok" : "violated") << ")";
  throw Error(ErrorKind::config, msg.str());
}

Simulation::Simulation(SimConfig config)
    : config_(std::move(config)),
      problem_(build_problem(config_)),
      time_(resolve_time(config_, problem_)),
      report_(stability_bounds(problem_, time_)),
      state_{problem_.f0, problem_.u_in, 0, 0.0},
      rho0_(problem_.u_in + moments(problem_.f0, problem_.grid).Mrp) {}

const CoagTables& Simulation::tables() {
  if (!tables_) tables_ = make_coag_tables(problem_.kernel, problem_.grid, problem_.policy);
  return *tables_;
}

void Simulation::advance(std::int64_t n) {
  require_stable(report_);
  const std::int64_t todo = std::min(n, time_.N - state_.step);
  for (std::int64_t k = 0; k < todo; ++k) {
    StepStats stats;
    SimState next = step(state_, problem_.rate, tables(), problem_.grid, time_.dt, report_, {},
                         &stats);
    next.time = time_.time_at(next.step);
    state_ = std::move(next);
    last_clamps_ = stats.clamp_count;
  }
}

DiagnosticsRecord Simulation::diagnostics() const {
  return make_record(state_, problem_.grid, rho0_, last_clamps_);
}

namespace {

class DirectoryWriter : public RunObserver {
 public:
  DirectoryWriter(const std::filesystem::path& dir, const GridSpec& grid)
      : dir_(dir), grid_(grid), series_(dir / "series.txt") {
    write_series_header(series_.get());
  }

  void on_record(const DiagnosticsRecord& rec) override { write_series_row(series_.get(), rec); }

  void on_snapshot(const SimState& s, double requested) override {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03d.txt", count_++);
    char note[96];
    std::snprintf(note, sizeof note, "step = %lld, requested t = %.17g",
                  static_cast<long long>(s.step), requested);
    write_snapshot(dir_ / name, s.field, grid_, s.time, note);
  }

  void finish() { series_.close(); }

 private:
  std::filesystem::path dir_;
  GridSpec grid_;
  OutputFile series_;
  int count_ = 0;
};

}  // namespace

void Simulation::run_to_directory(const std::filesystem::path& out_dir, const RunOptions& opts) {
  require_stable(report_);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + out_dir.string() + ": " + ec.message());

  {
    OutputFile echo(out_dir / "effective_config.cfg");
    const std::string text = effective_config(config_);
    if (std::fwrite(text.data(), 1, text.size(), echo.get()) != text.size()) {
      throw Error(ErrorKind::io, "cannot write effective_config.cfg");
    }
    echo.close();
  }

  const std::int64_t stride =
      opts.snapshot_stride >= 0 ? opts.snapshot_stride : config_.output.snapshot_stride;
  const SnapshotPlan plan = plan_snapshots(time_, config_.output.snapshot_times, stride);

  StepOptions step_opts;
  step_opts.coag.threads =
      opts.deterministic ? 1u : std::max(1u, std::thread::hardware_concurrency());

  DirectoryWriter writer(out_dir, problem_.grid);
  const RunResult res = run(problem_, tables(), time_, report_, plan, writer, step_opts);
  writer.finish();

  state_ = res.final_state;
  last_clamps_ = res.last.clamp_count;

  const std::vector<double> r_null = nullcline(problem_.rate, state_.u, problem_.grid);
  const ColumnProfile prof = column_profile(state_.field, problem_.grid, r_null);
  OutputFile profile(out_dir / "profile.txt");
  write_profile(profile.get(), prof, problem_.grid);
  profile.close();
}

}  // namespace sorpcoag
