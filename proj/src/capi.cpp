#include "sorpcoag/sorpcoag.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "sorpcoag/config.hpp"
#include "sorpcoag/diagnostics.hpp"
#include "sorpcoag/errors.hpp"
#include "sorpcoag/output.hpp"
#include "sorpcoag/simulation.hpp"

struct sc_simulation {
  sorpcoag::Simulation sim;
  std::string out_dir;
};

namespace {

thread_local std::string last_message;
thread_local std::string last_kind;
thread_local std::int64_t last_step = -1;

void clear_error() {
  last_message.clear();
  last_kind.clear();
  last_step = -1;
}

sc_status set_error(sc_status status, const char* kind, const std::string& message) {
  last_message = message;
  last_kind = kind;
  return status;
}

sc_status status_for(sorpcoag::ErrorKind kind) {
  switch (sorpcoag::exit_status(kind)) {
    case 2: return SC_NUMERICAL_ERROR;
    case 3: return SC_IO_ERROR;
    default: return SC_CONFIG_ERROR;
  }
}

template <class F>
sc_status guarded(F&& body) {
  clear_error();
  try {
    body();
    return SC_OK;
  } catch (const sorpcoag::Error& e) {
    if (e.step()) last_step = *e.step();
    return set_error(status_for(e.kind()), sorpcoag::to_string(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SC_INTERNAL_ERROR, "internal", "out of memory");
  } catch (const std::exception& e) {
    return set_error(SC_INTERNAL_ERROR, "internal", e.what());
  } catch (...) {
    return set_error(SC_INTERNAL_ERROR, "internal", "unknown exception");
  }
}

sc_status null_argument(const char* what) {
  clear_error();
  return set_error(SC_INVALID_ARGUMENT, "argument", std::string(what) + " must not be null");
}

sc_status load(sorpcoag::SimConfig cfg, sc_simulation** out) {
  return guarded([&] {
    std::string dir = cfg.output.dir;
    *out = new sc_simulation{sorpcoag::Simulation(std::move(cfg)), std::move(dir)};
  });
}

}  // namespace

extern "C" {

const char* sc_version(void) { return "0.1.0"; }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_CONFIG_ERROR: return "config_error";
    case SC_NUMERICAL_ERROR: return "numerical_error";
    case SC_IO_ERROR: return "io_error";
    case SC_INVALID_ARGUMENT: return "invalid_argument";
    case SC_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

const char* sc_last_error(void) { return last_message.c_str(); }
const char* sc_last_error_kind(void) { return last_kind.c_str(); }
int64_t sc_last_error_step(void) { return last_step; }

sc_status sc_simulation_load(const char* config_path, sc_simulation** out) {
  if (!config_path) return null_argument("config_path");
  if (!out) return null_argument("out");
  *out = nullptr;
  sorpcoag::SimConfig cfg;
  const sc_status st = guarded([&] { cfg = sorpcoag::parse_config(config_path); });
  return st == SC_OK ? load(std::move(cfg), out) : st;
}

sc_status sc_simulation_load_string(const char* config_text, const char* base_dir,
                                    sc_simulation** out) {
  if (!config_text) return null_argument("config_text");
  if (!out) return null_argument("out");
  *out = nullptr;
  sorpcoag::SimConfig cfg;
  const sc_status st = guarded([&] {
    cfg = sorpcoag::parse_config_text(config_text, base_dir ? base_dir : "");
  });
  return st == SC_OK ? load(std::move(cfg), out) : st;
}

void sc_simulation_free(sc_simulation* sim) { delete sim; }

sc_status sc_simulation_stability(const sc_simulation* sim, sc_stability* out) {
  if (!sim) return null_argument("sim");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto& r = sim->sim.report();
    *out = sc_stability{r.M_in,       r.U_T,           r.K_rate,           r.K_kernel,
                        r.V_sup,      r.speed_sup,     r.dt,               r.dt_max_transport,
                        r.dt_max_coag, r.dt_max,       r.transport_ok ? 1 : 0,
                        r.coag_ok ? 1 : 0};
  });
}

sc_status sc_simulation_format_stability(const sc_simulation* sim, char* buf, size_t cap,
                                         size_t* needed) {
  if (!sim) return null_argument("sim");
  std::string text;
  const sc_status st = guarded([&] { text = sorpcoag::format_report(sim->sim.report()); });
  if (st != SC_OK) return st;
  if (needed) *needed = text.size() + 1;
  if (!buf) return cap == 0 ? SC_OK : null_argument("buf");
  if (cap == 0) return set_error(SC_INVALID_ARGUMENT, "argument", "buffer capacity is zero");
  const std::size_t n = std::min(cap - 1, text.size());
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
  if (n < text.size()) {
    return set_error(SC_INVALID_ARGUMENT, "argument",
                     "buffer too short, " + std::to_string(text.size() + 1) + " bytes needed");
  }
  return SC_OK;
}

sc_status sc_simulation_check_stable(const sc_simulation* sim) {
  if (!sim) return null_argument("sim");
  return guarded([&] { sorpcoag::require_stable(sim->sim.report()); });
}

sc_status sc_simulation_grid(const sc_simulation* sim, int* J, int* I, double* dp, double* dr) {
  if (!sim) return null_argument("sim");
  const auto& g = sim->sim.problem().grid;
  if (J) *J = g.J;
  if (I) *I = g.I;
  if (dp) *dp = g.dp;
  if (dr) *dr = g.dr;
  clear_error();
  return SC_OK;
}

sc_status sc_simulation_time(const sc_simulation* sim, double* T, int64_t* N, double* dt) {
  if (!sim) return null_argument("sim");
  const auto& t = sim->sim.time();
  if (T) *T = t.T;
  if (N) *N = t.N;
  if (dt) *dt = t.dt;
  clear_error();
  return SC_OK;
}

const char* sc_simulation_output_dir(const sc_simulation* sim) {
  return sim ? sim->out_dir.c_str() : nullptr;
}

sc_status sc_simulation_run(sc_simulation* sim, const char* out_dir,
                            const sc_run_options* options) {
  if (!sim) return null_argument("sim");
  return guarded([&] {
    sorpcoag::Simulation::RunOptions opts;
    opts.deterministic = sim->sim.config().output.deterministic;
    if (options) {
      opts.deterministic = opts.deterministic || options->deterministic != 0;
      opts.snapshot_stride = options->snapshot_stride;
    }
    sim->sim.run_to_directory(out_dir ? out_dir : sim->out_dir.c_str(), opts);
  });
}

sc_status sc_simulation_step(sc_simulation* sim, int64_t n) {
  if (!sim) return null_argument("sim");
  if (n < 0) {
    clear_error();
    return set_error(SC_INVALID_ARGUMENT, "argument", "step count must be >= 0");
  }
  return guarded([&] { sim->sim.advance(n); });
}

sc_status sc_simulation_diagnostics(const sc_simulation* sim, sc_record* out) {
  if (!sim) return null_argument("sim");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto r = sim->sim.diagnostics();
    *out = sc_record{r.n, r.t, r.u, r.M0, r.M1, r.Mrp, r.rho, r.drift, r.clamp_count};
  });
}

sc_status sc_simulation_copy_field(const sc_simulation* sim, double* buf, size_t count) {
  if (!sim) return null_argument("sim");
  if (!buf) return null_argument("buf");
  const auto values = sim->sim.state().field.values().values();
  if (count != values.size()) {
    clear_error();
    return set_error(SC_INVALID_ARGUMENT, "argument",
                     "buffer holds " + std::to_string(count) + " values, field has " +
                         std::to_string(values.size()));
  }
  std::memcpy(buf, values.data(), values.size() * sizeof(double));
  clear_error();
  return SC_OK;
}

sc_status sc_simulation_write_curve(const sc_simulation* sim, double u, const char* path) {
  if (!sim) return null_argument("sim");
  return guarded([&] {
    if (!(u >= 0.0) || !std::isfinite(u)) {
      throw sorpcoag::Error(sorpcoag::ErrorKind::config, "curve: u must be a finite value >= 0");
    }
    const auto& pb = sim->sim.problem();
    const auto r_null = sorpcoag::nullcline(pb.rate, u, pb.grid);
    if (!path) {
      sorpcoag::write_curve(stdout, r_null, pb.grid);
      if (std::fflush(stdout) != 0) throw sorpcoag::Error(sorpcoag::ErrorKind::io, "stdout");
      return;
    }
    sorpcoag::OutputFile file(path);
    sorpcoag::write_curve(file.get(), r_null, pb.grid);
    file.close();
  });
}

sc_status sc_simulation_write_effective_config(const sc_simulation* sim, const char* path) {
  if (!sim) return null_argument("sim");
  if (!path) return null_argument("path");
  return guarded([&] {
    const std::string text = sorpcoag::effective_config(sim->sim.config());
    sorpcoag::OutputFile file(path);
    if (std::fwrite(text.data(), 1, text.size(), file.get()) != text.size()) {
      throw sorpcoag::Error(sorpcoag::ErrorKind::io, std::string("cannot write ") + path);
    }
    file.close();
  });
}

}  // extern "C"
