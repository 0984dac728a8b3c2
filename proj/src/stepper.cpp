#include "sorpcoag/stepper.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sorpcoag/diagnostics.hpp"
#include "sorpcoag/errors.hpp"
#include "sorpcoag/transport.hpp"

namespace sorpcoag {

Field discretize_initial(const PointDensity& f_in, const GridSpec& grid) {
  Field field(grid);
  const double g = 0.5 / std::sqrt(3.0);
  for (int j = 0; j <= grid.J; ++j) {
    const double pc = grid.p_center(j);
    const double pp[2] = {pc - g * grid.dp, pc + g * grid.dp};
    for (int i = 0; i <= grid.I; ++i) {
      const double rc = grid.r_center(i);
      const double rr[2] = {rc - g * grid.dr, rc + g * grid.dr};
      double sum = 0.0;
      for (double p : pp) {
        for (double r : rr) {
          const double v = f_in(p, r);
          if (!(v >= 0.0) || !std::isfinite(v)) {
            std::ostringstream msg;
            msg << "initial density is negative or not finite at p = " << p << ", r = " << r;
            throw Error(ErrorKind::input_validation, msg.str());
          }
          sum += v;
        }
      }
      field(j, i) = 0.25 * sum;
    }
  }
  return field;
}

double section4_density(double p, double r) {
  if (p <= 0.0) return 0.0;
  const double a = std::log(p) + 2.0;
  const double b = r - 0.2;
  return std::exp(-a * a / (2.0 * 0.4 * 0.4) - b * b / (2.0 * 0.05 * 0.05));
}

NormalizedField normalize_to_target(const Field& field, const GridSpec& grid, double target) {
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw Error(ErrorKind::normalization, "normalization target must be positive and finite");
  }
  const double mrp = moments(field, grid).Mrp;
  if (!(mrp > 0.0) || !std::isfinite(mrp)) {
    throw Error(ErrorKind::normalization, "cannot normalize: weighted moment sum r p f is zero");
  }
  NormalizedField out{field, target / mrp};
  auto scale = [&](double m) {
    out.field = field;
    for (double& v : out.field.values().values()) v *= m;
  };
  scale(out.m);
  // A couple of corrections remove the rounding of the first division.
  for (int k = 0; k < 3; ++k) {
    const double now = moments(out.field, grid).Mrp;
    if (now == target) break;
    out.m *= target / now;
    scale(out.m);
  }
  return out;
}

StabilityReport stability_bounds(const Problem& problem, const TimeSpec& time) {
  return stability_bounds(problem.rate, problem.kernel, problem.f0, problem.u_in, time,
                          problem.grid, problem.stability);
}

namespace {

void check_safety(double safety) {
  if (!(safety > 0.0 && safety <= 1.0)) {
    throw Error(ErrorKind::config, "time.safety must lie in (0,1]");
  }
}

}  // namespace

TimeSpec auto_time_spec(const Problem& problem, double T, double safety) {
  check_safety(safety);
  if (!(T >= 0.0) || !std::isfinite(T)) throw Error(ErrorKind::config, "time.T must be >= 0");
  if (T == 0.0) return make_time_spec(0.0, 0);
  TimeSpec probe{T, 1, T};
  const StabilityReport rep = stability_bounds(problem, probe);
  const double limit = safety * rep.dt_max;
  if (std::isinf(limit)) return make_time_spec(T, 1);
  auto N = static_cast<std::int64_t>(std::floor(T / limit)) + 1;
  while (!(T / static_cast<double>(N) < limit)) ++N;
  return make_time_spec(T, N);
}

TimeSpec auto_time_spec_for_steps(const Problem& problem, std::int64_t N, double safety) {
  check_safety(safety);
  if (N <= 0) throw Error(ErrorKind::config, "step count must be positive");
  auto dt_max_for = [&](double dt) {
    const double T = dt * static_cast<double>(N);
    return stability_bounds(problem, TimeSpec{T, N, dt}).dt_max;
  };
  const double hi0 = safety * dt_max_for(0.0);
  if (std::isinf(hi0)) throw Error(ErrorKind::config, "no stability limit; choose dt explicitly");
  // dt_max shrinks as T grows, so dt - safety dt_max(N dt) is increasing.
  double lo = 0.0, hi = hi0;
  for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid < safety * dt_max_for(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double dt = lo;
  while (!(dt < dt_max_for(dt))) dt = std::nextafter(dt, 0.0);
  return TimeSpec{dt * static_cast<double>(N), N, dt};
}

SimState step(const SimState& state, const RateModel& rate, const CoagTables& tables,
              const GridSpec& grid, double dt, const StabilityReport& gate,
              const StepOptions& options, StepStats* stats) {
  if (!(dt > 0.0) || !(dt < gate.dt_max_transport) || !(dt < gate.dt_max_coag)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "time step " << dt << " violates the stability gate (dt_max_transport = "
        << gate.dt_max_transport << ", dt_max_coag = " << gate.dt_max_coag << ")";
    throw Error(ErrorKind::cfl, msg.str(), state.step);
  }

  const Field& f = state.field;
  const VelocityTable vel = interface_velocity_table(rate, state.u, grid);
  const FluxTable flux = upwind_fluxes(f, vel, grid);
  const CoagIncrement coag = coag_increment(f, tables, grid, options.coag);

  SimState next;
  next.field = Field(grid);
  next.step = state.step + 1;
  next.time = static_cast<double>(next.step) * dt;

  double flux_sum = 0.0;
  for (int j = 0; j <= grid.J; ++j) {
    const double pj = grid.p_center(j);
    const double ct = dt / (grid.dr * pj);
    const double cc = dt / (grid.dr * grid.dp * pj);
    const auto F = flux.values.row(j);
    const auto C = coag.values.row(j);
    const auto fo = f.values().row(j);
    auto fn = next.field.values().row(j);
    for (int i = 0; i <= grid.I; ++i) {
      fn[i] = fo[i] - ct * (F[i + 1] - F[i]) + cc * C[i];
      flux_sum += F[i];
    }
  }
  const double du = -dt * grid.dr * grid.dp * flux_sum;
  next.u = state.u + du;

  if (!next.field.all_finite() || !std::isfinite(next.u)) {
    throw Error(ErrorKind::numerical, "non-finite value in the updated state", next.step);
  }

  std::int64_t clamps = 0;
  const double tol = options.clamp_tolerance * f.max_abs();
  for (double& v : next.field.values().values()) {
    if (v >= 0.0) continue;
    if (v < -tol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "negative density " << v << " beyond rounding level " << tol;
      throw Error(ErrorKind::numerical, msg.str(), next.step);
    }
    v = 0.0;
    ++clamps;
  }
  if (next.u < 0.0) {
    if (next.u < -options.clamp_tolerance * (state.u + std::abs(du))) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "negative ion concentration " << next.u;
      throw Error(ErrorKind::numerical, msg.str(), next.step);
    }
    next.u = 0.0;
    ++clamps;
  }

  if (stats) {
    stats->clamp_count += clamps;
    stats->dropped_gain += coag.dropped_gain;
  }
  return next;
}

}  // namespace sorpcoag
