#include "sorpcoag/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sorpcoag/errors.hpp"

namespace sorpcoag {

Moments moments(const Field& field, const GridSpec& grid) {
  Moments m;
  for (int j = 0; j <= grid.J; ++j) {
    const double p = grid.p_center(j);
    double s0 = 0.0, sr = 0.0;
    for (int i = 0; i <= grid.I; ++i) {
      s0 += field(j, i);
      sr += grid.r_center(i) * field(j, i);
    }
    m.M0 += s0;
    m.M1 += p * s0;
    m.Mrp += p * sr;
  }
  const double vol = grid.cell_volume();
  m.M0 *= vol;
  m.M1 *= vol;
  m.Mrp *= vol;
  return m;
}

Balance balance(const SimState& state, const GridSpec& grid, double rho0) {
  Balance b;
  b.rho = state.u + moments(state.field, grid).Mrp;
  b.drift = b.rho - rho0;
  return b;
}

DiagnosticsRecord make_record(const SimState& state, const GridSpec& grid, double rho0,
                              std::int64_t clamp_count) {
  const Moments m = moments(state.field, grid);
  DiagnosticsRecord rec;
  rec.n = state.step;
  rec.t = state.time;
  rec.u = state.u;
  rec.M0 = m.M0;
  rec.M1 = m.M1;
  rec.Mrp = m.Mrp;
  rec.rho = state.u + m.Mrp;
  rec.drift = rec.rho - rho0;
  rec.clamp_count = clamp_count;
  return rec;
}

double nullcline_root(const RateModel& model, const GridSpec& grid, double u, double p,
                      double tol) {
  auto V = [&](double r) { return eval_sorption(model, grid, u, p, r); };
  auto not_monotone = [&](double r) {
    std::ostringstream msg;
    msg << "sorption rate is not non-increasing in r at p = " << p << " near r = " << r;
    return Error(ErrorKind::model_validation, msg.str());
  };
  double lo = 0.0, hi = 1.0;
  double vlo = V(lo), vhi = V(hi);
  if (vlo < vhi) throw not_monotone(0.0);
  if (vlo <= 0.0) return std::abs(vlo) <= std::abs(vhi) ? 0.0 : 1.0;
  if (vhi >= 0.0) return std::abs(vhi) <= std::abs(vlo) ? 1.0 : 0.0;
  const double slack = 1e-13 * (std::abs(vlo) + std::abs(vhi));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double vm = V(mid);
    if (vm > vlo + slack || vm < vhi - slack) throw not_monotone(mid);
    if (vm > 0.0) {
      lo = mid;
      vlo = vm;
    } else {
      hi = mid;
      vhi = vm;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> nullcline(const RateModel& model, double u, const GridSpec& grid) {
  std::vector<double> out(grid.p_cells());
  for (int j = 0; j <= grid.J; ++j) out[j] = nullcline_root(model, grid, u, grid.p_center(j));
  return out;
}

ColumnProfile column_profile(const Field& field, const GridSpec& grid,
                             std::span<const double> r_null) {
  if (r_null.size() != static_cast<std::size_t>(grid.p_cells())) {
    throw Error(ErrorKind::domain, "column_profile: one nullcline value per column expected");
  }
  ColumnProfile prof;
  prof.mass.resize(grid.p_cells());
  prof.rbar.resize(grid.p_cells());
  prof.rstd.resize(grid.p_cells());
  prof.r_null.assign(r_null.begin(), r_null.end());
  const double threshold = 1e-14 * field.abs_sum() * grid.cell_volume();
  for (int j = 0; j <= grid.J; ++j) {
    double s = 0.0, sr = 0.0;
    for (int i = 0; i <= grid.I; ++i) {
      s += field(j, i);
      sr += grid.r_center(i) * field(j, i);
    }
    prof.mass[j] = s * grid.dr;
    if (prof.mass[j] <= threshold) continue;
    const double mean = sr / s;
    double var = 0.0;
    for (int i = 0; i <= grid.I; ++i) {
      const double d = grid.r_center(i) - mean;
      var += d * d * field(j, i);
    }
    prof.rbar[j] = mean;
    prof.rstd[j] = std::sqrt(std::max(0.0, var / s));
  }
  return prof;
}

double concentration_distance(const ColumnProfile& profile) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < profile.mass.size(); ++j) {
    if (!profile.rbar[j]) continue;
    num += profile.mass[j] * std::abs(*profile.rbar[j] - profile.r_null[j]);
    den += profile.mass[j];
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace sorpcoag
