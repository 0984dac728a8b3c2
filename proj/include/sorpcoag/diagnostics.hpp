#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sorpcoag/field.hpp"
#include "sorpcoag/mesh.hpp"
#include "sorpcoag/rates.hpp"

namespace sorpcoag {

struct Moments {
  double M0 = 0.0;   // sum f dp dr
  double M1 = 0.0;   // sum p_j f dp dr
  double Mrp = 0.0;  // sum r_i p_j f dp dr
};

Moments moments(const Field& field, const GridSpec& grid);

struct Balance {
  double rho = 0.0;    // u + Mrp
  double drift = 0.0;  // rho - rho0
};

Balance balance(const SimState& state, const GridSpec& grid, double rho0);

struct DiagnosticsRecord {
  std::int64_t n = 0;
  double t = 0.0;
  double u = 0.0;
  double M0 = 0.0;
  double M1 = 0.0;
  double Mrp = 0.0;
  double rho = 0.0;
  double drift = 0.0;
  std::int64_t clamp_count = 0;
};

DiagnosticsRecord make_record(const SimState& state, const GridSpec& grid, double rho0,
                              std::int64_t clamp_count);

/// Root of r -> V(u,p,r) on [0,1] by bisection to |bracket| <= tol. Without
/// a sign change the endpoint with the smaller |V| is returned.
/// Throws Error(model_validation) if V is seen increasing in r.
double nullcline_root(const RateModel& model, const GridSpec& grid, double u, double p,
                      double tol = 1e-12);

/// r_t(p_j) for every column, evaluated at the p cell centres.
std::vector<double> nullcline(const RateModel& model, double u, const GridSpec& grid);

struct ColumnProfile {
  std::vector<double> mass;                // sum_i f_{j,i} dr
  std::vector<std::optional<double>> rbar; // absent for (near) empty columns
  std::vector<std::optional<double>> rstd;
  std::vector<double> r_null;
};

ColumnProfile column_profile(const Field& field, const GridSpec& grid,
                             std::span<const double> r_null);

/// Mass-weighted mean of |rbar_j - r_null_j| over non-empty columns.
double concentration_distance(const ColumnProfile& profile);

}  // namespace sorpcoag
