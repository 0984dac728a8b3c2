#pragma once

#include <cstdint>
#include <functional>

#include "sorpcoag/coagulation.hpp"
#include "sorpcoag/field.hpp"
#include "sorpcoag/mesh.hpp"
#include "sorpcoag/rates.hpp"

namespace sorpcoag {

using PointDensity = std::function<double(double p, double r)>;

/// Cell averages of a pointwise density by the tensor 2-point Gauss rule.
/// Throws Error(input_validation) on a negative or non-finite sample.
Field discretize_initial(const PointDensity& f_in, const GridSpec& grid);

/// Unnormalized initial profile of the reference experiment, a Gaussian in
/// (log p, r) centred at (-2, 0.2) with widths (0.4, 0.05).
double section4_density(double p, double r);

struct NormalizedField {
  Field field;
  double m = 1.0;
};

/// Scales the field so that sum r_i p_j f_{j,i} dp dr equals target.
/// Throws Error(normalization) when that weighted moment is zero.
NormalizedField normalize_to_target(const Field& field, const GridSpec& grid, double target);

/// Everything needed to advance the scheme from the initial state.
struct Problem {
  GridSpec grid;
  RateModel rate;
  KernelModel kernel;
  OverflowPolicy policy = OverflowPolicy::clamp;
  Field f0;
  double u_in = 0.0;
  StabilityOptions stability;
};

StabilityReport stability_bounds(const Problem& problem, const TimeSpec& time);

/// Largest uniform step safety * dt_max dividing T.
TimeSpec auto_time_spec(const Problem& problem, double T, double safety);
/// N steps of the largest dt with dt < safety * dt_max(T = N dt).
TimeSpec auto_time_spec_for_steps(const Problem& problem, std::int64_t N, double safety);

struct StepOptions {
  /// Negative values above -clamp_tolerance * max|f^n| are set to zero.
  double clamp_tolerance = 1e-14;
  CoagOptions coag;
};

struct StepStats {
  std::int64_t clamp_count = 0;
  double dropped_gain = 0.0;
};

/// One explicit step of the finite-volume scheme:
///   f^{n+1}_{j,i} = f^n_{j,i} - dt/(dr p_j) (F_{j,i+1/2} - F_{j,i-1/2})
///                 + dt/(dr dp p_j) C_{j,i}
///   u^{n+1}       = u^n - dt dr dp sum_{j, i=0..I} F_{j,i-1/2}
/// Throws Error(cfl) when dt fails the gate (the input is untouched) and
/// Error(numerical) on non-finite values or negativity beyond rounding.
SimState step(const SimState& state, const RateModel& rate, const CoagTables& tables,
              const GridSpec& grid, double dt, const StabilityReport& gate,
              const StepOptions& options = {}, StepStats* stats = nullptr);

}  // namespace sorpcoag
