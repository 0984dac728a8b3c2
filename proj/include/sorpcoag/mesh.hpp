#pragma once

#include <cstdint>

namespace sorpcoag {

/// Uniform mesh of (0,P)x(0,1). Cells are indexed (j,i) with j = 0..J along
/// p and i = 0..I along r. Edge accessors take the integer index of the
/// left edge, so p_edge(j) is the edge at j - 1/2.
struct GridSpec {
  double P = 1.0;
  int J = 0;
  int I = 0;
  double dp = 1.0;
  double dr = 1.0;

  int p_cells() const { return J + 1; }
  int r_cells() const { return I + 1; }
  std::int64_t cell_count() const {
    return static_cast<std::int64_t>(J + 1) * (I + 1);
  }

  double p_edge(int j) const { return j * dp; }
  double r_edge(int i) const { return i * dr; }
  double p_center(int j) const { return (j + 0.5) * dp; }
  double r_center(int i) const { return (i + 0.5) * dr; }
  double cell_volume() const { return dp * dr; }

  bool operator==(const GridSpec&) const = default;
};

/// Throws Error(config) when P is not positive and finite or J, I < 0.
GridSpec build_grid(double P, int J, int I);

struct TimeSpec {
  double T = 0.0;
  std::int64_t N = 0;
  double dt = 0.0;

  double time_at(std::int64_t n) const { return n * dt; }
};

/// dt = T/N. N = 0 is accepted only together with T = 0 (initial state only).
TimeSpec make_time_spec(double T, std::int64_t N);

}  // namespace sorpcoag
