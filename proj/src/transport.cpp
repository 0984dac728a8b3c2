#include "sorpcoag/transport.hpp"

#include <algorithm>

namespace sorpcoag {

FluxTable upwind_fluxes(const Field& f, const VelocityTable& vel, const GridSpec& grid) {
  FluxTable flux{Array2D(grid.p_cells(), grid.r_cells() + 1)};
  for (int j = 0; j <= grid.J; ++j) {
    const auto v = vel.values.row(j);
    const auto fr = f.values().row(j);
    auto out = flux.values.row(j);
    for (int i = 1; i <= grid.I; ++i) {
      const double vp = std::max(v[i], 0.0);
      const double vm = std::max(-v[i], 0.0);
      out[i] = vp * fr[i - 1] - vm * fr[i];
    }
  }
  return flux;
}

Array2D transport_increment(const FluxTable& flux, const GridSpec& grid) {
  Array2D d(grid.p_cells(), grid.r_cells());
  for (int j = 0; j <= grid.J; ++j) {
    const auto F = flux.values.row(j);
    auto out = d.row(j);
    for (int i = 0; i <= grid.I; ++i) out[i] = (F[i + 1] - F[i]) / grid.dr;
  }
  return d;
}

}  // namespace sorpcoag
