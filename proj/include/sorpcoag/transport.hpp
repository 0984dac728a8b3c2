#pragma once

#include "sorpcoag/array2d.hpp"
#include "sorpcoag/field.hpp"
#include "sorpcoag/mesh.hpp"
#include "sorpcoag/rates.hpp"

namespace sorpcoag {

/// Interface fluxes F_{j,i-1/2}, shape (J+1) x (I+2). Rows i = 0 and i = I+1
/// are the zero-flux boundaries.
struct FluxTable {
  Array2D values;
  double operator()(int j, int i) const { return values(j, i); }
};

/// First-order upwind fluxes V^+ f_{j,i-1} - V^- f_{j,i} on interior interfaces.
FluxTable upwind_fluxes(const Field& f, const VelocityTable& vel, const GridSpec& grid);

/// D_{j,i} = (F_{j,i+1/2} - F_{j,i-1/2}) / dr, without the dt factor.
Array2D transport_increment(const FluxTable& flux, const GridSpec& grid);

}  // namespace sorpcoag
