#include "sorpcoag/field.hpp"

#include <cmath>
#include <utility>

#include "sorpcoag/errors.hpp"

namespace sorpcoag {

Field::Field(const GridSpec& grid, Array2D values) : values_(std::move(values)) {
  if (values_.rows() != static_cast<std::size_t>(grid.p_cells()) ||
      values_.cols() != static_cast<std::size_t>(grid.r_cells())) {
    throw Error(ErrorKind::domain, "field shape does not match the grid");
  }
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_.values()) m = std::max(m, std::abs(v));
  return m;
}

double Field::abs_sum() const {
  double s = 0.0;
  for (double v : values_.values()) s += std::abs(v);
  return s;
}

bool Field::all_finite() const {
  for (double v : values_.values())
    if (!std::isfinite(v)) return false;
  return true;
}

bool Field::nonnegative() const {
  for (double v : values_.values())
    if (!(v >= 0.0)) return false;
  return true;
}

}  // namespace sorpcoag
