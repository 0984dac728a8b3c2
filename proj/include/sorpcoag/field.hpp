#pragma once

#include <cstdint>

#include "sorpcoag/array2d.hpp"
#include "sorpcoag/mesh.hpp"

namespace sorpcoag {

/// Cell averages f_{j,i} on a grid, shape (J+1) x (I+1).
class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& grid, double fill = 0.0)
      : values_(grid.p_cells(), grid.r_cells(), fill) {}
  /// Throws Error(domain) when the shape does not match the grid.
  Field(const GridSpec& grid, Array2D values);

  int p_cells() const { return static_cast<int>(values_.rows()); }
  int r_cells() const { return static_cast<int>(values_.cols()); }

  double operator()(int j, int i) const { return values_(j, i); }
  double& operator()(int j, int i) { return values_(j, i); }

  const Array2D& values() const { return values_; }
  Array2D& values() { return values_; }

  double max_abs() const;
  /// Sum of |f_{j,i}| without the cell volume.
  double abs_sum() const;
  bool all_finite() const;
  bool nonnegative() const;

  bool operator==(const Field&) const = default;

 private:
  Array2D values_;
};

struct SimState {
  Field field;
  double u = 0.0;
  std::int64_t step = 0;
  double time = 0.0;
};

}  // namespace sorpcoag
