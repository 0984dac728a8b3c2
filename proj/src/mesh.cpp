#include "sorpcoag/mesh.hpp"

#include <cmath>
#include <string>

#include "sorpcoag/errors.hpp"

namespace sorpcoag {

GridSpec build_grid(double P, int J, int I) {
  if (!(P > 0.0) || !std::isfinite(P)) {
    throw Error(ErrorKind::config, "grid.P must be a positive finite number, got " + std::to_string(P));
  }
  if (J < 0) throw Error(ErrorKind::config, "grid.J must be >= 0");
  if (I < 0) throw Error(ErrorKind::config, "grid.I must be >= 0");
  // Cell counts must fit the 16-bit target tables of the coagulation operator.
  if (I + 1 >= 0xFFFF) throw Error(ErrorKind::config, "grid.I too large");

  GridSpec g;
  g.P = P;
  g.J = J;
  g.I = I;
  g.dp = P / (J + 1);
  g.dr = 1.0 / (I + 1);
  return g;
}

TimeSpec make_time_spec(double T, std::int64_t N) {
  if (N < 0) throw Error(ErrorKind::config, "time: number of steps must be >= 0");
  if (N == 0) {
    if (T != 0.0) throw Error(ErrorKind::config, "time: zero steps require T = 0");
    return TimeSpec{0.0, 0, 0.0};
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::config, "time.T must be positive");
  return TimeSpec{T, N, T / static_cast<double>(N)};
}

}  // namespace sorpcoag
