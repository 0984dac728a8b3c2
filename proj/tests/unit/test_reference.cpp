#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "reference.hpp"

using namespace sorpcoag;

TEST_CASE("Smoluchowski zeroth moment") {
  CHECK(reference::smoluchowski_m0(1.7, 1.0, 0.0) == 1.7);
  CHECK(reference::smoluchowski_m0(1.0, 1.0, 2.0) == doctest::Approx(0.5));
  CHECK(reference::smoluchowski_m0(2.0, 0.5, 4.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("characteristics oracle") {
  auto bump = [](double r) { return std::exp(-100 * (r - 0.4) * (r - 0.4)); };
  auto frozen = [](double) { return 0.9; };

  const RateModel still = RateModel::constant(0.0, 0.0);
  for (double r : {0.1, 0.4, 0.77})
    CHECK(reference::transport_reference(bump, still, frozen, 0.5, 0.3, r) ==
          doctest::Approx(bump(r)).epsilon(1e-14));

  // Constant speed k u / p = 0.9 * 0.5 / 0.5: a pure shift by 0.9 t.
  const RateModel drift = RateModel::constant(0.5, 0.0);
  for (double r : {0.3, 0.5, 0.6})
    CHECK(reference::transport_reference(bump, drift, frozen, 0.5, 0.2, r) ==
          doctest::Approx(bump(r - 0.18)).epsilon(1e-12));

  // Mass in the column is conserved by the oracle (interior profile).
  const RateModel m = RateModel::section4();
  const int n = 4000;
  double before = 0.0, after = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = (k + 0.5) / n;
    before += bump(r) / n;
    after += reference::transport_reference(bump, m, frozen, 0.5, 0.1, r) / n;
  }
  CHECK(after == doctest::Approx(before).epsilon(1e-6));
}

TEST_CASE("naive coagulation on trivial inputs") {
  const GridSpec g = build_grid(1.0, 2, 2);
  const Field f(g);
  const auto one = [](int, int, int, int) { return 1.0; };
  const Array2D C = reference::naive_corner_fluxes(f, one, g, OverflowPolicy::clamp);
  CHECK(C.rows() == 4);
  CHECK(C.cols() == 4);
  for (double v : C.values()) CHECK(v == 0.0);
  CHECK(reference::naive_overflow_gain(f, one, g) == 0.0);
}
