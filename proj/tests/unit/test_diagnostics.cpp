#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sorpcoag/diagnostics.hpp"
#include "sorpcoag/errors.hpp"

using namespace sorpcoag;

TEST_CASE("moments") {
  const GridSpec one = build_grid(1.0, 0, 0);
  const Moments z = moments(Field(one), one);
  CHECK(z.M0 == 0.0);
  CHECK(z.M1 == 0.0);
  CHECK(z.Mrp == 0.0);

  const Moments m = moments(Field(one, 1.0), one);
  CHECK(m.M0 == 1.0);
  CHECK(m.M1 == 0.5);
  CHECK(m.Mrp == 0.25);
}

TEST_CASE("moments are linear") {
  const GridSpec g = build_grid(2.0, 6, 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  Field a(g), b(g), c(g);
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    a.values().values()[k] = d(rng);
    b.values().values()[k] = d(rng);
    c.values().values()[k] = 2.0 * a.values().values()[k] + b.values().values()[k];
  }
  const Moments ma = moments(a, g), mb = moments(b, g), mc = moments(c, g);
  CHECK(mc.M0 == doctest::Approx(2 * ma.M0 + mb.M0).epsilon(1e-14));
  CHECK(mc.M1 == doctest::Approx(2 * ma.M1 + mb.M1).epsilon(1e-14));
  CHECK(mc.Mrp == doctest::Approx(2 * ma.Mrp + mb.Mrp).epsilon(1e-14));
}

TEST_CASE("balance and records") {
  const GridSpec g = build_grid(1.0, 0, 0);
  const SimState s{Field(g, 2.0), 0.5, 3, 0.3};
  const Balance b = balance(s, g, 1.0);
  CHECK(b.rho == 1.0);
  CHECK(b.drift == 0.0);

  const DiagnosticsRecord r = make_record(s, g, 0.75, 2);
  CHECK(r.n == 3);
  CHECK(r.t == 0.3);
  CHECK(r.u == 0.5);
  CHECK(r.M0 == 2.0);
  CHECK(r.M1 == 1.0);
  CHECK(r.Mrp == 0.5);
  CHECK(r.rho == 1.0);
  CHECK(r.drift == 0.25);
  CHECK(r.clamp_count == 2);
}

TEST_CASE("nullcline of the reference model") {
  const RateModel m = RateModel::section4();
  const GridSpec g = build_grid(1.0, 1, 9);
  CHECK(nullcline_root(m, g, 0.9, 0.5) == doctest::Approx(1.8 / 2.8).epsilon(1e-12));
  for (double u : {0.1, 0.5, 0.9, 3.0})
    for (double p : {0.05, 0.3, 0.75}) {
      const double r = nullcline_root(m, g, u, p);
      CHECK(std::abs(r - 4 * p * u / (4 * p * u + 1)) <= 1e-12);
      // The printed long-time formula lacks the factor u and is not a root.
      if (u != 1.0) CHECK(std::abs(m.velocity(u, p, std::min(1.0, 4 * p / (4 * p * u + 1)))) > 1e-3);
    }

  const auto curve = nullcline(m, 0.9, g);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0] == doctest::Approx(0.9 / 1.9).epsilon(1e-11));
  CHECK(curve[1] == doctest::Approx(2.7 / 3.7).epsilon(1e-11));

  for (double r : nullcline(m, 0.0, g)) CHECK(r == 0.0);
}

TEST_CASE("nullcline is non-decreasing in u") {
  const RateModel m = RateModel::section4();
  const GridSpec g = build_grid(1.0, 19, 9);
  auto prev = nullcline(m, 0.0, g);
  for (double u = 0.05; u <= 3.0; u += 0.05) {
    const auto cur = nullcline(m, u, g);
    for (std::size_t j = 0; j < cur.size(); ++j) CHECK(cur[j] >= prev[j]);
    prev = cur;
  }
}

TEST_CASE("nullcline without a sign change and with a non-monotone rate") {
  const GridSpec g = build_grid(1.0, 1, 1);
  // Pure adsorption: V > 0 except at r = 1 where it reaches 0.
  const RateModel ads = RateModel::langmuir(1.0, 1.0, 0.0, 1.0);
  CHECK(nullcline_root(ads, g, 1.0, 0.5) == 1.0);
  // V constant and positive: equal |V| at both ends.
  const RateModel up = RateModel::constant(1.0, 0.0);
  const double r = nullcline_root(up, g, 1.0, 0.5);
  CHECK((r == 0.0 || r == 1.0));

  // V = 1 - l(r) rises on (0.5, 0.75), where bisection samples it.
  const RateModel bump = RateModel::user(
      [](double, double) { return 1.0; },
      [](double, double r) {
        if (r <= 0.5) return 1.5 * r;
        if (r <= 0.75) return 0.75 - (r - 0.5);
        return 0.5 + 4.0 * (r - 0.75);
      },
      1.0, 1.5);
  try {
    nullcline_root(bump, g, 1.0, 0.5);
    FAIL("non-monotone rate accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::model_validation);
  }
}

TEST_CASE("column profiles") {
  const GridSpec g = build_grid(1.0, 2, 3);
  Field f(g);
  f(0, 2) = 4.0;
  f(1, 1) = 1.0;
  f(1, 3) = 1.0;
  const std::vector<double> rn = {0.6, 0.5, 0.1};
  const ColumnProfile p = column_profile(f, g, rn);
  CHECK(p.mass[0] == doctest::Approx(1.0));
  CHECK(*p.rbar[0] == doctest::Approx(g.r_center(2)));
  CHECK(*p.rstd[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(*p.rbar[1] == doctest::Approx(0.625));
  CHECK(*p.rstd[1] == doctest::Approx(0.25));
  CHECK_FALSE(p.rbar[2].has_value());
  CHECK_FALSE(p.rstd[2].has_value());
  CHECK(p.r_null == rn);

  // Mass-weighted: column 0 is 0.025 off, column 1 is 0.125 off.
  CHECK(concentration_distance(p) == doctest::Approx((1.0 * 0.025 + 0.5 * 0.125) / 1.5));

  const GridSpec h = build_grid(1.0, 3, 1);
  const ColumnProfile u = column_profile(Field(h, 1.0), h, std::vector<double>(4, 0.5));
  for (const auto& rb : u.rbar) CHECK(*rb == doctest::Approx(0.5));

  CHECK_THROWS_AS(column_profile(f, g, std::vector<double>(2, 0.0)), Error);
}
