#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <limits>
#include <string>
#include <tuple>

#include "sorpcoag/errors.hpp"
#include "sorpcoag/field.hpp"
#include "sorpcoag/rates.hpp"

using namespace sorpcoag;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::config;
}

}  // namespace

TEST_CASE("reference sorption rate") {
  const RateModel m = RateModel::section4();
  const GridSpec g = build_grid(1.0, 9, 9);
  CHECK(eval_sorption(m, g, 0.9, 1.0, 0.0) == doctest::Approx(3.6));
  for (double u : {0.0, 0.3, 0.9, 2.0})
    for (double p : {0.0, 0.25, 1.0}) CHECK(eval_sorption(m, g, u, p, 1.0) == -1.0);

  // 4 p (1-r) u = r at p = 0.5, u = 0.9
  const double root = 1.8 / 2.8;
  CHECK(std::abs(m.velocity(0.9, 0.5, root)) < 1e-15);
  CHECK(m.velocity(0.9, 0.5, root - 1e-6) > 0.0);
  CHECK(m.velocity(0.9, 0.5, root + 1e-6) < 0.0);

  CHECK(m.velocity_dr(0.9, 0.5, 0.3) == doctest::Approx(-4 * 0.5 * 0.9 - 1));
  CHECK(m.gain_bound(1.0) == 4.0);
  CHECK(m.loss_bound(1.0) == 1.0);
  CHECK(m.bound(1.0) == 4.0);
  CHECK(m.bound(0.1) == 1.0);
}

TEST_CASE("Langmuir family") {
  const RateModel m = RateModel::langmuir(2.0, 1.5, 0.5, 2.0);
  const double p = 0.7, r = 0.4, u = 1.3;
  const double k = 2.0 * std::pow(p, 1.5) * std::pow(1 - r, 1.5);
  const double l = 0.5 * std::pow(p, 2.0) * std::pow(r, 2.0);
  CHECK(m.velocity(u, p, r) == doctest::Approx(k * u - l).epsilon(1e-14));
  CHECK(m.gain_bound(2.0) == doctest::Approx(2.0 * std::pow(2.0, 1.5)));
  CHECK(m.loss_bound(2.0) == doctest::Approx(0.5 * 4.0));

  const double h = 1e-6;
  const double fd = (m.velocity(u, p, r + h) - m.velocity(u, p, r - h)) / (2 * h);
  CHECK(m.velocity_dr(u, p, r) == doctest::Approx(fd).epsilon(1e-7));

  CHECK(kind_of([] { RateModel::langmuir(-1.0, 1, 1, 1); }) == ErrorKind::config);
  CHECK(kind_of([] { RateModel::constant(1.0, std::nan("")); }) == ErrorKind::config);
}

TEST_CASE("sorption domain checks") {
  const RateModel m = RateModel::section4();
  const GridSpec g = build_grid(1.0, 3, 3);
  CHECK(kind_of([&] { eval_sorption(m, g, -0.1, 0.5, 0.5); }) == ErrorKind::domain);
  CHECK(kind_of([&] { eval_sorption(m, g, 0.1, 1.5, 0.5); }) == ErrorKind::domain);
  CHECK(kind_of([&] { eval_sorption(m, g, 0.1, 0.5, 1.01); }) == ErrorKind::domain);
  CHECK(kind_of([&] { eval_sorption(m, g, 0.1, 0.5, -0.01); }) == ErrorKind::domain);
}

TEST_CASE("interface velocity table") {
  const GridSpec g = build_grid(1.0, 1, 1);
  const VelocityTable v = interface_velocity_table(RateModel::section4(), 0.9, g);
  REQUIRE(v.values.rows() == 2);
  REQUIRE(v.values.cols() == 3);
  CHECK(v(1, 0) == doctest::Approx(1.8));
  CHECK(v(0, 0) == 0.0);
  CHECK(v(1, 2) == -1.0);

  const VelocityTable v0 = interface_velocity_table(RateModel::section4(), 0.0, g);
  for (int j = 0; j <= 1; ++j)
    for (int i = 0; i <= 2; ++i) CHECK(v0(j, i) == -g.r_edge(i));

  const RateModel rising = RateModel::user([](double, double r) { return r; },
                                           [](double, double) { return 0.0; }, 1.0, 0.0);
  CHECK(kind_of([&] { interface_velocity_table(rising, 1.0, g); }) ==
        ErrorKind::model_validation);
}

TEST_CASE("cell-averaged kernels") {
  const GridSpec g = build_grid(1.0, 4, 3);
  const KernelTable one = kernel_cell_average(KernelModel::constant(1.0), g);
  CHECK(one.is_separable());
  for (int j = 0; j <= g.J; ++j)
    for (int i = 0; i <= g.I; ++i) CHECK(one(j, i, g.J - j, g.I - i) == 1.0);

  CHECK(kernel_cell_average(KernelModel::constant(0.0), g).is_zero());

  // Separable closed form against a fine midpoint quadrature.
  const KernelModel sep = KernelModel::separable(2.0, 0.5, 1.5);
  const KernelTable st = kernel_cell_average(sep, g);
  auto cell_mean = [&](int j, int i, double e_p, double e_r) {
    const int n = 2000;
    double sp = 0.0, sr = 0.0;
    for (int k = 0; k < n; ++k) {
      sp += std::pow(g.p_edge(j) + (k + 0.5) * g.dp / n, e_p);
      sr += std::pow(g.r_edge(i) + (k + 0.5) * g.dr / n, e_r);
    }
    return sp / n * sr / n;
  };
  for (auto [j, i, j2, i2] : {std::tuple{0, 0, 1, 2}, std::tuple{3, 1, 4, 3}}) {
    const double expect = 2.0 * cell_mean(j, i, 0.5, 1.5) * cell_mean(j2, i2, 0.5, 1.5);
    CHECK(st(j, i, j2, i2) == doctest::Approx(expect).epsilon(1e-6));
  }

  // A user kernel goes through Gauss quadrature: exact for bilinear integrands.
  const KernelModel bil = KernelModel::user(
      [](double p, double r, double p2, double r2) { return 1.0 + p * p2 + r * r2; }, 3.0);
  const KernelTable bt = kernel_cell_average(bil, g);
  CHECK_FALSE(bt.is_separable());
  CHECK(bt(1, 2, 3, 0) == doctest::Approx(1.0 + g.p_center(1) * g.p_center(3) +
                                          g.r_center(2) * g.r_center(0))
                              .epsilon(1e-14));
  CHECK(bt(1, 2, 3, 0) == bt(3, 0, 1, 2));

  const KernelModel neg =
      KernelModel::user([](double p, double, double, double) { return p - 0.5; }, 1.0);
  CHECK(kind_of([&] { kernel_cell_average(neg, g); }) == ErrorKind::kernel_validation);
}

TEST_CASE("kernel bounds") {
  CHECK(KernelModel::constant(1.0).bound(1.0) == 1.0);
  CHECK(KernelModel::separable(2.0, 1.0, 3.0).bound(2.0) == doctest::Approx(8.0));
  CHECK(KernelModel::user([](double, double, double, double) { return 0.0; }, 5.0).bound(1.0) ==
        5.0);
}

TEST_CASE("stability bounds") {
  CHECK(transport_dt_bound(1.0, 0.1) == doctest::Approx(0.025));
  CHECK(std::isinf(transport_dt_bound(0.0, 0.1)));
  CHECK(coag_dt_bound(1.0, 2.0, 1.0) == doctest::Approx(1.0 / 8.0));
  CHECK(std::isinf(coag_dt_bound(0.0, 2.0, 1.0)));

  const GridSpec g = build_grid(1.0, 9, 9);
  const Field f(g, 2.0);  // M_in = 2
  const TimeSpec t = make_time_spec(1.0, 1000);

  SUBCASE("no dynamics gives infinite limits") {
    const auto r = stability_bounds(RateModel::constant(0.0, 0.0), KernelModel::constant(0.0), f,
                                    0.5, t, g);
    CHECK(std::isinf(r.dt_max_transport));
    CHECK(std::isinf(r.dt_max_coag));
    CHECK(r.ok());
    CHECK(r.U_T == 0.5);
  }

  SUBCASE("reference model") {
    const auto r =
        stability_bounds(RateModel::section4(), KernelModel::constant(1.0), f, 0.9, t, g);
    CHECK(r.M_in == doctest::Approx(2.0));
    CHECK(r.K_rate == 4.0);
    CHECK(r.K_kernel == 1.0);
    CHECK(r.U_T == doctest::Approx(0.9 + 1.0 * 2.0 * 1.0));
    // sup |V| over edges is reached at p = J dp, r = 0, u = U_T.
    CHECK(r.V_sup == doctest::Approx(4.0 * 0.9 * r.U_T));
    // The p = 0 column has |V| = r and p-centre dp/2.
    CHECK(r.speed_sup >= 1.0 / (0.5 * g.dp));
    CHECK(r.dt_max_transport == doctest::Approx(g.dr / (4 * r.speed_sup)));
    CHECK(r.dt_max_coag == doctest::Approx(1.0 / (2 * 1.0 * 2.0 * 2.0)));
    CHECK(r.dt_max == std::min(r.dt_max_transport, r.dt_max_coag));
    CHECK(r.transport_ok == (t.dt < r.dt_max_transport));
  }

  SUBCASE("the inequalities are strict") {
    const auto base =
        stability_bounds(RateModel::section4(), KernelModel::constant(1.0), f, 0.9, t, g);
    TimeSpec edge{1.0, 1, base.dt_max_transport};
    const auto r =
        stability_bounds(RateModel::section4(), KernelModel::constant(1.0), f, 0.9, edge, g);
    CHECK_FALSE(r.transport_ok);
    CHECK(r.transport_margin() == doctest::Approx(1.0));
  }

  SUBCASE("safety factor scales the speed") {
    StabilityOptions opt;
    opt.vsup_safety = 1.5;
    const auto a = stability_bounds(RateModel::section4(), KernelModel::constant(1.0), f, 0.9, t, g);
    const auto b =
        stability_bounds(RateModel::section4(), KernelModel::constant(1.0), f, 0.9, t, g, opt);
    CHECK(b.speed_sup == doctest::Approx(1.5 * a.speed_sup));
  }

  const auto text = format_report(
      stability_bounds(RateModel::section4(), KernelModel::constant(1.0), f, 0.9, t, g));
  CHECK(text.find("dt_max_transport") != std::string::npos);
  CHECK(text.find("dt_max_coag") != std::string::npos);
  CHECK(text.find("verdict") != std::string::npos);
}
