#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <string>
#include <tuple>

#include "sorpcoag/errors.hpp"
#include "sorpcoag/mesh.hpp"

using namespace sorpcoag;

TEST_CASE("grid spacing and cell geometry") {
  const GridSpec g = build_grid(1.0, 99, 99);
  CHECK(g.dp == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(g.dr == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(g.p_cells() == 100);
  CHECK(g.cell_count() == 10000);
  CHECK(g.p_edge(0) == 0.0);
  CHECK(g.p_center(0) == doctest::Approx(0.005));
  CHECK(g.r_edge(g.I + 1) == doctest::Approx(1.0));
  CHECK(g.cell_volume() == doctest::Approx(1e-4));

  const GridSpec h = build_grid(2.0, 3, 1);
  CHECK(h.dp == 0.5);
  CHECK(h.dr == 0.5);
  CHECK(h.p_center(3) == 1.75);
}

TEST_CASE("invalid grids are configuration errors") {
  for (auto [P, J, I] : {std::tuple{0.0, 3, 3}, std::tuple{-1.0, 3, 3}, std::tuple{1.0, -1, 3},
                         std::tuple{1.0, 3, -2}}) {
    try {
      build_grid(P, J, I);
      FAIL("accepted an invalid grid");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::config);
    }
  }
  CHECK_THROWS_AS(build_grid(std::numeric_limits<double>::infinity(), 1, 1), Error);
  CHECK_THROWS_AS(build_grid(1.0, 1, 70000), Error);
}

TEST_CASE("time axis") {
  const TimeSpec t = make_time_spec(5.0, 40000);
  CHECK(t.dt == doctest::Approx(1.25e-4).epsilon(1e-15));
  CHECK(t.time_at(8000) == doctest::Approx(1.0));

  const TimeSpec zero = make_time_spec(0.0, 0);
  CHECK(zero.N == 0);
  CHECK(zero.dt == 0.0);

  CHECK_THROWS_AS(make_time_spec(1.0, 0), Error);
  CHECK_THROWS_AS(make_time_spec(-1.0, 10), Error);
}

TEST_CASE("exit statuses by error kind") {
  CHECK(exit_status(ErrorKind::config) == 1);
  CHECK(exit_status(ErrorKind::cfl) == 1);
  CHECK(exit_status(ErrorKind::model_validation) == 1);
  CHECK(exit_status(ErrorKind::numerical) == 2);
  CHECK(exit_status(ErrorKind::io) == 3);
  CHECK(std::string(to_string(ErrorKind::kernel_validation)) == "kernel_validation");
}
