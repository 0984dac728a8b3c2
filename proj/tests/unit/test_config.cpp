#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "sorpcoag/config.hpp"
#include "sorpcoag/errors.hpp"

using namespace sorpcoag;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    return e.what();
  }
  FAIL("config accepted: " << text);
  return {};
}

}  // namespace

TEST_CASE("defaults") {
  const SimConfig c = parse_config_text("");
  CHECK(c.grid.P == 1.0);
  CHECK(c.grid.J == 99);
  CHECK(c.rates.model == RateKind::section4);
  CHECK(c.kernel.model == KernelKind::constant);
  CHECK(c.kernel.overflow == OverflowPolicy::clamp);
  CHECK(c.initial.u_in == 0.9);
  CHECK(*c.initial.target_Mrp == 0.1);
  CHECK_FALSE(c.time.dt.has_value());
  CHECK(c.time.safety == 0.95);
}

TEST_CASE("full config") {
  const SimConfig c = parse_config_text(R"(
# comment line
[grid]
P = 2
J = 49   # trailing comment
I = 39

[time]
T = 0.5
dt = 1e-4
safety = 0.9

[rates]
model = langmuir
k0 = 2
alpha = 0.5
l0 = 1.5
beta = 2
vsup_safety = 1.1

[kernel]
model = separable
value = 0.5
gamma = 1
delta = 0.25
overflow = drop

[initial]
profile = constant
value = 3
target_Mrp = none
u_in = 0.25

[output]
dir = results
snapshot_times = 0, 0.125, 0.25 0.5
deterministic = false
)");
  CHECK(c.grid.P == 2.0);
  CHECK(c.grid.J == 49);
  CHECK(c.grid.I == 39);
  CHECK(*c.time.dt == 1e-4);
  CHECK(c.time.safety == 0.9);
  CHECK(c.rates.model == RateKind::langmuir);
  CHECK(c.rates.alpha == 0.5);
  CHECK(c.rates.vsup_safety == 1.1);
  CHECK(c.kernel.model == KernelKind::separable);
  CHECK(c.kernel.delta == 0.25);
  CHECK(c.kernel.overflow == OverflowPolicy::drop);
  CHECK(c.initial.profile == InitialKind::constant);
  CHECK_FALSE(c.initial.target_Mrp.has_value());
  CHECK(c.output.dir == "results");
  CHECK(c.output.snapshot_times == std::vector<double>{0, 0.125, 0.25, 0.5});
  CHECK_FALSE(c.output.deterministic);

  CHECK(parse_config_text(effective_config(c)) == c);
}

TEST_CASE("round trip keeps every bit") {
  SimConfig c;
  c.grid.P = 0.1 + 0.2;
  c.time.T = 1.0 / 3.0;
  c.time.dt = c.time.T / 7.0;
  c.rates.k0 = 1e-300;
  c.initial.u_in = 0.9000000000000001;
  c.output.snapshot_times = {0.0, 1.0 / 9.0};
  c.output.snapshot_stride = 0;
  const SimConfig back = parse_config_text(effective_config(c));
  CHECK(back == c);
  CHECK(effective_config(back) == effective_config(c));
}

TEST_CASE("relative table paths resolve against the config directory") {
  const SimConfig c = parse_config_text("[initial]\nprofile = table\nfile = data/f0.txt\n", "/base");
  CHECK(c.initial.file == "/base/data/f0.txt");
  CHECK(parse_config_text(effective_config(c), "/elsewhere") == c);
}

TEST_CASE("invalid configs name the key") {
  CHECK(config_error("[grid]\nfoo = 1\n").find("grid.foo") != std::string::npos);
  CHECK(config_error("[mesh]\nJ = 1\n").find("mesh") != std::string::npos);
  CHECK(config_error("J = 1\n").find("outside") != std::string::npos);
  CHECK(config_error("[grid]\nJ = 1\nJ = 2\n").find("duplicate") != std::string::npos);
  CHECK(config_error("[grid]\nJ = ten\n").find("grid.J") != std::string::npos);
  CHECK(config_error("[grid]\nJ = -3\n").find("grid.J") != std::string::npos);
  CHECK(config_error("[grid]\nP = 0\n").find("grid.P") != std::string::npos);
  CHECK(config_error("[grid]\nP = inf\n").find("grid.P") != std::string::npos);
  CHECK(config_error("[time]\nsafety = 1.5\n").find("time.safety") != std::string::npos);
  CHECK(config_error("[time]\ndt = -1\n").find("time.dt") != std::string::npos);
  CHECK(config_error("[time]\nT = 1\ndt = 0.3\n").find("multiple") != std::string::npos);
  CHECK(config_error("[rates]\nmodel = magic\n").find("section4") != std::string::npos);
  CHECK(config_error("[rates]\nk0 = -1\n").find("rates.k0") != std::string::npos);
  CHECK(config_error("[kernel]\noverflow = wrap\n").find("kernel.overflow") != std::string::npos);
  CHECK(config_error("[initial]\nprofile = table\n").find("initial.file") != std::string::npos);
  CHECK(config_error("[initial]\ntarget_Mrp = 0\n").find("target_Mrp") != std::string::npos);
  CHECK(config_error("[output]\ndeterministic = yes\n").find("deterministic") !=
        std::string::npos);
  CHECK(config_error("[grid]\nJ\n").find("line 2") != std::string::npos);
}

TEST_CASE("snapshot times beyond T are rejected") {
  CHECK(config_error("[time]\nT = 1\n[output]\nsnapshot_times = 0, 1.5\n")
            .find("snapshot_times") != std::string::npos);
  CHECK(config_error("[output]\nsnapshot_times = -0.1\n").find("snapshot_times") !=
        std::string::npos);
}

TEST_CASE("shipped configs") {
  const std::string dir = SORPCOAG_CONFIG_DIR;
  const SimConfig fixed = parse_config(dir + "/section4_fixed_dt.cfg");
  CHECK(fixed.grid.J == 99);
  CHECK(fixed.grid.I == 99);
  CHECK(*fixed.time.dt == 1.25e-4);
  CHECK(fixed.time.T == 5.0);

  const SimConfig reduced = parse_config(dir + "/section4_reduced.cfg");
  CHECK(reduced.grid.J == 49);
  CHECK(reduced.time.T == 1.0);
  CHECK_FALSE(reduced.time.dt.has_value());
  CHECK(reduced.output.snapshot_times == std::vector<double>{0, 0.125, 0.25, 0.5, 1});

  const SimConfig full = parse_config(dir + "/section4_full.cfg");
  CHECK(full.grid.J == 99);
  CHECK(full.time.T == 5.0);

  try {
    parse_config(dir + "/does_not_exist.cfg");
    FAIL("missing file accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}
