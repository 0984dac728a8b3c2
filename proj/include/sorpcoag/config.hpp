#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sorpcoag/coagulation.hpp"
#include "sorpcoag/rates.hpp"

namespace sorpcoag {

enum class InitialKind { section4, constant, table };

const char* to_string(InitialKind kind);

struct SimConfig {
  struct Grid {
    double P = 1.0;
    int J = 99;
    int I = 99;
    bool operator==(const Grid&) const = default;
  } grid;

  struct Time {
    double T = 1.0;
    std::optional<double> dt;  // nullopt: auto
    double safety = 0.95;      // used with auto dt
    bool operator==(const Time&) const = default;
  } time;

  struct Rates {
    RateKind model = RateKind::section4;
    double k0 = 1.0;
    double alpha = 1.0;
    double l0 = 1.0;
    double beta = 1.0;
    double vsup_safety = 1.0;
    bool operator==(const Rates&) const = default;
  } rates;

  struct Kernel {
    KernelKind model = KernelKind::constant;
    double value = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
    OverflowPolicy overflow = OverflowPolicy::clamp;
    bool operator==(const Kernel&) const = default;
  } kernel;

  struct Initial {
    InitialKind profile = InitialKind::section4;
    double value = 1.0;        // constant profile
    std::string file;          // table profile, absolute path
    std::optional<double> target_Mrp = 0.1;
    double u_in = 0.9;
    bool operator==(const Initial&) const = default;
  } initial;

  struct Output {
    std::string dir = "out";
    std::vector<double> snapshot_times;
    std::int64_t snapshot_stride = 0;  // 0: use snapshot_times
    bool deterministic = true;
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const SimConfig&) const = default;
};

/// Parses the sectioned `key = value` format. Relative paths are resolved
/// against `base_dir`. Throws Error(config) naming the offending key.
SimConfig parse_config_text(std::string_view text,
                            const std::filesystem::path& base_dir = {});

/// Reads and parses a config file; I/O failures throw Error(io).
SimConfig parse_config(const std::filesystem::path& path);

/// Emits every key, defaults included; parsing the result gives back an
/// equal SimConfig.
std::string effective_config(const SimConfig& config);

}  // namespace sorpcoag
