#include "sorpcoag/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sorpcoag/errors.hpp"

namespace sorpcoag {

const char* to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::section4: return "section4";
    case InitialKind::constant: return "constant";
    case InitialKind::table: return "table";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::config, key + ": " + what);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Table = std::map<std::string, Entry>;  // "section.key" -> value

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"grid", {"P", "J", "I"}},
      {"time", {"T", "dt", "safety"}},
      {"rates", {"model", "k0", "alpha", "l0", "beta", "vsup_safety"}},
      {"kernel", {"model", "value", "gamma", "delta", "overflow"}},
      {"initial", {"profile", "value", "file", "target_Mrp", "u_in"}},
      {"output", {"dir", "snapshot_times", "snapshot_stride", "deterministic"}},
  };
  return keys;
}

Table tokenize(std::string_view text) {
  Table table;
  std::string section;
  int lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') fail(where, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(section)) fail(where, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(where, "expected key = value");
    if (section.empty()) fail(where, "key outside of a section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string full = section + "." + key;
    if (!known_keys().at(section).count(key)) fail(full, "unknown key");
    if (table.count(full)) fail(full, "duplicate key");
    table[full] = Entry{std::string(trim(line.substr(eq + 1))), lineno};
  }
  return table;
}

double to_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    fail(key, "expected a finite number, got '" + s + "'");
  }
  return v;
}

std::int64_t to_int(const std::string& key, const std::string& s) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(key, "expected an integer, got '" + s + "'");
  }
  return v;
}

class Reader {
 public:
  explicit Reader(Table t) : table_(std::move(t)) {}

  const std::string* find(const std::string& key) const {
    const auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second.value;
  }

  void number(const std::string& key, double& out) const {
    if (const auto* s = find(key)) out = to_double(key, *s);
  }

  void integer(const std::string& key, int& out) const {
    if (const auto* s = find(key)) {
      const auto v = to_int(key, *s);
      if (v < 0 || v > 65000) fail(key, "expected an integer in [0, 65000]");
      out = static_cast<int>(v);
    }
  }

  template <class E>
  void choice(const std::string& key, E& out, std::initializer_list<std::pair<const char*, E>> opts) const {
    const auto* s = find(key);
    if (!s) return;
    std::string names;
    for (const auto& [name, value] : opts) {
      if (*s == name) {
        out = value;
        return;
      }
      names += names.empty() ? name : std::string("|") + name;
    }
    fail(key, "expected one of " + names + ", got '" + *s + "'");
  }

 private:
  Table table_;
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) fail(key, what);
}

void validate(const SimConfig& c) {
  require(c.grid.P > 0.0, "grid.P", "must be > 0");
  require(c.time.T >= 0.0, "time.T", "must be >= 0");
  require(c.time.safety > 0.0 && c.time.safety <= 1.0, "time.safety", "must lie in (0,1]");
  if (c.time.dt) {
    require(*c.time.dt > 0.0, "time.dt", "must be > 0 or auto");
    const double n = std::round(c.time.T / *c.time.dt);
    require(std::abs(n * *c.time.dt - c.time.T) <= 1e-9 * std::max(c.time.T, *c.time.dt),
            "time.dt", "T must be a whole multiple of dt");
  }
  for (const auto& [key, v] : {std::pair{"rates.k0", c.rates.k0}, std::pair{"rates.alpha", c.rates.alpha},
                               std::pair{"rates.l0", c.rates.l0}, std::pair{"rates.beta", c.rates.beta}}) {
    require(v >= 0.0, key, "must be >= 0");
  }
  require(c.rates.vsup_safety >= 1.0, "rates.vsup_safety", "must be >= 1");
  require(c.kernel.value >= 0.0, "kernel.value", "must be >= 0");
  require(c.kernel.gamma >= 0.0, "kernel.gamma", "must be >= 0");
  require(c.kernel.delta >= 0.0, "kernel.delta", "must be >= 0");
  require(c.initial.value >= 0.0, "initial.value", "must be >= 0");
  require(c.initial.u_in >= 0.0, "initial.u_in", "must be >= 0");
  if (c.initial.target_Mrp) {
    require(*c.initial.target_Mrp > 0.0, "initial.target_Mrp", "must be > 0 or none");
  }
  require(c.initial.profile != InitialKind::table || !c.initial.file.empty(), "initial.file",
          "required by profile = table");
  require(!c.output.dir.empty(), "output.dir", "must not be empty");
  require(c.output.snapshot_stride >= 0, "output.snapshot_stride", "must be >= 0");
  for (double t : c.output.snapshot_times) {
    require(t >= 0.0 && t <= c.time.T, "output.snapshot_times",
            "time outside [0, T]: " + std::to_string(t));
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SimConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  const Reader in(tokenize(text));
  SimConfig c;

  in.number("grid.P", c.grid.P);
  in.integer("grid.J", c.grid.J);
  in.integer("grid.I", c.grid.I);

  in.number("time.T", c.time.T);
  if (const auto* s = in.find("time.dt")) {
    if (*s == "auto") {
      c.time.dt.reset();
    } else {
      c.time.dt = to_double("time.dt", *s);
    }
  }
  in.number("time.safety", c.time.safety);

  in.choice("rates.model", c.rates.model,
            {{"section4", RateKind::section4},
             {"langmuir", RateKind::langmuir},
             {"constant", RateKind::constant}});
  in.number("rates.k0", c.rates.k0);
  in.number("rates.alpha", c.rates.alpha);
  in.number("rates.l0", c.rates.l0);
  in.number("rates.beta", c.rates.beta);
  in.number("rates.vsup_safety", c.rates.vsup_safety);

  in.choice("kernel.model", c.kernel.model,
            {{"constant", KernelKind::constant}, {"separable", KernelKind::separable}});
  in.number("kernel.value", c.kernel.value);
  in.number("kernel.gamma", c.kernel.gamma);
  in.number("kernel.delta", c.kernel.delta);
  in.choice("kernel.overflow", c.kernel.overflow,
            {{"clamp", OverflowPolicy::clamp}, {"drop", OverflowPolicy::drop}});

  in.choice("initial.profile", c.initial.profile,
            {{"section4", InitialKind::section4},
             {"constant", InitialKind::constant},
             {"table", InitialKind::table}});
  in.number("initial.value", c.initial.value);
  if (const auto* s = in.find("initial.file")) {
    c.initial.file = *s;
    if (!c.initial.file.empty()) {
      std::filesystem::path p(c.initial.file);
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      c.initial.file = p.lexically_normal().string();
    }
  }
  if (const auto* s = in.find("initial.target_Mrp")) {
    if (*s == "none") {
      c.initial.target_Mrp.reset();
    } else {
      c.initial.target_Mrp = to_double("initial.target_Mrp", *s);
    }
  }
  in.number("initial.u_in", c.initial.u_in);

  if (const auto* s = in.find("output.dir")) c.output.dir = *s;
  if (const auto* s = in.find("output.snapshot_times")) {
    std::string list = *s;
    for (char& ch : list)
      if (ch == ',') ch = ' ';
    std::istringstream items(list);
    std::string item;
    while (items >> item) c.output.snapshot_times.push_back(to_double("output.snapshot_times", item));
  }
  if (const auto* s = in.find("output.snapshot_stride")) {
    c.output.snapshot_stride = to_int("output.snapshot_stride", *s);
  }
  in.choice("output.deterministic", c.output.deterministic, {{"true", true}, {"false", false}});

  validate(c);
  return c;
}

SimConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::io, "error reading config file " + path.string());
  std::filesystem::path base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config_text(text.str(), std::filesystem::absolute(base));
}

std::string effective_config(const SimConfig& c) {
  std::ostringstream out;
  out << "[grid]\n"
      << "P = " << num(c.grid.P) << "\n"
      << "J = " << c.grid.J << "\n"
      << "I = " << c.grid.I << "\n\n"
      << "[time]\n"
      << "T = " << num(c.time.T) << "\n"
      << "dt = " << (c.time.dt ? num(*c.time.dt) : "auto") << "\n"
      << "safety = " << num(c.time.safety) << "\n\n"
      << "[rates]\n"
      << "model = " << to_string(c.rates.model) << "\n"
      << "k0 = " << num(c.rates.k0) << "\n"
      << "alpha = " << num(c.rates.alpha) << "\n"
      << "l0 = " << num(c.rates.l0) << "\n"
      << "beta = " << num(c.rates.beta) << "\n"
      << "vsup_safety = " << num(c.rates.vsup_safety) << "\n\n"
      << "[kernel]\n"
      << "model = " << to_string(c.kernel.model) << "\n"
      << "value = " << num(c.kernel.value) << "\n"
      << "gamma = " << num(c.kernel.gamma) << "\n"
      << "delta = " << num(c.kernel.delta) << "\n"
      << "overflow = " << to_string(c.kernel.overflow) << "\n\n"
      << "[initial]\n"
      << "profile = " << to_string(c.initial.profile) << "\n"
      << "value = " << num(c.initial.value) << "\n"
      << "file = " << c.initial.file << "\n"
      << "target_Mrp = " << (c.initial.target_Mrp ? num(*c.initial.target_Mrp) : "none") << "\n"
      << "u_in = " << num(c.initial.u_in) << "\n\n"
      << "[output]\n"
      << "dir = " << c.output.dir << "\n"
      << "snapshot_times =";
  for (std::size_t k = 0; k < c.output.snapshot_times.size(); ++k) {
    out << (k ? ", " : " ") << num(c.output.snapshot_times[k]);
  }
  out << "\n"
      << "snapshot_stride = " << c.output.snapshot_stride << "\n"
      << "deterministic = " << (c.output.deterministic ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace sorpcoag
