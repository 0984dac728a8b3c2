#include "sorpcoag/output.hpp"

#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "sorpcoag/errors.hpp"

namespace sorpcoag {

namespace {

[[noreturn]] void io_fail(const std::string& what, const std::filesystem::path& path) {
  throw Error(ErrorKind::io, what + " " + path.string() + ": " + std::strerror(errno));
}

void check(int rc, const char* what) {
  if (rc < 0) throw Error(ErrorKind::io, std::string("write failed: ") + what);
}

void print_or_nan(std::FILE* out, const std::optional<double>& v) {
  if (v) {
    check(std::fprintf(out, " %.17g", *v), "profile");
  } else {
    check(std::fprintf(out, " nan"), "profile");
  }
}

}  // namespace

OutputFile::OutputFile(const std::filesystem::path& path) : path_(path) {
  file_ = std::fopen(path.c_str(), "wb");
  if (!file_) io_fail("cannot open", path);
}

OutputFile::OutputFile(OutputFile&& other) noexcept
    : file_(std::exchange(other.file_, nullptr)), path_(std::move(other.path_)) {}

OutputFile& OutputFile::operator=(OutputFile&& other) noexcept {
  if (this != &other) {
    if (file_) std::fclose(file_);
    file_ = std::exchange(other.file_, nullptr);
    path_ = std::move(other.path_);
  }
  return *this;
}

OutputFile::~OutputFile() {
  if (file_) std::fclose(file_);
}

void OutputFile::close() {
  if (!file_) return;
  std::FILE* f = std::exchange(file_, nullptr);
  const bool flushed = std::fflush(f) == 0 && !std::ferror(f);
  const bool synced = flushed && ::fsync(::fileno(f)) == 0;
  const bool closed = std::fclose(f) == 0;
  if (!flushed || !synced || !closed) io_fail("cannot write", path_);
}

void write_snapshot(std::FILE* out, const Field& field, const GridSpec& grid, double t,
                    std::string_view note) {
  check(std::fprintf(out, "# t = %.17g\n", t), "snapshot");
  check(std::fprintf(out, "# J = %d, I = %d, dp = %.17g, dr = %.17g\n", grid.J, grid.I, grid.dp,
                     grid.dr),
        "snapshot");
  if (!note.empty()) {
    check(std::fprintf(out, "# %.*s\n", static_cast<int>(note.size()), note.data()), "snapshot");
  }
  for (int j = 0; j <= grid.J; ++j) {
    for (int i = 0; i <= grid.I; ++i) {
      check(std::fprintf(out, "%d %d %.17g %.17g %.17g\n", j, i, grid.p_center(j),
                         grid.r_center(i), field(j, i)),
            "snapshot");
    }
  }
}

void write_snapshot(const std::filesystem::path& path, const Field& field, const GridSpec& grid,
                    double t, std::string_view note) {
  OutputFile file(path);
  write_snapshot(file.get(), field, grid, t, note);
  file.close();
}

Field read_snapshot(const std::filesystem::path& path, const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) io_fail("cannot read", path);
  auto bad = [&](const std::string& what) {
    return Error(ErrorKind::input_validation, path.string() + ": " + what);
  };
  Field field(grid);
  std::vector<bool> seen(static_cast<std::size_t>(grid.cell_count()), false);
  std::string line;
  std::int64_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      int J = 0, I = 0;
      if (std::sscanf(line.c_str(), "# J = %d, I = %d", &J, &I) == 2 &&
          (J != grid.J || I != grid.I)) {
        throw bad("grid " + std::to_string(J) + "x" + std::to_string(I) +
                  " does not match the configured grid");
      }
      continue;
    }
    std::istringstream row(line);
    int j = 0, i = 0;
    double p = 0.0, r = 0.0, v = 0.0;
    if (!(row >> j >> i >> p >> r >> v)) throw bad("malformed row '" + line + "'");
    if (j < 0 || j > grid.J || i < 0 || i > grid.I) throw bad("cell index out of range");
    if (!(v >= 0.0) || !std::isfinite(v)) throw bad("negative or non-finite value");
    const auto k = static_cast<std::size_t>(j) * grid.r_cells() + i;
    if (seen[k]) throw bad("duplicate cell");
    seen[k] = true;
    field(j, i) = v;
    ++rows;
  }
  if (in.bad()) io_fail("error reading", path);
  if (rows != grid.cell_count()) throw bad("expected one row per cell");
  return field;
}

void write_series_header(std::FILE* out) {
  check(std::fprintf(out, "# n t u M0 M1 Mrp rho drift clamp_count\n"), "series");
}

void write_series_row(std::FILE* out, const DiagnosticsRecord& r) {
  check(std::fprintf(out, "%lld %.17g %.17g %.17g %.17g %.17g %.17g %.17g %lld\n",
                     static_cast<long long>(r.n), r.t, r.u, r.M0, r.M1, r.Mrp, r.rho, r.drift,
                     static_cast<long long>(r.clamp_count)),
        "series");
}

void write_profile(std::FILE* out, const ColumnProfile& profile, const GridSpec& grid) {
  check(std::fprintf(out, "# j p_center mass rbar rstd r_null\n"), "profile");
  for (int j = 0; j <= grid.J; ++j) {
    check(std::fprintf(out, "%d %.17g %.17g", j, grid.p_center(j), profile.mass[j]), "profile");
    print_or_nan(out, profile.rbar[j]);
    print_or_nan(out, profile.rstd[j]);
    check(std::fprintf(out, " %.17g\n", profile.r_null[j]), "profile");
  }
}

void write_curve(std::FILE* out, std::span<const double> r_null, const GridSpec& grid) {
  check(std::fprintf(out, "# p_center r_null\n"), "curve");
  for (int j = 0; j <= grid.J; ++j) {
    check(std::fprintf(out, "%.17g %.17g\n", grid.p_center(j), r_null[j]), "curve");
  }
}

}  // namespace sorpcoag
