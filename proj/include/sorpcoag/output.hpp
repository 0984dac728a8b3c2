#pragma once

#include <cstdio>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "sorpcoag/diagnostics.hpp"
#include "sorpcoag/field.hpp"
#include "sorpcoag/mesh.hpp"

namespace sorpcoag {

/// Owning FILE* that flushes and fsyncs on close(). Throws Error(io).
class OutputFile {
 public:
  OutputFile() = default;
  explicit OutputFile(const std::filesystem::path& path);
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;
  OutputFile(OutputFile&& other) noexcept;
  OutputFile& operator=(OutputFile&& other) noexcept;
  ~OutputFile();

  std::FILE* get() const { return file_; }
  bool is_open() const { return file_ != nullptr; }
  /// Flush and fsync, then close; throws on failure.
  void close();

 private:
  std::FILE* file_ = nullptr;
  std::filesystem::path path_;
};

/// "# t = ...", "# J = ..., I = ..., dp = ..., dr = ...", then rows
/// "j i p_center r_center f" (17 significant digits), j-major. A non-empty
/// `note` becomes one more comment line after the two fixed headers.
void write_snapshot(std::FILE* out, const Field& field, const GridSpec& grid, double t,
                    std::string_view note = {});
void write_snapshot(const std::filesystem::path& path, const Field& field,
                    const GridSpec& grid, double t, std::string_view note = {});

/// Reads a snapshot written by write_snapshot; the grid must match.
Field read_snapshot(const std::filesystem::path& path, const GridSpec& grid);

/// Series rows "n t u M0 M1 Mrp rho drift clamp_count".
void write_series_header(std::FILE* out);
void write_series_row(std::FILE* out, const DiagnosticsRecord& record);

/// Rows "j p_center mass rbar rstd r_null"; absent values print as nan.
void write_profile(std::FILE* out, const ColumnProfile& profile, const GridSpec& grid);

/// Rows "p_center r_null", one per column.
void write_curve(std::FILE* out, std::span<const double> r_null, const GridSpec& grid);

}  // namespace sorpcoag
