#pragma once

#include <cstdio>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace fcsim::csv {

/// Buffered writer for one headered CSV table. Reals are written with six
/// fractional digits; the buffer is flushed to disk by close() or the
/// destructor.
class Writer {
 public:
  Writer(std::filesystem::path path, std::initializer_list<std::string_view> header);
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;
  ~Writer();

  Writer& field(std::string_view s);
  Writer& field(long long v);
  Writer& field(int v) { return field(static_cast<long long>(v)); }
  Writer& field(double v);
  void end_row();
  void close();

 private:
  void sep();

  std::filesystem::path path_;
  fmt::memory_buffer buf_;
  bool row_open_ = false;
  bool closed_ = false;
};

/// Whole-file reader with header lookup. Fields are not quoted anywhere in
/// the simulator's output, so no quote handling is attempted.
class Table {
 public:
  static Table read(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  /// Column index; throws IoError naming the file when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  const std::string& at(std::size_t row, std::size_t col) const { return rows_[row][col]; }
  double real(std::size_t row, std::size_t col) const;
  long long integer(std::size_t row, std::size_t col) const;

 private:
  std::string origin_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fcsim::csv
