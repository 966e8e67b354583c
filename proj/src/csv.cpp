#include "fcsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fcsim/core.hpp"

namespace fcsim::csv {

Writer::Writer(std::filesystem::path path, std::initializer_list<std::string_view> header)
    : path_(std::move(path)) {
  for (auto h : header) field(h);
  end_row();
}

Writer::~Writer() {
  try {
    close();
  } catch (...) {
  }
}

void Writer::sep() {
  if (row_open_) buf_.push_back(',');
  row_open_ = true;
}

Writer& Writer::field(std::string_view s) {
  sep();
  buf_.append(s.data(), s.data() + s.size());
  return *this;
}

Writer& Writer::field(long long v) {
  sep();
  fmt::format_to(std::back_inserter(buf_), "{}", v);
  return *this;
}

Writer& Writer::field(double v) {
  sep();
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  fmt::format_to(std::back_inserter(buf_), "{:.6f}", v);
  return *this;
}

void Writer::end_row() {
  buf_.push_back('\n');
  row_open_ = false;
}

void Writer::close() {
  if (closed_) return;
  closed_ = true;
  std::FILE* f = std::fopen(path_.c_str(), "wb");
  if (f == nullptr) throw IoError("cannot open " + path_.string() + " for writing");
  const std::size_t n = std::fwrite(buf_.data(), 1, buf_.size(), f);
  const bool ok = n == buf_.size() && std::fclose(f) == 0;
  if (!ok) throw IoError("failed writing " + path_.string());
}

namespace {
std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}
}  // namespace

Table Table::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  Table t;
  t.origin_ = path.string();
  std::string_view rest(text);
  bool first = true;
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (first) {
      t.header_ = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header_.size()) {
        throw IoError(t.origin_ + ": row " + std::to_string(t.rows_.size() + 1) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(t.header_.size()));
      }
      t.rows_.push_back(std::move(fields));
    }
  }
  if (first) throw IoError(t.origin_ + ": empty file");
  return t;
}

bool Table::has_column(std::string_view name) const {
  for (const auto& h : header_) {
    if (h == name) return true;
  }
  return false;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw IoError(origin_ + ": missing column '" + std::string(name) + "'");
}

double Table::real(std::size_t row, std::size_t col) const {
  const std::string& s = rows_[row][col];
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(origin_ + ": bad number '" + s + "' in column " + header_[col]);
  }
  return v;
}

long long Table::integer(std::size_t row, std::size_t col) const {
  const std::string& s = rows_[row][col];
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(origin_ + ": bad integer '" + s + "' in column " + header_[col]);
  }
  return v;
}

}  // namespace fcsim::csv
