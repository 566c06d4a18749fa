#include "symstiefel/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace symstiefel {

namespace {

enum class Layout { Coordinate, Array };
enum class Storage { General, Symmetric, Skew };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      line = text_.substr(pos_, end - pos_);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      pos_ = end + 1;
      ++number_;
      return true;
    }
    return false;
  }

  // Next line that is neither blank nor a comment.
  bool next_data(std::string_view& line) {
    while (next(line)) {
      auto first = line.find_first_not_of(" \t");
      if (first == std::string_view::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  }

  int number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int number_ = 0;
};

[[noreturn]] void fail(const LineReader& r, const std::string& msg) {
  throw MatrixMarketError("MatrixMarket line " + std::to_string(r.number()) + ": " + msg);
}

long long parse_int(std::string_view tok, const LineReader& r) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(r, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

double parse_real(std::string_view tok, const LineReader& r) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(r, "expected a number, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Matrix parse_matrix_market(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw MatrixMarketError("MatrixMarket: empty input");

  const auto banner = split_ws(line);
  if (banner.size() != 5 || banner[0] != "%%MatrixMarket") {
    fail(reader, "malformed banner '" + std::string(line) + "'");
  }
  if (lower(std::string(banner[1])) != "matrix") {
    throw UnsupportedFormat("MatrixMarket: unsupported object '" + std::string(banner[1]) + "'");
  }
  const std::string format = lower(std::string(banner[2]));
  const std::string field = lower(std::string(banner[3]));
  const std::string symmetry = lower(std::string(banner[4]));

  Layout layout;
  if (format == "coordinate") {
    layout = Layout::Coordinate;
  } else if (format == "array") {
    layout = Layout::Array;
  } else {
    fail(reader, "unknown format '" + format + "'");
  }
  if (field == "complex" || field == "pattern") {
    throw UnsupportedFormat("MatrixMarket: unsupported field '" + field +
                            "' (only real and integer are read)");
  }
  if (field != "real" && field != "integer" && field != "double") {
    fail(reader, "unknown field '" + field + "'");
  }
  Storage storage;
  if (symmetry == "general") {
    storage = Storage::General;
  } else if (symmetry == "symmetric") {
    storage = Storage::Symmetric;
  } else if (symmetry == "skew-symmetric") {
    storage = Storage::Skew;
  } else if (symmetry == "hermitian") {
    throw UnsupportedFormat("MatrixMarket: unsupported symmetry 'hermitian'");
  } else {
    fail(reader, "unknown symmetry '" + symmetry + "'");
  }

  if (!reader.next_data(line)) fail(reader, "missing size line");
  const auto size = split_ws(line);
  const std::size_t want = layout == Layout::Coordinate ? 3 : 2;
  if (size.size() != want) fail(reader, "malformed size line '" + std::string(line) + "'");
  const long long rows = parse_int(size[0], reader);
  const long long cols = parse_int(size[1], reader);
  if (rows < 0 || cols < 0) fail(reader, "negative dimensions");
  if (storage != Storage::General && rows != cols) {
    fail(reader, "symmetric storage requires a square matrix");
  }

  Matrix a = Matrix::Zero(rows, cols);
  if (layout == Layout::Coordinate) {
    const long long nnz = parse_int(size[2], reader);
    if (nnz < 0) fail(reader, "negative entry count");
    for (long long k = 0; k < nnz; ++k) {
      if (!reader.next_data(line)) {
        fail(reader, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
      }
      const auto tok = split_ws(line);
      if (tok.size() != 3) fail(reader, "expected 'row col value'");
      const long long i = parse_int(tok[0], reader);
      const long long j = parse_int(tok[1], reader);
      const double v = parse_real(tok[2], reader);
      if (i < 1 || i > rows || j < 1 || j > cols) {
        fail(reader, "index (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") outside " + std::to_string(rows) + " x " + std::to_string(cols));
      }
      if ((storage == Storage::Symmetric && i < j) || (storage == Storage::Skew && i <= j)) {
        fail(reader, "entry above the stored triangle in " + symmetry + " storage");
      }
      a(i - 1, j - 1) = v;
      if (storage == Storage::Symmetric) a(j - 1, i - 1) = v;
      if (storage == Storage::Skew) a(j - 1, i - 1) = -v;
    }
  } else {
    for (long long j = 0; j < cols; ++j) {
      const long long first = storage == Storage::General ? 0
                              : storage == Storage::Symmetric ? j
                                                              : j + 1;
      for (long long i = first; i < rows; ++i) {
        if (!reader.next_data(line)) fail(reader, "array data ends early");
        const auto tok = split_ws(line);
        if (tok.size() != 1) fail(reader, "expected one value per line");
        const double v = parse_real(tok[0], reader);
        a(i, j) = v;
        if (storage == Storage::Symmetric) a(j, i) = v;
        if (storage == Storage::Skew) a(j, i) = -v;
      }
    }
  }
  if (reader.next_data(line)) fail(reader, "trailing data after the declared entries");
  return a;
}

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MatrixMarketError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_market(buf.str());
}

std::string format_matrix_market(const Matrix& a) {
  std::string out = "%%MatrixMarket matrix array real general\n";
  out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  char buf[40];
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g\n", a(i, j));
      out += buf;
    }
  }
  return out;
}

void write_matrix_market(const std::string& path, const Matrix& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MatrixMarketError("cannot write '" + path + "'");
  out << format_matrix_market(a);
  if (!out) throw MatrixMarketError("write to '" + path + "' failed");
}

}  // namespace symstiefel
