#include "ipa/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipa {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

// Line-oriented integer scanner so parse errors can name their line.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  int line_number() const { return line_; }

  // Next nonempty line split into integers.
  std::vector<long long> int_line(const char* what) {
    std::string text = next_line(what);
    std::istringstream ss(text);
    std::vector<long long> out;
    std::string token;
    while (ss >> token) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(token, &used);
      } catch (...) {
        used = 0;
      }
      if (used != token.size()) {
        fail(line_, std::string("expected integers for ") + what + ", got '" +
                        token + "'");
      }
      out.push_back(v);
    }
    if (out.empty()) fail(line_, std::string("expected integers for ") + what);
    return out;
  }

  std::string next_line(const char* what) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      const auto pos = text.find_first_not_of(" \t\r\n");
      if (pos != std::string::npos) return text;
    }
    fail(line_ + 1, std::string("unexpected end of file, expected ") + what);
  }

  bool at_eof() {
    while (true) {
      const int ch = in_.peek();
      if (ch == EOF) return true;
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        in_.get();
      } else if (ch == '\n') {
        in_.get();
        ++line_;
      } else {
        return false;
      }
    }
  }

 private:
  std::istream& in_;
  int line_ = 0;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

MeasurementMatrix read_alist(std::istream& in) {
  LineReader reader(in);

  const auto header = reader.int_line("matrix dimensions");
  if (header.size() != 2 || header[0] <= 0 || header[1] <= 0) {
    fail(reader.line_number(), "header must be two positive integers: n m");
  }
  const int n = static_cast<int>(header[0]);
  const int m = static_cast<int>(header[1]);

  const auto max_deg = reader.int_line("maximum degrees");
  if (max_deg.size() != 2 || max_deg[0] < 0 || max_deg[1] < 0) {
    fail(reader.line_number(), "expected max column and row degrees");
  }

  const auto col_deg = reader.int_line("column degrees");
  if (static_cast<int>(col_deg.size()) != n) {
    fail(reader.line_number(), "expected " + std::to_string(n) +
                                   " column degrees, got " +
                                   std::to_string(col_deg.size()));
  }
  for (int v = 0; v < n; ++v) {
    if (col_deg[v] <= 0) {
      fail(reader.line_number(),
           "column " + std::to_string(v + 1) + " declares degree " +
               std::to_string(col_deg[v]) + "; degree-0 columns are invalid");
    }
    if (col_deg[v] > max_deg[0]) {
      fail(reader.line_number(), "column degree exceeds declared maximum");
    }
  }
  const auto row_deg = reader.int_line("row degrees");
  if (static_cast<int>(row_deg.size()) != m) {
    fail(reader.line_number(), "expected " + std::to_string(m) +
                                   " row degrees, got " +
                                   std::to_string(row_deg.size()));
  }
  for (int c = 0; c < m; ++c) {
    if (row_deg[c] < 0 || row_deg[c] > max_deg[1]) {
      fail(reader.line_number(), "row degree out of range");
    }
  }

  std::vector<std::vector<int>> cols(n);
  for (int v = 0; v < n; ++v) {
    const auto items = reader.int_line("column adjacency list");
    for (long long raw : items) {
      if (raw == 0) continue;  // zero padding
      if (raw < 1 || raw > m) {
        fail(reader.line_number(), "row index " + std::to_string(raw) +
                                       " out of range 1.." + std::to_string(m));
      }
      cols[v].push_back(static_cast<int>(raw - 1));
    }
    if (static_cast<int>(cols[v].size()) != col_deg[v]) {
      fail(reader.line_number(),
           "column " + std::to_string(v + 1) + " lists " +
               std::to_string(cols[v].size()) + " entries but declares degree " +
               std::to_string(col_deg[v]));
    }
    std::sort(cols[v].begin(), cols[v].end());
    if (std::adjacent_find(cols[v].begin(), cols[v].end()) != cols[v].end()) {
      fail(reader.line_number(),
           "column " + std::to_string(v + 1) + " has a repeated row index");
    }
  }

  // The row section must describe the transpose of the column section.
  std::vector<std::vector<int>> rows_from_cols(m);
  for (int v = 0; v < n; ++v) {
    for (int c : cols[v]) rows_from_cols[c].push_back(v);
  }
  for (int c = 0; c < m; ++c) {
    std::vector<int> row;
    if (row_deg[c] > 0 || !reader.at_eof()) {
      const auto items = reader.int_line("row adjacency list");
      for (long long raw : items) {
        if (raw == 0) continue;
        if (raw < 1 || raw > n) {
          fail(reader.line_number(), "column index " + std::to_string(raw) +
                                         " out of range 1.." +
                                         std::to_string(n));
        }
        row.push_back(static_cast<int>(raw - 1));
      }
    }
    if (static_cast<int>(row.size()) != row_deg[c]) {
      fail(reader.line_number(),
           "row " + std::to_string(c + 1) + " lists " +
               std::to_string(row.size()) + " entries but declares degree " +
               std::to_string(row_deg[c]));
    }
    std::sort(row.begin(), row.end());
    if (row != rows_from_cols[c]) {
      fail(reader.line_number(), "row " + std::to_string(c + 1) +
                                     " disagrees with the column lists");
    }
  }

  std::vector<MatrixEntry> entries;
  for (int v = 0; v < n; ++v) {
    for (int c : cols[v]) entries.push_back({c, v, 1.0});
  }
  return MeasurementMatrix(m, n, std::move(entries));
}

void write_alist(const MeasurementMatrix& matrix, std::ostream& out) {
  if (!matrix.is_binary()) {
    throw std::invalid_argument(
        "alist holds binary matrices; use the weighted format");
  }
  const int n = matrix.cols();
  const int m = matrix.rows();
  std::vector<std::vector<int>> cols(n), rows(m);
  for (const MatrixEntry& e : matrix.entries()) {
    cols[e.col].push_back(e.row);
    rows[e.row].push_back(e.col);
  }
  int max_col = 0, max_row = 0;
  for (const auto& c : cols) max_col = std::max(max_col, (int)c.size());
  for (const auto& r : rows) max_row = std::max(max_row, (int)r.size());

  out << n << ' ' << m << '\n';
  out << max_col << ' ' << max_row << '\n';
  for (int v = 0; v < n; ++v) out << cols[v].size() << " \n"[v == n - 1];
  for (int c = 0; c < m; ++c) out << rows[c].size() << " \n"[c == m - 1];
  auto write_padded = [&](const std::vector<int>& list, int width) {
    for (int i = 0; i < width; ++i) {
      if (i) out << ' ';
      out << (i < (int)list.size() ? list[i] + 1 : 0);
    }
    out << '\n';
  };
  for (int v = 0; v < n; ++v) write_padded(cols[v], max_col);
  for (int c = 0; c < m; ++c) write_padded(rows[c], max_row);
}

MeasurementMatrix read_weighted(std::istream& in) {
  LineReader reader(in);
  const auto header = reader.int_line("matrix header");
  if (header.size() != 3 || header[0] <= 0 || header[1] <= 0 || header[2] < 0) {
    fail(reader.line_number(), "header must be: m n nnz");
  }
  const int m = static_cast<int>(header[0]);
  const int n = static_cast<int>(header[1]);
  const long long nnz = header[2];

  std::vector<MatrixEntry> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (long long k = 0; k < nnz; ++k) {
    const std::string text = reader.next_line("matrix entry");
    std::istringstream ss(text);
    long long j = 0, i = 0;
    double value = 0;
    if (!(ss >> j >> i >> value)) {
      fail(reader.line_number(), "expected: row col value");
    }
    std::string rest;
    if (ss >> rest) fail(reader.line_number(), "trailing junk after entry");
    if (j < 1 || j > m) fail(reader.line_number(), "row index out of range");
    if (i < 1 || i > n) fail(reader.line_number(), "column index out of range");
    if (!std::isfinite(value) || value < 0.0) {
      fail(reader.line_number(), "value must be finite and nonnegative");
    }
    entries.push_back({static_cast<int>(j - 1), static_cast<int>(i - 1), value});
  }
  return MeasurementMatrix(m, n, std::move(entries));
}

void write_weighted(const MeasurementMatrix& matrix, std::ostream& out) {
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nnz() << '\n';
  out.precision(17);
  for (const MatrixEntry& e : matrix.entries()) {
    out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  }
}

Signal read_signal(std::istream& in, int expected_len) {
  std::vector<double> values;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    std::istringstream ss(text);
    double v = 0;
    if (!(ss >> v)) fail(line, "expected one numeric value");
    std::string rest;
    if (ss >> rest) fail(line, "expected one value per line");
    if (!std::isfinite(v) || v < 0.0) {
      fail(line, "signal entries must be finite and >= 0");
    }
    values.push_back(v);
  }
  if (expected_len >= 0 && static_cast<int>(values.size()) != expected_len) {
    throw std::runtime_error("signal has " + std::to_string(values.size()) +
                             " entries, expected " +
                             std::to_string(expected_len));
  }
  return Signal(std::move(values));
}

void write_signal(const Signal& x, std::ostream& out) {
  out.precision(17);
  for (double v : x.values) out << v << '\n';
}

MeasurementMatrix read_alist_file(const std::string& path) {
  auto in = open_input(path);
  return read_alist(in);
}

void write_alist_file(const MeasurementMatrix& matrix,
                      const std::string& path) {
  auto out = open_output(path);
  write_alist(matrix, out);
}

MeasurementMatrix read_weighted_file(const std::string& path) {
  auto in = open_input(path);
  return read_weighted(in);
}

void write_weighted_file(const MeasurementMatrix& matrix,
                         const std::string& path) {
  auto out = open_output(path);
  write_weighted(matrix, out);
}

Signal read_signal_file(const std::string& path, int expected_len) {
  auto in = open_input(path);
  return read_signal(in, expected_len);
}

MeasurementMatrix read_matrix_file(const std::string& path, bool weighted) {
  return weighted ? read_weighted_file(path) : read_alist_file(path);
}

}  // namespace ipa
