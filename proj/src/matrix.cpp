#include "ipa/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "ipa/rng.hpp"

namespace ipa {

MeasurementMatrix::MeasurementMatrix(int rows, int cols,
                                     std::vector<MatrixEntry> entries)
    : rows_(rows), cols_(cols), binary_(true), entries_(std::move(entries)) {
  if (rows_ <= 0 || cols_ <= 0) {
    throw std::invalid_argument("matrix dimensions must be positive");
  }
  // Explicit zeros are structural absence; drop them before validating.
  std::erase_if(entries_, [](const MatrixEntry& e) { return e.value == 0.0; });

  for (const MatrixEntry& e : entries_) {
    if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_) {
      throw std::invalid_argument("matrix entry index out of range: (" +
                                  std::to_string(e.row) + ", " +
                                  std::to_string(e.col) + ")");
    }
    if (!std::isfinite(e.value) || e.value < 0.0) {
      throw std::invalid_argument("matrix values must be finite and nonnegative");
    }
    if (e.value != 1.0) binary_ = false;
  }

  std::sort(entries_.begin(), entries_.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) {
              return std::pair(a.row, a.col) < std::pair(b.row, b.col);
            });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].row == entries_[i - 1].row &&
        entries_[i].col == entries_[i - 1].col) {
      throw std::invalid_argument("duplicate matrix entry at (" +
                                  std::to_string(entries_[i].row) + ", " +
                                  std::to_string(entries_[i].col) + ")");
    }
  }

  std::vector<char> column_used(cols_, 0);
  for (const MatrixEntry& e : entries_) column_used[e.col] = 1;
  for (int c = 0; c < cols_; ++c) {
    if (!column_used[c]) {
      throw std::invalid_argument("column " + std::to_string(c) +
                                  " has no entries (degree-0 variable node)");
    }
  }
}

std::vector<int> MeasurementMatrix::column_degrees() const {
  std::vector<int> deg(cols_, 0);
  for (const MatrixEntry& e : entries_) ++deg[e.col];
  return deg;
}

std::vector<int> MeasurementMatrix::row_degrees() const {
  std::vector<int> deg(rows_, 0);
  for (const MatrixEntry& e : entries_) ++deg[e.row];
  return deg;
}

std::uint64_t MeasurementMatrix::fingerprint() const {
  std::uint64_t h = fnv1a64(&rows_, sizeof(rows_));
  h = fnv1a64(&cols_, sizeof(cols_), h);
  for (const MatrixEntry& e : entries_) {
    h = fnv1a64(&e.row, sizeof(e.row), h);
    h = fnv1a64(&e.col, sizeof(e.col), h);
    std::uint64_t bits;
    std::memcpy(&bits, &e.value, sizeof(bits));
    h = fnv1a64(&bits, sizeof(bits), h);
  }
  return h;
}

TannerGraph build_graph(const MeasurementMatrix& matrix) {
  TannerGraph g;
  g.var_count = matrix.cols();
  g.check_count = matrix.rows();
  g.binary = matrix.is_binary();

  const auto& entries = matrix.entries();
  g.var_offsets.assign(g.var_count + 1, 0);
  g.check_offsets.assign(g.check_count + 1, 0);
  for (const MatrixEntry& e : entries) {
    ++g.var_offsets[e.col + 1];
    ++g.check_offsets[e.row + 1];
  }
  for (int v = 0; v < g.var_count; ++v) g.var_offsets[v + 1] += g.var_offsets[v];
  for (int c = 0; c < g.check_count; ++c) {
    g.check_offsets[c + 1] += g.check_offsets[c];
  }

  g.var_checks.resize(entries.size());
  g.var_check_values.resize(entries.size());
  g.check_vars.resize(entries.size());
  g.check_var_values.resize(entries.size());

  std::vector<int> var_fill(g.var_offsets.begin(), g.var_offsets.end() - 1);
  std::vector<int> check_fill(g.check_offsets.begin(), g.check_offsets.end() - 1);
  // Entries arrive sorted by (row, col), so both directions come out sorted.
  for (const MatrixEntry& e : entries) {
    const int vi = var_fill[e.col]++;
    g.var_checks[vi] = e.row;
    g.var_check_values[vi] = e.value;
    const int ci = check_fill[e.row]++;
    g.check_vars[ci] = e.col;
    g.check_var_values[ci] = e.value;
  }
  return g;
}

MeasurementMatrix to_matrix(const TannerGraph& graph) {
  std::vector<MatrixEntry> entries;
  entries.reserve(graph.edge_count());
  for (int c = 0; c < graph.check_count; ++c) {
    const auto vars = graph.vars_of(c);
    const auto values = graph.var_values_of(c);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      entries.push_back({c, vars[i], values[i]});
    }
  }
  return MeasurementMatrix(graph.check_count, graph.var_count,
                           std::move(entries));
}

Signal::Signal(std::vector<double> v) : values(std::move(v)) {
  for (double x : values) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::invalid_argument("signal entries must be finite and >= 0");
    }
  }
}

Signal Signal::indicator(int n, std::span<const int> support) {
  std::vector<double> v(n, 0.0);
  for (int idx : support) {
    if (idx < 0 || idx >= n) {
      throw std::invalid_argument("support index out of range");
    }
    v[idx] = 1.0;
  }
  return Signal(std::move(v));
}

std::vector<int> Signal::support() const {
  std::vector<int> s;
  for (int v = 0; v < size(); ++v) {
    if (values[v] > 0.0) s.push_back(v);
  }
  return s;
}

bool Signal::is_integral() const {
  for (double x : values) {
    if (x != std::floor(x)) return false;
  }
  return true;
}

bool Measurements::is_integral() const {
  for (double y : values) {
    if (y != std::floor(y)) return false;
  }
  return true;
}

Measurements measure(const TannerGraph& graph, const Signal& x) {
  if (x.size() != graph.var_count) {
    throw std::invalid_argument("signal length does not match column count");
  }
  Measurements y;
  y.values.assign(graph.check_count, 0.0);
  for (int c = 0; c < graph.check_count; ++c) {
    const auto vars = graph.vars_of(c);
    const auto values = graph.var_values_of(c);
    double acc = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      acc += values[i] * x.values[vars[i]];
    }
    y.values[c] = acc;
  }
  return y;
}

Measurements measure(const MeasurementMatrix& matrix, const Signal& x) {
  if (x.size() != matrix.cols()) {
    throw std::invalid_argument("signal length does not match column count");
  }
  Measurements y;
  y.values.assign(matrix.rows(), 0.0);
  for (const MatrixEntry& e : matrix.entries()) {
    y.values[e.row] += e.value * x.values[e.col];
  }
  return y;
}

std::pair<MeasurementMatrix, Signal> binarize(const MeasurementMatrix& matrix,
                                              const Signal& x) {
  if (x.size() != matrix.cols()) {
    throw std::invalid_argument("signal length does not match column count");
  }
  std::vector<MatrixEntry> entries = matrix.entries();
  for (MatrixEntry& e : entries) e.value = 1.0;
  std::vector<double> z(x.values.size(), 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = x.values[i] > 0.0 ? 1.0 : 0.0;
  return {MeasurementMatrix(matrix.rows(), matrix.cols(), std::move(entries)),
          Signal(std::move(z))};
}

std::vector<std::vector<int>> duplicate_column_groups(const TannerGraph& graph) {
  std::vector<int> order(graph.var_count);
  for (int v = 0; v < graph.var_count; ++v) order[v] = v;
  auto key = [&](int v) { return graph.checks_of(v); };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ka = key(a), kb = key(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(),
                                        kb.end()) ||
           (std::equal(ka.begin(), ka.end(), kb.begin(), kb.end()) && a < b);
  });
  std::vector<std::vector<int>> groups;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    const auto ki = key(order[i]);
    while (j < order.size()) {
      const auto kj = key(order[j]);
      if (!std::equal(ki.begin(), ki.end(), kj.begin(), kj.end())) break;
      ++j;
    }
    if (j - i >= 2) {
      groups.emplace_back(order.begin() + i, order.begin() + j);
    }
    i = j;
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

}  // namespace ipa
