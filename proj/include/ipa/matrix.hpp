#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ipa {

// One structurally present entry of a sparse measurement matrix.
// Stored values are strictly positive; a zero is represented by absence.
struct MatrixEntry {
  int row = 0;
  int col = 0;
  double value = 1.0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

// Sparse m x n nonnegative measurement matrix in canonical (row, col) order.
//
// Invariants enforced at construction:
//   * all values strictly positive and finite (explicit zeros are dropped),
//   * no duplicate (row, col) pairs,
//   * every column has at least one entry.
// Zero rows are permitted. Immutable after construction.
class MeasurementMatrix {
 public:
  MeasurementMatrix(int rows, int cols, std::vector<MatrixEntry> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<MatrixEntry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  // True when every stored value equals 1, enabling the exact integer path.
  bool is_binary() const { return binary_; }

  std::vector<int> column_degrees() const;
  std::vector<int> row_degrees() const;

  // Stable 64-bit hash of (rows, cols, canonical entries).
  std::uint64_t fingerprint() const;

 private:
  int rows_;
  int cols_;
  bool binary_;
  std::vector<MatrixEntry> entries_;
};

// Bipartite adjacency view of a measurement matrix: variable nodes are
// columns, measurement (check) nodes are rows. Both directions are stored,
// neighbor lists sorted ascending, edge values aligned with the lists.
struct TannerGraph {
  int var_count = 0;
  int check_count = 0;
  bool binary = true;

  std::vector<int> var_offsets;        // size var_count + 1
  std::vector<int> var_checks;         // checks adjacent to each variable
  std::vector<double> var_check_values;

  std::vector<int> check_offsets;      // size check_count + 1
  std::vector<int> check_vars;         // variables adjacent to each check
  std::vector<double> check_var_values;

  std::span<const int> checks_of(int v) const {
    return {var_checks.data() + var_offsets[v],
            var_checks.data() + var_offsets[v + 1]};
  }
  std::span<const double> check_values_of(int v) const {
    return {var_check_values.data() + var_offsets[v],
            var_check_values.data() + var_offsets[v + 1]};
  }
  std::span<const int> vars_of(int c) const {
    return {check_vars.data() + check_offsets[c],
            check_vars.data() + check_offsets[c + 1]};
  }
  std::span<const double> var_values_of(int c) const {
    return {check_var_values.data() + check_offsets[c],
            check_var_values.data() + check_offsets[c + 1]};
  }
  int var_degree(int v) const { return var_offsets[v + 1] - var_offsets[v]; }
  int check_degree(int c) const {
    return check_offsets[c + 1] - check_offsets[c];
  }
  std::size_t edge_count() const { return var_checks.size(); }
};

// Adjacency exactly matches the nonzero pattern; edge values preserved.
TannerGraph build_graph(const MeasurementMatrix& matrix);

// Inverse of build_graph up to canonical entry ordering.
MeasurementMatrix to_matrix(const TannerGraph& graph);

// Nonnegative real signal of length n. Entries are validated finite and >= 0.
struct Signal {
  std::vector<double> values;

  Signal() = default;
  explicit Signal(std::vector<double> v);

  static Signal indicator(int n, std::span<const int> support);

  int size() const { return static_cast<int>(values.size()); }
  std::vector<int> support() const;  // {v : x_v > 0}
  bool is_integral() const;
};

// Measurement vector y of length m.
struct Measurements {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  bool is_integral() const;
};

// y_c = sum_v a_cv * x_v. Exact when matrix and signal are integral.
Measurements measure(const MeasurementMatrix& matrix, const Signal& x);
Measurements measure(const TannerGraph& graph, const Signal& x);

// Pattern matrix with all values 1 plus the 0/1 signal of the same support.
std::pair<MeasurementMatrix, Signal> binarize(const MeasurementMatrix& matrix,
                                              const Signal& x);

// Groups of variable nodes with identical check neighborhoods (size >= 2).
// Such columns are pairwise indistinguishable to the reconstruction.
std::vector<std::vector<int>> duplicate_column_groups(const TannerGraph& graph);

}  // namespace ipa
