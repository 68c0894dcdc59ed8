#pragma once

#include <iosfwd>
#include <string>

#include "ipa/matrix.hpp"

namespace ipa {

// alist interchange format for binary matrices (MacKay convention):
//   line 1: "n m"            (columns, rows)
//   line 2: "max_col_deg max_row_deg"
//   line 3: n column degrees
//   line 4: m row degrees
//   next n lines: 1-based row indices per column (zero padding ignored)
//   next m lines: 1-based column indices per row
// Errors are reported with the offending line number.
MeasurementMatrix read_alist(std::istream& in);
MeasurementMatrix read_alist_file(const std::string& path);
void write_alist(const MeasurementMatrix& matrix, std::ostream& out);
void write_alist_file(const MeasurementMatrix& matrix,
                      const std::string& path);

// Weighted triple-list format for nonnegative real matrices:
//   header "m n nnz", then nnz lines "j i value" with 1-based indices.
MeasurementMatrix read_weighted(std::istream& in);
MeasurementMatrix read_weighted_file(const std::string& path);
void write_weighted(const MeasurementMatrix& matrix, std::ostream& out);
void write_weighted_file(const MeasurementMatrix& matrix,
                         const std::string& path);

// Signal files: CSV, one value per line. expected_len < 0 skips the check.
Signal read_signal(std::istream& in, int expected_len = -1);
Signal read_signal_file(const std::string& path, int expected_len = -1);
void write_signal(const Signal& x, std::ostream& out);

// Reads alist or weighted format based on the flag; shared by the tools.
MeasurementMatrix read_matrix_file(const std::string& path, bool weighted);

}  // namespace ipa
