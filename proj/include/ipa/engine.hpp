#pragma once

#include <vector>

#include "ipa/matrix.hpp"

namespace ipa {

struct IpaOptions {
  int max_iter = 0;     // 0 -> 10 * n
  double tol = 1e-9;    // real-path convergence / comparison tolerance
  bool trace = false;   // record per-iteration message snapshots
};

// Snapshot of the message state after iteration `iteration`.
// Variable-to-check messages are independent of the target check, so they
// are stored per variable. Check-to-variable messages are per edge, indexed
// in the graph's check-major edge order; they are empty at iteration 0
// (no check update has run yet).
struct IntervalState {
  int iteration = 0;
  std::vector<double> lower_var;        // per variable
  std::vector<double> upper_var;        // per variable
  std::vector<double> lower_check_msg;  // per edge (check-major order)
  std::vector<double> upper_check_msg;  // per edge
};

struct IpaResult {
  Signal x_hat;              // final per-variable lower bounds
  int iterations = 0;        // update rounds executed
  bool converged = false;    // fixed-point rule fired before the cap
  bool exact_path = false;   // integer arithmetic, tolerance never consulted
  std::vector<IntervalState> trace;  // filled when options.trace is set
};

// Interval-passing reconstruction of a nonnegative signal from y.
// Binary matrices with integral measurements run on an exact integer path;
// everything else uses doubles with componentwise tolerance `tol` in the
// stop rule. Throws on dimension mismatch or non-finite input.
IpaResult reconstruct(const TannerGraph& graph, const Measurements& y,
                      const IpaOptions& options = {});
IpaResult reconstruct(const MeasurementMatrix& matrix, const Measurements& y,
                      const IpaOptions& options = {});

// Positions v with x_hat_v == x_v for the run on y = A x. Equality is exact
// on the integer path and within options.tol otherwise.
std::vector<int> recovered_positions(const TannerGraph& graph, const Signal& x,
                                     const IpaOptions& options = {});

// Per-iteration sets of positions whose lower (resp. upper) variable message
// equals the true value x_v, starting at iteration 0.
struct RecoveryTrace {
  std::vector<std::vector<int>> lower_exact;
  std::vector<std::vector<int>> upper_exact;
  int iterations = 0;
  bool converged = false;
  bool exact_path = false;
};

RecoveryTrace trace_recovery(const TannerGraph& graph, const Signal& x,
                             const IpaOptions& options = {});

}  // namespace ipa
