#include "ipa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace ipa {

namespace {

// One reconstruction pass, shared by the integer and the real path.
//
// Message schedule is flooding: every check-to-variable message is computed
// from the previous round's variable messages, then every variable aggregates.
// Variable-to-check messages do not depend on the target check, so only the
// per-variable aggregates are kept between rounds.
template <typename Scalar>
struct Engine {
  const TannerGraph& g;
  Scalar tol;

  std::vector<Scalar> lower, upper;          // per variable
  std::vector<Scalar> next_lower, next_upper;
  std::vector<Scalar> edge_lower, edge_upper;  // per edge, check-major
  bool record_edges = false;

  Engine(const TannerGraph& graph, Scalar tolerance)
      : g(graph), tol(tolerance) {}

  static constexpr Scalar upper_init() {
    if constexpr (std::is_floating_point_v<Scalar>) {
      return std::numeric_limits<Scalar>::infinity();
    } else {
      return std::numeric_limits<Scalar>::max();
    }
  }

  void init(const std::vector<Scalar>& y) {
    lower.assign(g.var_count, Scalar(0));
    upper.assign(g.var_count, upper_init());
    for (int v = 0; v < g.var_count; ++v) {
      const auto checks = g.checks_of(v);
      const auto values = g.check_values_of(v);
      Scalar best = upper_init();
      for (std::size_t i = 0; i < checks.size(); ++i) {
        Scalar bound;
        if constexpr (std::is_floating_point_v<Scalar>) {
          bound = g.binary ? y[checks[i]] : y[checks[i]] / values[i];
        } else {
          bound = y[checks[i]];
        }
        best = std::min(best, bound);
      }
      upper[v] = best;
    }
    if (record_edges) {
      edge_lower.assign(g.edge_count(), Scalar(0));
      edge_upper.assign(g.edge_count(), Scalar(0));
    }
  }

  // Float rounding can break the interval invariants on adversarial weighted
  // instances, after which the message map amplifies the error without bound.
  // The run is cut at the last finite state instead of iterating into NaNs.
  bool state_is_finite() const {
    if constexpr (std::is_floating_point_v<Scalar>) {
      for (Scalar v : next_lower) {
        if (!std::isfinite(v)) return false;
      }
      for (Scalar v : next_upper) {
        if (!std::isfinite(v)) return false;
      }
    }
    return true;
  }

  // Computes the next round into next_lower/next_upper; returns false if the
  // new state is not finite (the caller then keeps the current state).
  bool prepare_step(const std::vector<Scalar>& y) {
    next_lower.assign(g.var_count, Scalar(0));
    next_upper.assign(g.var_count, upper_init());

    std::size_t edge = 0;
    for (int c = 0; c < g.check_count; ++c) {
      const auto vars = g.vars_of(c);
      const auto values = g.var_values_of(c);
      Scalar sum_upper = 0, sum_lower = 0;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        sum_upper += values[i] * upper[vars[i]];
        sum_lower += values[i] * lower[vars[i]];
      }
      for (std::size_t i = 0; i < vars.size(); ++i) {
        const int v = vars[i];
        Scalar lo = y[c] - (sum_upper - values[i] * upper[v]);
        Scalar hi = y[c] - (sum_lower - values[i] * lower[v]);
        if constexpr (std::is_floating_point_v<Scalar>) {
          if (!g.binary) {
            lo /= values[i];
            hi /= values[i];
          }
        }
        if (lo < Scalar(0)) lo = Scalar(0);
        next_lower[v] = std::max(next_lower[v], lo);
        next_upper[v] = std::min(next_upper[v], hi);
        if (record_edges) {
          edge_lower[edge] = lo;
          edge_upper[edge] = hi;
          ++edge;
        }
      }
    }
    return state_is_finite();
  }

  // Applies the prepared round; returns true when the stop rule fires.
  bool commit_step() {
    bool fixed = true;
    for (int v = 0; v < g.var_count && fixed; ++v) {
      if constexpr (std::is_floating_point_v<Scalar>) {
        fixed = std::abs(next_lower[v] - lower[v]) <= tol &&
                std::abs(next_upper[v] - upper[v]) <= tol;
      } else {
        fixed = next_lower[v] == lower[v] && next_upper[v] == upper[v];
      }
    }
    lower.swap(next_lower);
    upper.swap(next_upper);
    return fixed;
  }
};

template <typename Scalar>
IntervalState snapshot(const Engine<Scalar>& e, int iteration) {
  IntervalState s;
  s.iteration = iteration;
  s.lower_var.assign(e.lower.begin(), e.lower.end());
  s.upper_var.assign(e.upper.begin(), e.upper.end());
  if (iteration > 0 && e.record_edges) {
    s.lower_check_msg.assign(e.edge_lower.begin(), e.edge_lower.end());
    s.upper_check_msg.assign(e.edge_upper.begin(), e.edge_upper.end());
  }
  return s;
}

template <typename Scalar>
IpaResult run(const TannerGraph& graph, const std::vector<Scalar>& y,
              const IpaOptions& options) {
  const int max_iter =
      options.max_iter > 0 ? options.max_iter : 10 * std::max(1, graph.var_count);

  Engine<Scalar> engine(graph, static_cast<Scalar>(
                                   std::is_floating_point_v<Scalar>
                                       ? options.tol
                                       : 0));
  engine.record_edges = options.trace;
  engine.init(y);

  IpaResult result;
  result.exact_path = !std::is_floating_point_v<Scalar>;
  if (options.trace) result.trace.push_back(snapshot(engine, 0));

  int iter = 0;
  bool converged = false;
  while (iter < max_iter) {
    if (!engine.prepare_step(y)) break;  // keep the last finite state
    ++iter;
    converged = engine.commit_step();
    if (options.trace) result.trace.push_back(snapshot(engine, iter));
    if (converged) break;
  }

  std::vector<double> x_hat(engine.lower.begin(), engine.lower.end());
  result.x_hat = Signal(std::move(x_hat));
  result.iterations = iter;
  result.converged = converged;
  return result;
}

bool use_exact_path(const TannerGraph& graph, const Measurements& y) {
  if (!graph.binary) return false;
  for (double v : y.values) {
    if (v != std::floor(v) || std::abs(v) > 9.0e15) return false;
  }
  return true;
}

}  // namespace

IpaResult reconstruct(const TannerGraph& graph, const Measurements& y,
                      const IpaOptions& options) {
  if (y.size() != graph.check_count) {
    throw std::invalid_argument("measurement length does not match row count");
  }
  for (double v : y.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("measurements must be finite");
    }
  }
  if (options.max_iter < 0) {
    throw std::invalid_argument("max_iter must be >= 1 (or 0 for the default)");
  }

  if (use_exact_path(graph, y)) {
    std::vector<std::int64_t> yi(y.values.size());
    for (std::size_t i = 0; i < yi.size(); ++i) {
      yi[i] = static_cast<std::int64_t>(y.values[i]);
    }
    return run<std::int64_t>(graph, yi, options);
  }
  return run<double>(graph, y.values, options);
}

IpaResult reconstruct(const MeasurementMatrix& matrix, const Measurements& y,
                      const IpaOptions& options) {
  return reconstruct(build_graph(matrix), y, options);
}

namespace {

bool matches(double a, double b, bool exact, double tol) {
  return exact ? a == b : std::abs(a - b) <= tol;
}

}  // namespace

std::vector<int> recovered_positions(const TannerGraph& graph, const Signal& x,
                                     const IpaOptions& options) {
  const Measurements y = measure(graph, x);
  const IpaResult result = reconstruct(graph, y, options);
  std::vector<int> recovered;
  for (int v = 0; v < graph.var_count; ++v) {
    if (matches(result.x_hat.values[v], x.values[v], result.exact_path,
                options.tol)) {
      recovered.push_back(v);
    }
  }
  return recovered;
}

RecoveryTrace trace_recovery(const TannerGraph& graph, const Signal& x,
                             const IpaOptions& options) {
  IpaOptions traced = options;
  traced.trace = true;
  const Measurements y = measure(graph, x);
  const IpaResult result = reconstruct(graph, y, traced);

  RecoveryTrace trace;
  trace.iterations = result.iterations;
  trace.converged = result.converged;
  trace.exact_path = result.exact_path;
  for (const IntervalState& state : result.trace) {
    std::vector<int> lower_set, upper_set;
    for (int v = 0; v < graph.var_count; ++v) {
      if (matches(state.lower_var[v], x.values[v], result.exact_path,
                  options.tol)) {
        lower_set.push_back(v);
      }
      if (matches(state.upper_var[v], x.values[v], result.exact_path,
                  options.tol)) {
        upper_set.push_back(v);
      }
    }
    trace.lower_exact.push_back(std::move(lower_set));
    trace.upper_exact.push_back(std::move(upper_set));
  }
  return trace;
}

}  // namespace ipa
