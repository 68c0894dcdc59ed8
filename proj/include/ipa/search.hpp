#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipa/failsets.hpp"
#include "ipa/matrix.hpp"

namespace ipa {

// Explicit resource caps for the exhaustive searches. 0 means unlimited.
// When a cap fires the result is returned with complete = false; output is
// never truncated silently.
struct SearchBudget {
  double max_seconds = 0;
  std::uint64_t max_nodes = 0;
};

struct StoppingSetOptions {
  int tau = 1;        // maximum set size
  int threads = 1;
  SearchBudget budget;
};

struct StoppingSetStats {
  std::vector<std::int64_t> count_by_size;  // index k = number of sets of size k
  std::optional<int> s_min;                 // smallest nonempty size found
  bool complete = true;
  std::uint64_t nodes_visited = 0;
};

// Streams every nonempty stopping set of size <= tau exactly once, via
// depth-first branch and bound with constraint propagation. The sink is
// invoked as sink(worker_id, set) with the set sorted ascending; calls from
// one worker are serialized, workers run concurrently. A null sink counts only.
using StoppingSetSink = std::function<void(int, std::span<const int>)>;

StoppingSetStats enumerate_stopping_sets(const TannerGraph& graph,
                                         const StoppingSetOptions& options,
                                         const StoppingSetSink& sink = {});

// Buffer-and-sort convenience wrapper; output lexicographically sorted and
// independent of the worker count.
std::vector<std::vector<int>> collect_stopping_sets(
    const TannerGraph& graph, const StoppingSetOptions& options,
    StoppingSetStats* stats = nullptr);

struct SpectrumEntry {
  int size = 0;
  std::int64_t t1 = 0;    // termatiko sets with every check in N touching S
  std::int64_t t2 = 0;    // all remaining termatiko sets
  bool exact = true;      // exact count vs lower bound
};

struct SizeSpectrum {
  std::string method;     // "brute" or "heuristic"
  int tau = 0;            // stopping-set threshold (heuristic only)
  int kmax = 0;           // largest set size considered
  std::vector<SpectrumEntry> sizes;  // ascending, dense 1..kmax
  std::optional<int> h_min;          // smallest size with a positive count
  std::optional<int> s_min;          // stopping distance, when enumerated
  bool complete = true;

  std::int64_t total(int size) const;
};

struct BruteForceOptions {
  int kmax = 1;
  int threads = 1;
  SearchBudget budget;
  bool collect_sets = false;       // also return the sets themselves
  double cross_validate = 0;       // probability of re-testing via the IPA
  std::uint64_t seed = 1;          // sampling seed for cross-validation
};

struct BruteForceResult {
  SizeSpectrum spectrum;                // exact counts per size and class
  std::vector<std::vector<int>> sets;   // when collect_sets, sorted lex
  std::uint64_t candidates_tested = 0;
  std::uint64_t cross_validated = 0;
};

// Tests every candidate subset of size 1..kmax with the graph criterion.
// Any disagreement during cross-validation throws; it would mean the two
// predicates diverge, which must never happen.
BruteForceResult brute_force_termatiko(const TannerGraph& graph,
                                       const BruteForceOptions& options);

TermatikoCatalog brute_force_catalog(const TannerGraph& graph, int kmax);

struct HeuristicOptions {
  int tau = 1;          // stopping-set enumeration threshold
  int kmax = 0;         // subset size cap; 0 -> min(tau, 12)
  int threads = 1;
  SearchBudget budget;
  bool collect_sets = false;
  double cross_validate = 0;
  std::uint64_t seed = 1;
};

struct HeuristicResult {
  SizeSpectrum spectrum;                 // lower bounds, deduplicated globally
  std::vector<std::vector<int>> sets;    // when collect_sets, sorted lex
  std::vector<std::int64_t> stopping_count_by_size;
  std::optional<int> s_min;
  bool stopping_complete = true;
  std::uint64_t subsets_tested = 0;
};

// Enumerates stopping sets of size <= tau and tests their nonempty subsets
// (up to kmax) with the graph criterion, deduplicating findings globally.
HeuristicResult heuristic_termatiko(const TannerGraph& graph,
                                    const HeuristicOptions& options);

struct EnsembleOptions {
  std::vector<std::vector<int>> proto;
  int lift = 1;
  int count = 1;
  int tau = 8;             // stopping enumeration cap per matrix
  int kmax = 3;            // brute-force cap per matrix
  std::uint64_t seed = 1;  // matrix i uses seed + i
  int threads = 1;
  SearchBudget per_matrix_budget;
};

struct EnsembleRow {
  int index = 0;
  std::uint64_t seed = 0;
  std::optional<int> s_min;
  std::optional<int> h_min;  // estimated termatiko distance (upper bound)
  bool complete = true;
};

struct EnsembleResult {
  std::vector<EnsembleRow> rows;
  double mean_s_min = 0;  // over rows where known
  double mean_h_min = 0;
  int missing = 0;        // rows with either quantity unknown
};

// Seeded experiment over `count` lifted matrices: per-matrix stopping
// distance (threshold escalation up to tau) and estimated termatiko
// distance from the subset heuristic combined with brute force to kmax.
EnsembleResult ensemble_stats(const EnsembleOptions& options);

}  // namespace ipa
