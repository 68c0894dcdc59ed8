#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ipa/engine.hpp"
#include "ipa/matrix.hpp"

namespace ipa {

// True iff every check adjacent to S has at least two neighbors in S.
// The empty set qualifies vacuously.
bool is_stopping_set(const TannerGraph& graph, std::span<const int> set);

// N = all checks adjacent to T; companion = variables outside T whose
// entire neighborhood lies inside N. Both outputs sorted ascending.
struct CompanionSets {
  std::vector<int> checks;     // N
  std::vector<int> companion;  // S
};
CompanionSets companion_set(const TannerGraph& graph, std::span<const int> set);

enum class TermatikoClass {
  T1,  // every check in N touches both T and the companion set
  T2,  // all remaining termatiko sets
};

struct TermatikoAnalysis {
  std::vector<int> set;        // T, sorted
  std::vector<int> checks;     // N
  std::vector<int> companion;  // S
  bool is_termatiko = false;
  TermatikoClass cls = TermatikoClass::T2;
  // For negative verdicts: a check c* violating the criterion and the
  // variable v* that the reconstruction provably recovers.
  std::optional<std::pair<int, int>> witness;
};

// Graph criterion: T is termatiko iff every check in N is either connected
// to the companion set, or has at least two T-neighbors all of whose checks
// see T at least twice.
TermatikoAnalysis check_termatiko(const TannerGraph& graph,
                                  std::span<const int> set);

// Definition-based predicate: reconstruct from the measurements of T's
// binary indicator and test for the all-zero output. Requires a binary
// graph; callers binarize first. The empty set is termatiko.
bool is_termatiko_by_ipa(const TannerGraph& graph, std::span<const int> set,
                         const IpaOptions& options = {});

// Subgraph restricted to the checks N and variables T-union-companion, with
// maps from new indices back to the original ones. Verdicts are preserved.
struct PrunedInstance {
  TannerGraph graph;
  std::vector<int> var_map;    // new var index -> original
  std::vector<int> check_map;  // new check index -> original
  std::vector<int> set;        // T in new indices, sorted
};
PrunedInstance prune_to_active(const TannerGraph& graph,
                               std::span<const int> set);

// All nonempty termatiko sets of size <= kmax of one graph.
struct TermatikoCatalog {
  int kmax = 0;
  std::vector<std::vector<int>> sets;  // each sorted; list sorted lex
};

// Predicted full failure: some nonempty catalog set is contained in
// supp(x). Throws if |supp(x)| exceeds the catalog bound (inconclusive).
bool predicts_full_failure(const TermatikoCatalog& catalog, const Signal& x);

// Reusable allocation-free core of the graph criterion for enumeration hot
// paths. Not thread-safe; give each worker its own instance.
class TermatikoChecker {
 public:
  explicit TermatikoChecker(const TannerGraph& graph);

  struct Outcome {
    bool is_termatiko = false;
    TermatikoClass cls = TermatikoClass::T2;
    int witness_check = -1;
    int witness_var = -1;
  };

  // set must be sorted, duplicate-free, in range.
  Outcome check(std::span<const int> set);

 private:
  bool check_connected_to_companion(int check);

  const TannerGraph* graph_;
  std::uint64_t epoch_ = 0;
  std::vector<std::uint64_t> check_seen_;    // stamped: check is in N
  std::vector<int> t_count_;                 // |N_T(c)| per check in N
  std::vector<int> qual_count_;              // qualifying T-neighbors per check
  std::vector<std::uint64_t> var_in_set_;    // stamped: variable is in T
  std::vector<std::uint64_t> var_qualifies_; // stamped: variable qualifies
  std::vector<std::uint64_t> comp_stamp_;    // stamped cache for S-connectivity
  std::vector<std::uint8_t> comp_value_;
  std::vector<int> checks_in_n_;             // N in first-touch order
};

}  // namespace ipa
