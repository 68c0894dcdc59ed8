#include "ipa/failsets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ipa {

namespace {

void validate_set(const TannerGraph& graph, std::span<const int> set) {
  int prev = -1;
  for (int v : set) {
    if (v < 0 || v >= graph.var_count) {
      throw std::out_of_range("variable index " + std::to_string(v) +
                              " out of range");
    }
    if (v <= prev) {
      throw std::invalid_argument("set must be sorted and duplicate-free");
    }
    prev = v;
  }
}

}  // namespace

bool is_stopping_set(const TannerGraph& graph, std::span<const int> set) {
  validate_set(graph, set);
  std::vector<int> hits(graph.check_count, 0);
  for (int v : set) {
    for (int c : graph.checks_of(v)) ++hits[c];
  }
  for (int c = 0; c < graph.check_count; ++c) {
    if (hits[c] == 1) return false;
  }
  return true;
}

CompanionSets companion_set(const TannerGraph& graph,
                            std::span<const int> set) {
  validate_set(graph, set);
  std::vector<char> in_n(graph.check_count, 0);
  std::vector<char> in_t(graph.var_count, 0);
  CompanionSets out;
  for (int v : set) {
    in_t[v] = 1;
    for (int c : graph.checks_of(v)) {
      if (!in_n[c]) {
        in_n[c] = 1;
        out.checks.push_back(c);
      }
    }
  }
  std::sort(out.checks.begin(), out.checks.end());

  // Candidates are the variables incident to N; anything else has a
  // neighbor outside N by construction.
  std::vector<char> considered(graph.var_count, 0);
  for (int c : out.checks) {
    for (int v : graph.vars_of(c)) {
      if (in_t[v] || considered[v]) continue;
      considered[v] = 1;
      bool inside = true;
      for (int cv : graph.checks_of(v)) {
        if (!in_n[cv]) {
          inside = false;
          break;
        }
      }
      if (inside) out.companion.push_back(v);
    }
  }
  std::sort(out.companion.begin(), out.companion.end());
  return out;
}

TermatikoChecker::TermatikoChecker(const TannerGraph& graph)
    : graph_(&graph),
      check_seen_(graph.check_count, 0),
      t_count_(graph.check_count, 0),
      qual_count_(graph.check_count, 0),
      var_in_set_(graph.var_count, 0),
      var_qualifies_(graph.var_count, 0),
      comp_stamp_(graph.check_count, 0),
      comp_value_(graph.check_count, 0),
      checks_in_n_() {}

bool TermatikoChecker::check_connected_to_companion(int check) {
  if (comp_stamp_[check] == epoch_) return comp_value_[check] != 0;
  const TannerGraph& g = *graph_;
  bool connected = false;
  for (int v : g.vars_of(check)) {
    if (var_in_set_[v] == epoch_) continue;
    bool inside = true;
    for (int c : g.checks_of(v)) {
      if (check_seen_[c] != epoch_) {
        inside = false;
        break;
      }
    }
    if (inside) {
      connected = true;
      break;
    }
  }
  comp_stamp_[check] = epoch_;
  comp_value_[check] = connected ? 1 : 0;
  return connected;
}

TermatikoChecker::Outcome TermatikoChecker::check(std::span<const int> set) {
  const TannerGraph& g = *graph_;
  ++epoch_;
  checks_in_n_.clear();

  for (int v : set) {
    var_in_set_[v] = epoch_;
    for (int c : g.checks_of(v)) {
      if (check_seen_[c] != epoch_) {
        check_seen_[c] = epoch_;
        t_count_[c] = 0;
        qual_count_[c] = 0;
        checks_in_n_.push_back(c);
      }
      ++t_count_[c];
    }
  }

  // A set member qualifies when every one of its checks sees the set twice.
  for (int v : set) {
    bool qual = true;
    for (int c : g.checks_of(v)) {
      if (t_count_[c] < 2) {
        qual = false;
        break;
      }
    }
    if (qual) {
      var_qualifies_[v] = epoch_;
      for (int c : g.checks_of(v)) ++qual_count_[c];
    }
  }

  for (int c : checks_in_n_) {
    if (qual_count_[c] >= 2) continue;
    if (check_connected_to_companion(c)) continue;
    // Violation: pick the provably recoverable variable.
    int witness_var = -1;
    int first_in_set = -1;
    for (int v : g.vars_of(c)) {
      if (var_in_set_[v] != epoch_) continue;
      if (first_in_set < 0) first_in_set = v;
      if (var_qualifies_[v] == epoch_) {
        witness_var = v;
        break;
      }
    }
    if (witness_var < 0) witness_var = first_in_set;
    return {false, TermatikoClass::T2, c, witness_var};
  }

  TermatikoClass cls = TermatikoClass::T1;
  for (int c : checks_in_n_) {
    if (!check_connected_to_companion(c)) {
      cls = TermatikoClass::T2;
      break;
    }
  }
  return {true, cls, -1, -1};
}

TermatikoAnalysis check_termatiko(const TannerGraph& graph,
                                  std::span<const int> set) {
  validate_set(graph, set);
  TermatikoChecker checker(graph);
  const auto outcome = checker.check(set);
  CompanionSets sets = companion_set(graph, set);

  TermatikoAnalysis analysis;
  analysis.set.assign(set.begin(), set.end());
  analysis.checks = std::move(sets.checks);
  analysis.companion = std::move(sets.companion);
  analysis.is_termatiko = outcome.is_termatiko;
  analysis.cls = outcome.cls;
  if (!outcome.is_termatiko) {
    analysis.witness = {outcome.witness_check, outcome.witness_var};
  }
  return analysis;
}

bool is_termatiko_by_ipa(const TannerGraph& graph, std::span<const int> set,
                         const IpaOptions& options) {
  if (!graph.binary) {
    throw std::invalid_argument(
        "the definition-based predicate needs a binary matrix; binarize first");
  }
  validate_set(graph, set);
  const Signal x = Signal::indicator(graph.var_count, set);
  const Measurements y = measure(graph, x);
  const IpaResult result = reconstruct(graph, y, options);
  for (double v : result.x_hat.values) {
    if (v != 0.0) return false;
  }
  return true;
}

PrunedInstance prune_to_active(const TannerGraph& graph,
                               std::span<const int> set) {
  validate_set(graph, set);
  if (set.empty()) {
    throw std::invalid_argument("cannot prune for the empty set");
  }
  CompanionSets sets = companion_set(graph, set);

  PrunedInstance out;
  out.var_map.assign(set.begin(), set.end());
  out.var_map.insert(out.var_map.end(), sets.companion.begin(),
                     sets.companion.end());
  std::sort(out.var_map.begin(), out.var_map.end());
  out.check_map = sets.checks;

  std::vector<int> var_new(graph.var_count, -1);
  for (std::size_t i = 0; i < out.var_map.size(); ++i) {
    var_new[out.var_map[i]] = static_cast<int>(i);
  }
  std::vector<int> check_new(graph.check_count, -1);
  for (std::size_t i = 0; i < out.check_map.size(); ++i) {
    check_new[out.check_map[i]] = static_cast<int>(i);
  }

  std::vector<MatrixEntry> entries;
  for (int c : out.check_map) {
    const auto vars = graph.vars_of(c);
    const auto values = graph.var_values_of(c);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (var_new[vars[i]] >= 0) {
        entries.push_back({check_new[c], var_new[vars[i]], values[i]});
      }
    }
  }
  out.graph = build_graph(MeasurementMatrix(
      static_cast<int>(out.check_map.size()),
      static_cast<int>(out.var_map.size()), std::move(entries)));
  for (int v : set) out.set.push_back(var_new[v]);
  std::sort(out.set.begin(), out.set.end());
  return out;
}

bool predicts_full_failure(const TermatikoCatalog& catalog, const Signal& x) {
  const std::vector<int> support = x.support();
  if (static_cast<int>(support.size()) > catalog.kmax) {
    throw std::invalid_argument(
        "catalog covers sizes up to " + std::to_string(catalog.kmax) +
        " but the support has " + std::to_string(support.size()) +
        " positions; the prediction would be inconclusive");
  }
  std::vector<char> in_support(x.size(), 0);
  for (int v : support) in_support[v] = 1;
  for (const auto& set : catalog.sets) {
    if (set.empty() || set.size() > support.size()) continue;
    bool contained = true;
    for (int v : set) {
      if (!in_support[v]) {
        contained = false;
        break;
      }
    }
    if (contained) return true;
  }
  return false;
}

}  // namespace ipa
