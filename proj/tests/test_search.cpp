#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ipa/failsets.hpp"
#include "ipa/generators.hpp"
#include "ipa/matrix.hpp"
#include "ipa/rng.hpp"
#include "ipa/search.hpp"
#include "test_util.hpp"

using namespace ipa;

TEST_CASE("stopping-set enumeration matches the naive filter") {
  SplitMix64 rng(424242);
  const std::vector<int> degrees{2, 3};
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = test_util::random_binary_matrix(rng, 6, 10, degrees);
    const TannerGraph g = build_graph(m);
    StoppingSetOptions options;
    options.tau = 10;
    const auto found = collect_stopping_sets(g, options);
    const auto expected = test_util::naive_stopping_sets(g, 10);
    CHECK(found == expected);

    // no duplicates in the stream
    const std::set<std::vector<int>> unique(found.begin(), found.end());
    CHECK(unique.size() == found.size());
  }
}

TEST_CASE("stopping-set enumeration on the counter-example graph") {
  const TannerGraph g = build_graph(builtin_instance("fig5").matrix);
  StoppingSetOptions options;
  options.tau = 4;
  StoppingSetStats stats;
  const auto found = collect_stopping_sets(g, options, &stats);
  const auto expected = test_util::naive_stopping_sets(g, 4);
  CHECK(found == expected);
  // the named minimal stopping set is found
  CHECK(std::binary_search(found.begin(), found.end(),
                           std::vector<int>{0, 1, 2, 3}));
  // the duplicate-column pairs are the smallest nonempty stopping sets
  CHECK(stats.s_min == 2);
  CHECK(stats.count_by_size[2] == 2);
  CHECK(stats.complete);
}

TEST_CASE("enumeration respects tau and threading") {
  const auto m = array_ldpc(5);
  const TannerGraph g = build_graph(m);
  StoppingSetOptions options;
  options.tau = 6;
  StoppingSetStats stats1;
  const auto seq = collect_stopping_sets(g, options, &stats1);
  for (const auto& s : seq) CHECK(s.size() <= 6);

  options.threads = 4;
  StoppingSetStats stats4;
  const auto par = collect_stopping_sets(g, options, &stats4);
  CHECK(seq == par);
  CHECK(stats1.count_by_size == stats4.count_by_size);
}

TEST_CASE("node budget flags incompleteness") {
  const auto m = array_ldpc(11);
  const TannerGraph g = build_graph(m);
  StoppingSetOptions options;
  options.tau = 6;
  options.budget.max_nodes = 100;
  StoppingSetStats stats;
  collect_stopping_sets(g, options, &stats);
  CHECK_FALSE(stats.complete);
}

TEST_CASE("brute force agrees with the definition-based census") {
  SplitMix64 rng(3333);
  const std::vector<int> degrees{2, 3};
  for (int trial = 0; trial < 12; ++trial) {
    const auto m = test_util::random_binary_matrix(rng, 6, 10, degrees);
    const TannerGraph g = build_graph(m);

    BruteForceOptions options;
    options.kmax = 3;
    options.collect_sets = true;
    options.cross_validate = 1.0;  // re-test every candidate via the IPA
    const BruteForceResult result = brute_force_termatiko(g, options);

    std::vector<std::vector<int>> expected;
    std::vector<std::int64_t> expected_by_size(4, 0);
    for (const auto& set : test_util::all_subsets(10, 3)) {
      if (is_termatiko_by_ipa(g, set)) {
        expected.push_back(set);
        ++expected_by_size[set.size()];
      }
    }
    CHECK(result.sets == expected);
    for (int k = 1; k <= 3; ++k) {
      CHECK(result.spectrum.total(k) == expected_by_size[k]);
      CHECK(result.spectrum.sizes[k - 1].exact);
    }
    CHECK(result.cross_validated == result.candidates_tested);
  }
}

TEST_CASE("brute force class split on the bundled graphs") {
  {
    const TannerGraph g = build_graph(builtin_instance("fig1").matrix);
    BruteForceOptions options;
    options.kmax = 2;
    options.collect_sets = true;
    const auto result = brute_force_termatiko(g, options);
    CHECK(std::binary_search(result.sets.begin(), result.sets.end(),
                             std::vector<int>{0, 1}));
    const TermatikoAnalysis a = check_termatiko(g, std::vector<int>{0, 1});
    CHECK(a.cls == TermatikoClass::T1);
  }
  {
    const TannerGraph g = build_graph(builtin_instance("fig5").matrix);
    BruteForceOptions options;
    options.kmax = 1;
    options.collect_sets = true;
    const auto result = brute_force_termatiko(g, options);
    // exactly the duplicate-column singletons
    CHECK(result.sets == std::vector<std::vector<int>>{{1}, {3}, {4}, {5}});
    CHECK(result.spectrum.h_min == 1);
  }
}

TEST_CASE("heuristic finds subsets of stopping sets and stays below brute force") {
  SplitMix64 rng(9090);
  const std::vector<int> degrees{2, 3};
  for (int trial = 0; trial < 12; ++trial) {
    const auto m = test_util::random_binary_matrix(rng, 6, 10, degrees);
    const TannerGraph g = build_graph(m);

    HeuristicOptions h;
    h.tau = 6;
    h.collect_sets = true;
    const HeuristicResult heur = heuristic_termatiko(g, h);

    BruteForceOptions b;
    b.kmax = 6;
    b.collect_sets = true;
    const BruteForceResult brute = brute_force_termatiko(g, b);

    for (int k = 1; k <= 6; ++k) {
      CHECK(heur.spectrum.total(k) <= brute.spectrum.total(k));
      CHECK_FALSE(heur.spectrum.sizes[k - 1].exact);
    }
    // everything the heuristic reports really is termatiko, and a subset of
    // the brute-force list
    for (const auto& set : heur.sets) {
      CHECK(std::binary_search(brute.sets.begin(), brute.sets.end(), set));
    }
    if (heur.spectrum.h_min && brute.spectrum.h_min) {
      CHECK(*heur.spectrum.h_min >= *brute.spectrum.h_min);
    }
  }
}

TEST_CASE("heuristic on fig1 finds the bundled example set") {
  const TannerGraph g = build_graph(builtin_instance("fig1").matrix);
  HeuristicOptions options;
  options.tau = 4;
  options.collect_sets = true;
  const HeuristicResult result = heuristic_termatiko(g, options);
  CHECK(std::binary_search(result.sets.begin(), result.sets.end(),
                           std::vector<int>{0, 1}));
  CHECK(result.s_min == 3);  // {0,1,2} is a minimal stopping set here
}

TEST_CASE("heuristic counts never shrink when tau grows") {
  SplitMix64 rng(777);
  const std::vector<int> degrees{2, 3};
  const auto m = test_util::random_binary_matrix(rng, 6, 10, degrees);
  const TannerGraph g = build_graph(m);
  std::vector<std::int64_t> previous(7, 0);
  for (int tau = 2; tau <= 8; ++tau) {
    HeuristicOptions options;
    options.tau = tau;
    options.kmax = 6;
    const HeuristicResult result = heuristic_termatiko(g, options);
    for (int k = 1; k <= 6; ++k) {
      CHECK(result.spectrum.total(k) >= previous[k]);
      previous[k] = result.spectrum.total(k);
    }
  }
}

TEST_CASE("heuristic is deterministic across worker counts") {
  SplitMix64 rng(31);
  const std::vector<int> degrees{2, 3};
  const auto m = test_util::random_binary_matrix(rng, 8, 16, degrees);
  const TannerGraph g = build_graph(m);
  HeuristicOptions a;
  a.tau = 6;
  a.collect_sets = true;
  HeuristicOptions b = a;
  b.threads = 5;
  const auto ra = heuristic_termatiko(g, a);
  const auto rb = heuristic_termatiko(g, b);
  CHECK(ra.sets == rb.sets);
  CHECK(ra.stopping_count_by_size == rb.stopping_count_by_size);
}

TEST_CASE("catalog helper") {
  const TannerGraph g = build_graph(builtin_instance("fig5").matrix);
  const TermatikoCatalog catalog = brute_force_catalog(g, 2);
  CHECK(catalog.kmax == 2);
  CHECK(predicts_full_failure(catalog,
                              Signal(std::vector<double>{0, 0, 0, 1, 0, 0})));
}

TEST_CASE("ensemble statistics on a single tiny lift") {
  EnsembleOptions options;
  options.proto = {{3, 3}};
  options.lift = 20;
  options.count = 1;
  options.tau = 8;
  options.kmax = 3;
  options.seed = 5;
  const EnsembleResult result = ensemble_stats(options);
  REQUIRE(result.rows.size() == 1);
  const EnsembleRow& row = result.rows[0];
  CHECK(row.seed == 5);
  REQUIRE(row.s_min.has_value());
  REQUIRE(row.h_min.has_value());
  CHECK(*row.h_min <= *row.s_min);
  CHECK(result.mean_s_min == *row.s_min);
  CHECK(result.mean_h_min == *row.h_min);
  CHECK(result.missing == 0);
}

TEST_CASE("invalid search parameters") {
  const TannerGraph g = build_graph(builtin_instance("fig5").matrix);
  CHECK_THROWS_AS(enumerate_stopping_sets(g, StoppingSetOptions{.tau = 0}),
                  std::invalid_argument);
  BruteForceOptions b;
  b.kmax = 0;
  CHECK_THROWS_AS(brute_force_termatiko(g, b), std::invalid_argument);
  HeuristicOptions h;
  h.tau = 2;
  h.kmax = 40;
  CHECK_THROWS_AS(heuristic_termatiko(g, h), std::invalid_argument);
}
