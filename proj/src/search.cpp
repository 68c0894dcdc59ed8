#include "ipa/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "ipa/generators.hpp"
#include "ipa/rng.hpp"

namespace ipa {

namespace {

using Clock = std::chrono::steady_clock;

// Shared stop/budget state for one search run.
struct RunControl {
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t max_nodes = 0;
  Clock::time_point deadline{};
  bool has_deadline = false;

  explicit RunControl(const SearchBudget& budget) {
    max_nodes = budget.max_nodes;
    if (budget.max_seconds > 0) {
      has_deadline = true;
      deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(
                                        budget.max_seconds));
    }
  }

  // Registers a batch of visited nodes; returns false once a cap fired.
  bool register_batch(std::uint64_t batch) {
    const std::uint64_t total = nodes.fetch_add(batch) + batch;
    if (max_nodes && total > max_nodes) stop.store(true);
    if (has_deadline && Clock::now() > deadline) stop.store(true);
    return !stop.load(std::memory_order_relaxed);
  }
};

void run_workers(int threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    body(0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        body(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Depth-first enumeration of all nonempty stopping sets of size <= tau.
//
// Each tree node partitions its completions by the first additional variable
// taken from an ordered candidate list (progressive exclusion), so every set
// is visited exactly once. Checks seeing the current set exactly once must
// gain a second included neighbor; they drive both propagation (forced
// inclusions, dead branches) and a greedy disjoint-cover lower bound.
class StoppingWorker {
 public:
  StoppingWorker(const TannerGraph& graph, int tau, RunControl& control)
      : g_(graph),
        tau_(tau),
        control_(control),
        state_(graph.var_count, 0),
        incl_cnt_(graph.check_count, 0),
        undec_cnt_(graph.check_count, 0),
        check_stamp_(graph.check_count, 0),
        var_stamp_(graph.var_count, 0) {}

  using Emit = std::function<void(std::span<const int>)>;

  std::uint64_t nodes_in_batch = 0;

  void run_root(int first_var, const Emit& emit) {
    reset();
    emit_ = &emit;
    for (int v = 0; v < first_var; ++v) {
      state_[v] = 2;
      for (int c : g_.checks_of(v)) --undec_cnt_[c];
    }
    std::vector<int> trail;
    include(first_var, trail);
    if (propagate(trail)) dfs();
    // State is rebuilt per root; nothing to undo here.
    flush_nodes();
  }

 private:
  void reset() {
    std::fill(state_.begin(), state_.end(), 0);
    std::fill(incl_cnt_.begin(), incl_cnt_.end(), 0);
    for (int c = 0; c < g_.check_count; ++c) undec_cnt_[c] = g_.check_degree(c);
    included_.clear();
    queue_.clear();
  }

  void include(int v, std::vector<int>& trail) {
    state_[v] = 1;
    included_.push_back(v);
    trail.push_back(v * 2);
    for (int c : g_.checks_of(v)) {
      ++incl_cnt_[c];
      --undec_cnt_[c];
      queue_.push_back(c);
    }
  }

  void exclude(int v, std::vector<int>& trail) {
    state_[v] = 2;
    trail.push_back(v * 2 + 1);
    for (int c : g_.checks_of(v)) {
      --undec_cnt_[c];
      queue_.push_back(c);
    }
  }

  void undo_to(std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      const int op = trail.back();
      trail.pop_back();
      const int v = op >> 1;
      state_[v] = 0;
      if (op & 1) {
        for (int c : g_.checks_of(v)) ++undec_cnt_[c];
      } else {
        included_.pop_back();
        for (int c : g_.checks_of(v)) {
          --incl_cnt_[c];
          ++undec_cnt_[c];
        }
      }
    }
  }

  // Forced inclusions and dead-branch detection for recently touched checks.
  bool propagate(std::vector<int>& trail) {
    while (!queue_.empty()) {
      const int c = queue_.back();
      queue_.pop_back();
      if (incl_cnt_[c] != 1) continue;
      if (undec_cnt_[c] == 0) {
        queue_.clear();
        return false;
      }
      if (undec_cnt_[c] == 1) {
        if (static_cast<int>(included_.size()) >= tau_) {
          queue_.clear();
          return false;
        }
        for (int v : g_.vars_of(c)) {
          if (state_[v] == 0) {
            include(v, trail);
            break;
          }
        }
      }
    }
    return true;
  }

  void flush_nodes() {
    if (nodes_in_batch) {
      control_.register_batch(nodes_in_batch);
      nodes_in_batch = 0;
    }
  }

  void dfs() {
    if (++nodes_in_batch >= 4096) {
      control_.register_batch(nodes_in_batch);
      nodes_in_batch = 0;
    }
    if (control_.stop.load(std::memory_order_relaxed)) return;

    // Find unsatisfied checks (exactly one included neighbor); they all
    // neighbor an included variable, so scanning those suffices.
    ++epoch_;
    int branch_check = -1;
    unsat_.clear();
    for (int v : included_) {
      for (int c : g_.checks_of(v)) {
        if (check_stamp_[c] == epoch_) continue;
        check_stamp_[c] = epoch_;
        if (incl_cnt_[c] == 1) {
          unsat_.push_back(c);
          if (branch_check < 0 || undec_cnt_[c] < undec_cnt_[branch_check]) {
            branch_check = c;
          }
        }
      }
    }

    std::vector<int> trail;
    if (branch_check < 0) {
      if (!included_.empty()) {
        scratch_.assign(included_.begin(), included_.end());
        std::sort(scratch_.begin(), scratch_.end());
        (*emit_)(scratch_);
      }
      if (static_cast<int>(included_.size()) >= tau_) return;
      // Extend towards larger stopping sets.
      std::size_t ex_mark_base = trail.size();
      for (int u = 0; u < g_.var_count; ++u) {
        if (state_[u] != 0) continue;
        if (control_.stop.load(std::memory_order_relaxed)) break;
        const std::size_t mark = trail.size();
        include(u, trail);
        if (propagate(trail)) dfs();
        undo_to(trail, mark);
        exclude(u, trail);
        queue_.clear();  // sibling exclusions need no immediate propagation
      }
      undo_to(trail, ex_mark_base);
      return;
    }

    // Lower bound: unsatisfied checks with pairwise disjoint undecided
    // neighborhoods each need a distinct new variable.
    ++epoch_;
    int needed = 0;
    for (int c : unsat_) {
      bool disjoint = true;
      for (int v : g_.vars_of(c)) {
        if (state_[v] == 0 && var_stamp_[v] == epoch_) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      ++needed;
      for (int v : g_.vars_of(c)) {
        if (state_[v] == 0) var_stamp_[v] = epoch_;
      }
    }
    if (static_cast<int>(included_.size()) + needed > tau_) return;

    // The adjacency span is stable under recursion; previously processed
    // candidates are excluded, so the state test keeps the snapshot exact.
    const std::size_t ex_mark = trail.size();
    for (int u : g_.vars_of(branch_check)) {
      if (state_[u] != 0) continue;
      if (control_.stop.load(std::memory_order_relaxed)) break;
      const std::size_t mark = trail.size();
      include(u, trail);
      if (propagate(trail)) dfs();
      undo_to(trail, mark);
      exclude(u, trail);
      queue_.clear();
    }
    undo_to(trail, ex_mark);
  }

  const TannerGraph& g_;
  int tau_;
  RunControl& control_;
  const Emit* emit_ = nullptr;

  std::vector<std::uint8_t> state_;  // 0 undecided, 1 included, 2 excluded
  std::vector<int> incl_cnt_, undec_cnt_;
  std::vector<int> included_;
  std::vector<int> queue_;
  std::vector<int> unsat_;
  std::vector<int> scratch_;
  std::vector<std::uint64_t> check_stamp_, var_stamp_;
  std::uint64_t epoch_ = 0;
};

int normalized_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

StoppingSetStats enumerate_stopping_sets(const TannerGraph& graph,
                                         const StoppingSetOptions& options,
                                         const StoppingSetSink& sink) {
  if (options.tau < 1) throw std::invalid_argument("tau must be >= 1");
  const int tau = std::min(options.tau, graph.var_count);
  const int threads =
      std::min(normalized_threads(options.threads), graph.var_count);

  RunControl control(options.budget);
  std::atomic<int> next_root{0};
  std::vector<std::vector<std::int64_t>> counts(
      threads, std::vector<std::int64_t>(tau + 1, 0));

  run_workers(threads, [&](int worker_id) {
    StoppingWorker worker(graph, tau, control);
    auto& local_counts = counts[worker_id];
    StoppingWorker::Emit emit = [&](std::span<const int> set) {
      ++local_counts[set.size()];
      if (sink) sink(worker_id, set);
    };
    while (true) {
      const int root = next_root.fetch_add(1);
      if (root >= graph.var_count) break;
      if (control.stop.load(std::memory_order_relaxed)) break;
      worker.run_root(root, emit);
    }
  });

  StoppingSetStats stats;
  stats.count_by_size.assign(tau + 1, 0);
  for (const auto& local : counts) {
    for (int k = 0; k <= tau; ++k) stats.count_by_size[k] += local[k];
  }
  for (int k = 1; k <= tau; ++k) {
    if (stats.count_by_size[k] > 0) {
      stats.s_min = k;
      break;
    }
  }
  stats.complete = !control.stop.load();
  stats.nodes_visited = control.nodes.load();
  return stats;
}

std::vector<std::vector<int>> collect_stopping_sets(
    const TannerGraph& graph, const StoppingSetOptions& options,
    StoppingSetStats* stats) {
  const int threads = normalized_threads(options.threads);
  std::vector<std::vector<std::vector<int>>> buffers(
      std::min(threads, std::max(1, graph.var_count)));
  StoppingSetOptions opts = options;
  opts.threads = static_cast<int>(buffers.size());
  auto result = enumerate_stopping_sets(
      graph, opts, [&](int worker_id, std::span<const int> set) {
        buffers[worker_id].emplace_back(set.begin(), set.end());
      });
  if (stats) *stats = result;

  std::vector<std::vector<int>> all;
  for (auto& buf : buffers) {
    all.insert(all.end(), std::make_move_iterator(buf.begin()),
               std::make_move_iterator(buf.end()));
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::int64_t SizeSpectrum::total(int size) const {
  for (const auto& e : sizes) {
    if (e.size == size) return e.t1 + e.t2;
  }
  return 0;
}

namespace {

constexpr int kMaxStoredSetSize = 16;

// Fixed-width key for global deduplication of found sets.
struct SetKey {
  std::uint8_t len = 0;
  std::uint16_t ids[kMaxStoredSetSize] = {};

  friend bool operator==(const SetKey&, const SetKey&) = default;
};

struct SetKeyHash {
  std::size_t operator()(const SetKey& k) const {
    return fnv1a64(k.ids, sizeof(k.ids), 0xCBF29CE484222325ull ^ k.len);
  }
};

SetKey make_key(std::span<const int> set) {
  SetKey key;
  key.len = static_cast<std::uint8_t>(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    key.ids[i] = static_cast<std::uint16_t>(set[i]);
  }
  return key;
}

// Concurrent map of found sets, sharded to keep lock contention low.
class FoundStore {
 public:
  bool insert(const SetKey& key, TermatikoClass cls) {
    Shard& shard = shards_[SetKeyHash{}(key) % kShards];
    std::lock_guard<std::mutex> lock(shard.mu);
    return shard.map.emplace(key, cls == TermatikoClass::T1 ? 1 : 2).second;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const Shard& shard : shards_) {
      for (const auto& [key, cls] : shard.map) fn(key, cls);
    }
  }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    std::mutex mu;
    std::unordered_map<SetKey, std::uint8_t, SetKeyHash> map;
  };
  Shard shards_[kShards];
};

// Deterministic per-candidate sampling for cross-validation: a candidate is
// re-tested with the definition-based predicate when its hash clears the
// threshold, independent of the worker that processed it.
struct CrossValidator {
  std::uint64_t threshold = 0;
  std::uint64_t seed = 0;

  CrossValidator(double probability, std::uint64_t s) : seed(s) {
    if (probability >= 1.0) {
      threshold = ~0ull;
    } else if (probability > 0) {
      threshold = static_cast<std::uint64_t>(probability * 1.8446744073709552e19);
    }
  }

  bool selected(std::span<const int> set) const {
    if (!threshold) return false;
    const std::uint64_t h =
        fnv1a64(set.data(), set.size() * sizeof(int), seed | 1);
    return h <= threshold;
  }
};

std::string format_set(std::span<const int> set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(set[i]);
  }
  return s + "}";
}

}  // namespace

BruteForceResult brute_force_termatiko(const TannerGraph& graph,
                                       const BruteForceOptions& options) {
  if (options.kmax < 1) throw std::invalid_argument("kmax must be >= 1");
  const int n = graph.var_count;
  const int kmax = std::min(options.kmax, n);
  const int threads = std::min(normalized_threads(options.threads), n);
  const CrossValidator validator(options.cross_validate, options.seed);

  RunControl control(options.budget);
  std::atomic<std::uint64_t> tested{0}, validated{0};
  std::atomic<bool> mismatch{false};
  std::mutex mismatch_mu;
  std::string mismatch_what;

  BruteForceResult result;
  result.spectrum.method = "brute";
  result.spectrum.kmax = kmax;
  result.spectrum.sizes.assign(kmax, SpectrumEntry{});
  for (int k = 1; k <= kmax; ++k) {
    result.spectrum.sizes[k - 1].size = k;
    result.spectrum.sizes[k - 1].exact = false;  // set once the size finishes
  }

  std::vector<std::vector<std::vector<int>>> set_buffers(threads);

  for (int k = 1; k <= kmax && !control.stop.load(); ++k) {
    std::atomic<int> next_first{0};
    std::vector<std::int64_t> t1(threads, 0), t2(threads, 0);

    run_workers(threads, [&](int worker_id) {
      TermatikoChecker checker(graph);
      std::vector<int> idx(k);
      std::uint64_t local_tested = 0, local_validated = 0, batch = 0;

      auto test_candidate = [&](std::span<const int> candidate) {
        const auto outcome = checker.check(candidate);
        ++local_tested;
        if (outcome.is_termatiko) {
          if (outcome.cls == TermatikoClass::T1) {
            ++t1[worker_id];
          } else {
            ++t2[worker_id];
          }
          if (options.collect_sets) {
            set_buffers[worker_id].emplace_back(candidate.begin(),
                                                candidate.end());
          }
        }
        if (validator.selected(candidate) && !mismatch.load()) {
          ++local_validated;
          if (is_termatiko_by_ipa(graph, candidate) != outcome.is_termatiko) {
            std::lock_guard<std::mutex> lock(mismatch_mu);
            mismatch.store(true);
            mismatch_what = format_set(candidate);
          }
        }
      };

      while (true) {
        const int first = next_first.fetch_add(1);
        if (first > n - k) break;
        if (control.stop.load(std::memory_order_relaxed)) break;

        idx[0] = first;
        for (int i = 1; i < k; ++i) idx[i] = first + i;
        while (true) {
          test_candidate(idx);
          if (++batch >= 8192) {
            control.register_batch(batch);
            batch = 0;
            if (control.stop.load(std::memory_order_relaxed)) break;
          }
          // Advance the combination, keeping idx[0] fixed.
          int pos = k - 1;
          while (pos >= 1 && idx[pos] == n - k + pos) --pos;
          if (pos < 1) break;
          ++idx[pos];
          for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
      }
      control.register_batch(batch);
      tested.fetch_add(local_tested);
      validated.fetch_add(local_validated);
    });

    auto& entry = result.spectrum.sizes[k - 1];
    for (int t = 0; t < threads; ++t) {
      entry.t1 += t1[t];
      entry.t2 += t2[t];
    }
    entry.exact = !control.stop.load();
  }

  if (mismatch.load()) {
    throw std::logic_error(
        "graph criterion and definition-based predicate disagree on " +
        mismatch_what);
  }

  result.spectrum.complete = !control.stop.load();
  for (const auto& entry : result.spectrum.sizes) {
    if (entry.t1 + entry.t2 > 0) {
      result.spectrum.h_min = entry.size;
      break;
    }
  }
  if (options.collect_sets) {
    for (auto& buf : set_buffers) {
      result.sets.insert(result.sets.end(),
                         std::make_move_iterator(buf.begin()),
                         std::make_move_iterator(buf.end()));
    }
    std::sort(result.sets.begin(), result.sets.end());
  }
  result.candidates_tested = tested.load();
  result.cross_validated = validated.load();
  return result;
}

TermatikoCatalog brute_force_catalog(const TannerGraph& graph, int kmax) {
  BruteForceOptions options;
  options.kmax = kmax;
  options.collect_sets = true;
  BruteForceResult result = brute_force_termatiko(graph, options);
  if (!result.spectrum.complete) {
    throw std::runtime_error("catalog enumeration exceeded its budget");
  }
  return TermatikoCatalog{kmax, std::move(result.sets)};
}

HeuristicResult heuristic_termatiko(const TannerGraph& graph,
                                    const HeuristicOptions& options) {
  if (options.tau < 1) throw std::invalid_argument("tau must be >= 1");
  const int tau = std::min(options.tau, graph.var_count);
  int kmax = options.kmax > 0 ? options.kmax : std::min(tau, kMaxStoredSetSize);
  if (kmax > kMaxStoredSetSize) {
    throw std::invalid_argument("subset size cap larger than " +
                                std::to_string(kMaxStoredSetSize) +
                                " is not supported");
  }
  kmax = std::min(kmax, tau);
  const int threads = std::min(normalized_threads(options.threads),
                               std::max(1, graph.var_count));
  const CrossValidator validator(options.cross_validate, options.seed);

  FoundStore store;
  std::atomic<std::uint64_t> tested{0};
  std::atomic<bool> mismatch{false};
  std::mutex mismatch_mu;
  std::string mismatch_what;

  struct WorkerState {
    std::unique_ptr<TermatikoChecker> checker;
    std::vector<int> subset;
    std::vector<int> idx;
    std::uint64_t tested = 0;
  };
  std::vector<WorkerState> workers(threads);
  for (auto& w : workers) {
    w.checker = std::make_unique<TermatikoChecker>(graph);
  }

  StoppingSetOptions enum_options;
  enum_options.tau = tau;
  enum_options.threads = threads;
  enum_options.budget = options.budget;

  const StoppingSetStats stats = enumerate_stopping_sets(
      graph, enum_options, [&](int worker_id, std::span<const int> sset) {
        WorkerState& w = workers[worker_id];
        const int wsize = static_cast<int>(sset.size());
        const int cap = std::min(kmax, wsize);
        for (int j = 1; j <= cap; ++j) {
          auto& idx = w.idx;
          idx.resize(j);
          for (int i = 0; i < j; ++i) idx[i] = i;
          while (true) {
            w.subset.resize(j);
            for (int i = 0; i < j; ++i) w.subset[i] = sset[idx[i]];
            const auto outcome = w.checker->check(w.subset);
            ++w.tested;
            if (outcome.is_termatiko) {
              store.insert(make_key(w.subset), outcome.cls);
            }
            if (validator.selected(w.subset) && !mismatch.load()) {
              if (is_termatiko_by_ipa(graph, w.subset) !=
                  outcome.is_termatiko) {
                std::lock_guard<std::mutex> lock(mismatch_mu);
                mismatch.store(true);
                mismatch_what = format_set(w.subset);
              }
            }
            int pos = j - 1;
            while (pos >= 0 && idx[pos] == wsize - j + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < j; ++i) idx[i] = idx[i - 1] + 1;
          }
        }
      });

  if (mismatch.load()) {
    throw std::logic_error(
        "graph criterion and definition-based predicate disagree on " +
        mismatch_what);
  }
  for (auto& w : workers) tested += w.tested;

  HeuristicResult result;
  result.spectrum.method = "heuristic";
  result.spectrum.tau = tau;
  result.spectrum.kmax = kmax;
  result.spectrum.sizes.assign(kmax, SpectrumEntry{});
  for (int k = 1; k <= kmax; ++k) {
    result.spectrum.sizes[k - 1].size = k;
    result.spectrum.sizes[k - 1].exact = false;  // lower bounds by nature
  }
  store.for_each([&](const SetKey& key, std::uint8_t cls) {
    auto& entry = result.spectrum.sizes[key.len - 1];
    if (cls == 1) {
      ++entry.t1;
    } else {
      ++entry.t2;
    }
  });
  for (const auto& entry : result.spectrum.sizes) {
    if (entry.t1 + entry.t2 > 0) {
      result.spectrum.h_min = entry.size;
      break;
    }
  }
  result.spectrum.s_min = stats.s_min;
  result.spectrum.complete = stats.complete;
  result.stopping_count_by_size = stats.count_by_size;
  result.s_min = stats.s_min;
  result.stopping_complete = stats.complete;
  result.subsets_tested = tested.load();

  if (options.collect_sets) {
    store.for_each([&](const SetKey& key, std::uint8_t) {
      std::vector<int> set(key.len);
      for (int i = 0; i < key.len; ++i) set[i] = key.ids[i];
      result.sets.push_back(std::move(set));
    });
    std::sort(result.sets.begin(), result.sets.end());
  }
  return result;
}

EnsembleResult ensemble_stats(const EnsembleOptions& options) {
  if (options.count < 1) throw std::invalid_argument("count must be >= 1");
  if (options.tau < 1) throw std::invalid_argument("tau must be >= 1");

  EnsembleResult result;
  double sum_s = 0, sum_h = 0;
  int known = 0;

  for (int i = 0; i < options.count; ++i) {
    EnsembleRow row;
    row.index = i;
    row.seed = options.seed + static_cast<std::uint64_t>(i);

    const MeasurementMatrix matrix =
        protograph_lift(options.proto, options.lift, row.seed);
    const TannerGraph graph = build_graph(matrix);

    // Escalate the stopping threshold until the stopping distance is inside
    // the enumerated range; small thresholds are cheap, so the repeated
    // passes cost little compared to the final one.
    HeuristicResult heur;
    bool have_heur = false;
    for (int t = std::min(4, options.tau);; t = std::min(t + 2, options.tau)) {
      HeuristicOptions h;
      h.tau = t;
      h.threads = options.threads;
      h.budget = options.per_matrix_budget;
      heur = heuristic_termatiko(graph, h);
      have_heur = true;
      if (heur.s_min || !heur.stopping_complete || t >= options.tau) break;
    }

    BruteForceOptions b;
    b.kmax = options.kmax;
    b.threads = options.threads;
    b.budget = options.per_matrix_budget;
    const BruteForceResult brute = brute_force_termatiko(graph, b);

    row.s_min = heur.s_min;
    if (brute.spectrum.h_min &&
        (!row.h_min || *brute.spectrum.h_min < *row.h_min)) {
      row.h_min = brute.spectrum.h_min;
    }
    if (have_heur && heur.spectrum.h_min &&
        (!row.h_min || *heur.spectrum.h_min < *row.h_min)) {
      row.h_min = heur.spectrum.h_min;
    }
    row.complete = heur.stopping_complete && brute.spectrum.complete;

    if (row.s_min && row.h_min) {
      sum_s += *row.s_min;
      sum_h += *row.h_min;
      ++known;
    } else {
      ++result.missing;
    }
    result.rows.push_back(row);
  }

  if (known > 0) {
    result.mean_s_min = sum_s / known;
    result.mean_h_min = sum_h / known;
  }
  return result;
}

}  // namespace ipa
