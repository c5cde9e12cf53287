#pragma once

// Evaluation protocol: every instance gets a random-valid baseline of 2N
// samples; each solver's best post-repair switch count is compared with the
// baseline mean ("improvement over random"); results are aggregated per
// (problem size, solver) with medians across instances.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "mcps/core.hpp"
#include "mcps/error.hpp"
#include "mcps/heuristics.hpp"
#include "mcps/rng.hpp"
#include "mcps/solve.hpp"

namespace mcps {

struct BaselineEstimate {
  std::size_t n_samples = 0;
  double mean_switches = 0.0;
  std::size_t best_switches = 0;
};

// n_samples == 0 means 2N. Sample i is random_valid(instance, derive_seed(seed, {i})).
inline BaselineEstimate estimate_baseline(const ProblemInstance& instance, Seed seed, std::size_t n_samples = 0) {
  BaselineEstimate b;
  b.n_samples = n_samples ? n_samples : 2 * instance.size();
  std::size_t total = 0;
  b.best_switches = SIZE_MAX;
  for (std::size_t i = 0; i < b.n_samples; ++i) {
    const std::size_t f = count_switches(random_valid(instance, derive_seed(seed, {i})));
    total += f;
    b.best_switches = std::min(b.best_switches, f);
  }
  b.mean_switches = static_cast<double>(total) / static_cast<double>(b.n_samples);
  return b;
}

enum class BaselineMode { Mean, Best };

struct BenchmarkRecord {
  std::string instance;
  std::size_t size = 0;
  std::string solver;
  std::size_t best_switches = 0;
  bool valid_raw = false;
  double baseline_mean = 0.0;
  std::size_t baseline_best = 0;
  double improvement = 0.0;  // baseline reference minus best_switches
  double wall_time_ms = 0.0;
  Seed seed = 0;
  bool timeout_bound = false;
  std::optional<std::string> error;
};

struct SuiteOptions {
  std::size_t jobs = 1;
  BaselineMode baseline = BaselineMode::Mean;
};

inline double improvement_over(const BaselineEstimate& b, std::size_t best, BaselineMode mode) {
  const double ref = mode == BaselineMode::Mean ? b.mean_switches : static_cast<double>(b.best_switches);
  return ref - static_cast<double>(best);
}

namespace detail {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

inline std::size_t solver_rank(std::string_view name) {
  for (std::size_t r = 0; r < std::size(kAllSolvers); ++r) {
    if (solver_name(kAllSolvers[r]) == name) return r;
  }
  return std::size(kAllSolvers);
}

}  // namespace detail

/// Runs every solver on every instance. Instance i uses baseline seed
/// derive_seed(master, {i, 0}) and solver seed derive_seed(master, {i, 1}).
/// Failures are stored in the record instead of aborting the suite.
inline std::vector<BenchmarkRecord> run_suite(std::span<const ProblemInstance> instances,
                                              std::span<const SolverConfig> solvers, Seed master_seed,
                                              const SuiteOptions& options = {}) {
  if (instances.empty()) throw InputError("run_suite: no instances");
  if (solvers.empty()) throw InputError("run_suite: no solvers");

  std::vector<BaselineEstimate> baselines(instances.size());
  detail::parallel_for(instances.size(), options.jobs, [&](std::size_t i) {
    baselines[i] = estimate_baseline(instances[i], derive_seed(master_seed, {i, 0}));
  });

  std::vector<BenchmarkRecord> records(instances.size() * solvers.size());
  detail::parallel_for(records.size(), options.jobs, [&](std::size_t task) {
    const std::size_t i = task / solvers.size();
    const SolverConfig& cfg = solvers[task % solvers.size()];
    BenchmarkRecord& rec = records[task];
    rec.instance = instances[i].name();
    rec.size = instances[i].size();
    rec.solver = std::string(solver_name(cfg.kind));
    rec.seed = derive_seed(master_seed, {i, 1});
    rec.timeout_bound = is_timeout_bound(cfg.kind);
    rec.baseline_mean = baselines[i].mean_switches;
    rec.baseline_best = baselines[i].best_switches;
    try {
      const SolveResult r = solve(instances[i], cfg, rec.seed);
      rec.best_switches = r.switches;
      rec.valid_raw = r.valid_raw;
      rec.improvement = improvement_over(baselines[i], r.switches, options.baseline);
      rec.wall_time_ms = std::chrono::duration<double, std::milli>(r.wall_time).count();
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });
  return records;
}

struct AggregateRow {
  std::size_t size = 0;
  std::string solver;
  std::size_t instances = 0;
  double percent_valid = 0.0;
  double median_switches = 0.0;
  double median_improvement = 0.0;
  std::optional<double> median_wall_time_ms;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

// Even counts average the two central values.
inline double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

/// Groups records by (size, solver), ordered by size and then by the
/// canonical solver order. Records carrying an error are left out. The
/// result does not depend on record order.
inline std::vector<AggregateRow> aggregate(std::span<const BenchmarkRecord> records, bool with_timing = false) {
  if (records.empty()) throw InputError("aggregate: no records");
  using Key = std::tuple<std::size_t, std::size_t, std::string>;
  std::map<Key, std::vector<const BenchmarkRecord*>> groups;
  for (const auto& r : records) {
    if (r.error) continue;
    groups[{r.size, detail::solver_rank(r.solver), r.solver}].push_back(&r);
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, group] : groups) {
    AggregateRow row;
    row.size = std::get<0>(key);
    row.solver = std::get<2>(key);
    row.instances = group.size();
    std::vector<double> f, imp, ms;
    std::size_t valid = 0;
    for (const auto* r : group) {
      f.push_back(static_cast<double>(r->best_switches));
      imp.push_back(r->improvement);
      ms.push_back(r->wall_time_ms);
      valid += r->valid_raw;
    }
    row.percent_valid = 100.0 * static_cast<double>(valid) / static_cast<double>(group.size());
    row.median_switches = median(f);
    row.median_improvement = median(imp);
    if (with_timing) row.median_wall_time_ms = median(ms);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Median over instances of the per-instance baseline mean, keyed by size.
// Each instance is counted once even if several solvers ran on it.
inline std::map<std::size_t, double> median_baseline_by_size(std::span<const BenchmarkRecord> records) {
  std::map<std::size_t, std::map<std::string, double>> per_size;
  for (const auto& r : records) per_size[r.size].emplace(r.instance, r.baseline_mean);
  std::map<std::size_t, double> out;
  for (const auto& [n, by_instance] : per_size) {
    std::vector<double> v;
    for (const auto& [name, mean] : by_instance) v.push_back(mean);
    out[n] = median(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference instance family

// Number of ensembles used for an N-car reference instance.
inline std::size_t reference_ensembles(std::size_t n_cars) {
  return std::max<std::size_t>(1, n_cars / 5);
}

/// Seeded family of synthetic instances: candidate j is
/// generate_synthetic(N, M, policy, derive_seed(seed, {N, j})). With
/// `accepted_only`, candidates failing the 70% non-fixed rule are skipped
/// until `count` instances are collected. Instances are named
/// mcps_N{N}_i{index}.
inline std::vector<ProblemInstance> synthetic_family(std::size_t n_cars, std::size_t n_ensembles,
                                                     QuotaPolicy policy, std::size_t count, Seed seed,
                                                     bool accepted_only = true) {
  std::vector<ProblemInstance> out;
  out.reserve(count);
  const std::size_t limit = 1000 * (count + 1);
  for (std::size_t j = 0; out.size() < count; ++j) {
    if (j >= limit) {
      throw InputError("too few synthetic candidates of size " + std::to_string(n_cars) +
                       " pass the non-fixed filter");
    }
    auto inst = generate_synthetic(n_cars, n_ensembles, policy, derive_seed(seed, {n_cars, j}),
                                   "mcps_N" + std::to_string(n_cars) + "_i" + std::to_string(out.size()));
    if (accepted_only && !partition_stats(inst).accepted) continue;
    out.push_back(std::move(inst));
  }
  return out;
}

// The benchmark reference family: reference_ensembles(N) ensembles,
// uniform quotas, filtered.
inline std::vector<ProblemInstance> reference_suite(std::size_t n_cars, std::size_t count, Seed seed) {
  return synthetic_family(n_cars, reference_ensembles(n_cars), QuotaPolicy::UniformRandom, count, seed);
}

}  // namespace mcps
