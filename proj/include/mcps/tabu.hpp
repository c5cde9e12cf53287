#pragma once

// Tabu search: single-flip, best-improvement moves over an Ising model. A
// flipped variable stays tabu for `tenure` moves unless flipping it would
// beat the best energy seen so far (aspiration). If every variable is tabu
// the best tabu move is taken anyway, so the walk never stalls; worsening
// moves are accepted when they are the best available. A run restarts from
// a fresh random state after `stagnation_limit` moves without improving
// its own best, and the search ends when the wall-clock timeout expires.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "mcps/error.hpp"
#include "mcps/ising.hpp"
#include "mcps/rng.hpp"
#include "mcps/spin_graph.hpp"

namespace mcps {

struct TabuParams {
  std::chrono::duration<double> timeout{1.0};
  std::size_t tenure = 0;            // 0: ceil(n_vars / 10), capped at 20
  std::size_t stagnation_limit = 0;  // 0: max(100, 10 n_vars)

  // floor(N / 3) seconds, but never less than one second.
  static TabuParams for_size(std::size_t n_cars) {
    TabuParams p;
    p.timeout = std::chrono::seconds(std::max<std::size_t>(1, n_cars / 3));
    return p;
  }

  void check() const {
    if (!(timeout.count() > 0.0)) throw InputError("tabu: timeout must be positive");
  }

  std::size_t effective_tenure(std::size_t n_vars) const {
    if (tenure > 0) return tenure;
    return std::clamp<std::size_t>((n_vars + 9) / 10, 1, 20);
  }
  std::size_t effective_stagnation(std::size_t n_vars) const {
    return stagnation_limit > 0 ? stagnation_limit : std::max<std::size_t>(100, 10 * n_vars);
  }
};

struct TabuResult {
  SpinVector spins;
  double energy = 0.0;
  double initial_energy = 0.0;  // energy of the first random start
  std::size_t restarts = 0;
  std::uint64_t moves = 0;
};

inline TabuResult tabu_search(const IsingModel& model, const TabuParams& params, Seed seed) {
  params.check();
  const std::size_t n = model.n_vars();
  if (n == 0) throw InputError("tabu: model has no variables");
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(params.timeout);
  const std::size_t tenure = params.effective_tenure(n);
  const std::size_t stagnation = params.effective_stagnation(n);

  const SpinGraph graph(model);
  Rng rng(seed);
  SpinVector s(n);
  std::vector<double> field(n);
  std::vector<std::uint64_t> tabu_until(n);
  TabuResult result;
  bool first = true;

  do {
    for (auto& v : s) v = (rng.next() >> 63) ? Spin{1} : Spin{-1};
    graph.local_fields(s, field);
    double current = energy(model, s);
    if (first) {
      result.initial_energy = current;
      result.spins = s;
      result.energy = current;
      first = false;
    } else {
      ++result.restarts;
      if (current < result.energy) {
        result.spins = s;
        result.energy = current;
      }
    }
    std::fill(tabu_until.begin(), tabu_until.end(), 0);
    double run_best = current;
    std::size_t since_improvement = 0;
    std::uint64_t iter = 0;

    while (since_improvement < stagnation && Clock::now() < deadline) {
      std::size_t pick = SIZE_MAX, fallback = 0;
      double pick_delta = std::numeric_limits<double>::infinity();
      double fallback_delta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = -2.0 * s[i] * field[i];
        if (delta < fallback_delta) {
          fallback_delta = delta;
          fallback = i;
        }
        const bool allowed = tabu_until[i] <= iter || current + delta < result.energy;
        if (allowed && delta < pick_delta) {
          pick_delta = delta;
          pick = i;
        }
      }
      if (pick == SIZE_MAX) {
        pick = fallback;
        pick_delta = fallback_delta;
      }
      graph.flip(pick, s, field);
      current += pick_delta;
      tabu_until[pick] = iter + tenure + 1;
      ++iter;
      ++result.moves;
      if (current < run_best) {
        run_best = current;
        since_improvement = 0;
      } else {
        ++since_improvement;
      }
      if (current < result.energy) {
        result.energy = current;
        result.spins = s;
      }
    }
  } while (Clock::now() < deadline);

  result.energy = energy(model, result.spins);
  return result;
}

}  // namespace mcps
