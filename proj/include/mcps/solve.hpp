#pragma once

// Uniform solver front end. Model-based solvers run on the encoded model
// after conditioning on forced cars; every raw output is decoded, greedily
// repaired to meet the quotas, and scored.

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcps/annealing.hpp"
#include "mcps/core.hpp"
#include "mcps/error.hpp"
#include "mcps/exact.hpp"
#include "mcps/heuristics.hpp"
#include "mcps/ising.hpp"
#include "mcps/repair.hpp"
#include "mcps/tabu.hpp"

namespace mcps {

enum class SolverKind { Random, Greedy, Annealing, Tabu, Exact };

inline constexpr SolverKind kAllSolvers[] = {SolverKind::Random, SolverKind::Greedy,
                                             SolverKind::Annealing, SolverKind::Tabu,
                                             SolverKind::Exact};

inline std::string_view solver_name(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::Random: return "random";
    case SolverKind::Greedy: return "greedy";
    case SolverKind::Annealing: return "sa";
    case SolverKind::Tabu: return "tabu";
    case SolverKind::Exact: return "exact";
  }
  return "?";
}

inline SolverKind parse_solver(std::string_view name) {
  for (SolverKind k : kAllSolvers) {
    if (solver_name(k) == name) return k;
  }
  throw InputError("unknown solver '" + std::string(name) + "' (expected random|greedy|sa|tabu|exact)");
}

// Whether the result depends on wall-clock time rather than only on the seed.
inline bool is_timeout_bound(SolverKind kind) noexcept { return kind == SolverKind::Tabu; }

struct SolverConfig {
  SolverKind kind = SolverKind::Greedy;
  std::optional<SaParams> sa;      // default SaParams::for_size(N)
  std::optional<TabuParams> tabu;  // default TabuParams::for_size(N)
  std::optional<double> lambda;    // default N
  std::size_t random_samples = 0;  // random solver draws; 0 means 2N
  std::size_t exact_limit = kExactFreeLimit;
  std::size_t threads = 1;         // SA sample workers when `sa` is defaulted
};

struct SolveResult {
  Coloring coloring;
  std::size_t switches = 0;
  double energy = 0.0;  // full encoded model, at the solve's lambda
  bool valid = false;
  bool repaired = false;    // the chosen raw output violated a quota
  bool valid_raw = false;   // at least one raw output met every quota
  std::size_t samples = 0;
  std::size_t raw_valid_samples = 0;
  std::chrono::duration<double> wall_time{0};
  std::string solver;
  std::optional<Seed> seed;
};

namespace detail {

struct Candidate {
  Coloring coloring;
  std::size_t switches;
  bool raw_valid;
};

// Decode spins of a conditioned model back to a full coloring.
inline Coloring decode(const ProblemInstance& instance, const IsingModel& reduced,
                       std::span<const Spin> spins, const std::map<std::size_t, Color>& fixed) {
  Coloring c(instance.size(), Color::White);
  for (const auto& [p, color] : fixed) c[p] = color;
  for (std::size_t v = 0; v < spins.size(); ++v) c[reduced.var_to_position()[v]] = to_color(spins[v]);
  return c;
}

// Keeps the candidate with the fewest switches after repair; raw-valid
// candidates win ties, then earlier ones.
class CandidatePool {
 public:
  explicit CandidatePool(const ProblemInstance& instance) : inst_(instance) {}

  void offer(std::span<const Color> raw) {
    ++samples_;
    auto fixed = repair(inst_, raw);
    const bool raw_valid = !fixed.changed;
    raw_valid_ += raw_valid;
    const std::size_t f = count_switches(fixed.coloring);
    if (!best_ || f < best_->switches || (f == best_->switches && raw_valid && !best_->raw_valid)) {
      best_ = Candidate{std::move(fixed.coloring), f, raw_valid};
    }
  }

  void fill(SolveResult& r) && {
    r.coloring = std::move(best_->coloring);
    r.repaired = !best_->raw_valid;
    r.samples = samples_;
    r.raw_valid_samples = raw_valid_;
    r.valid_raw = raw_valid_ > 0;
  }

 private:
  const ProblemInstance& inst_;
  std::optional<Candidate> best_;
  std::size_t samples_ = 0;
  std::size_t raw_valid_ = 0;
};

}  // namespace detail

inline SolveResult solve(const ProblemInstance& instance, const SolverConfig& config, Seed seed) {
  const auto start = std::chrono::steady_clock::now();
  const PenaltyWeight lambda =
      config.lambda ? PenaltyWeight(*config.lambda) : PenaltyWeight::for_instance(instance);
  SolveResult r;
  r.solver = std::string(solver_name(config.kind));
  detail::CandidatePool pool(instance);

  switch (config.kind) {
    case SolverKind::Random: {
      const std::size_t draws = config.random_samples ? config.random_samples : 2 * instance.size();
      for (std::size_t i = 0; i < draws; ++i) pool.offer(random_valid(instance, derive_seed(seed, {i})));
      r.seed = seed;
      break;
    }
    case SolverKind::Greedy:
      pool.offer(greedy_black_first(instance));
      break;
    case SolverKind::Exact:
      pool.offer(brute_force(instance, config.exact_limit).coloring);
      break;
    case SolverKind::Annealing:
    case SolverKind::Tabu: {
      r.seed = seed;
      const auto fixed = fixed_positions(instance);
      const IsingModel reduced = condition(encode(instance, lambda), fixed_spin_assignments(instance));
      if (reduced.n_vars() == 0) {
        pool.offer(detail::decode(instance, reduced, {}, fixed));
      } else if (config.kind == SolverKind::Annealing) {
        SaParams p = config.sa.value_or(SaParams::for_size(instance.size()));
        if (!config.sa) p.threads = config.threads;
        for (const auto& s : simulated_annealing(reduced, p, seed)) {
          pool.offer(detail::decode(instance, reduced, s.spins, fixed));
        }
      } else {
        const auto t = tabu_search(reduced, config.tabu.value_or(TabuParams::for_size(instance.size())), seed);
        pool.offer(detail::decode(instance, reduced, t.spins, fixed));
      }
      break;
    }
  }

  std::move(pool).fill(r);
  r.switches = count_switches(instance, r.coloring);
  r.valid = is_valid(instance, r.coloring);
  r.energy = coloring_energy(instance, r.coloring, lambda);
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace mcps
