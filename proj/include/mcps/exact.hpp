#pragma once

// Exact oracle: depth-first enumeration of valid colorings only. Cars are
// visited left to right; a free car may be white only if its ensemble can
// still reach its quota with the cars that follow, and black only while
// quota remains, so every leaf is a valid coloring. Branches whose switch
// count already exceeds the incumbent are cut, which keeps ties (and hence
// the optimum count) intact.

#include <cstdint>
#include <string>
#include <vector>

#include "mcps/core.hpp"
#include "mcps/error.hpp"

namespace mcps {

inline constexpr std::size_t kExactFreeLimit = 25;

struct ExactResult {
  std::size_t optimum = 0;
  Coloring coloring;  // lexicographically smallest optimum, White < Black
  std::uint64_t optimal_count = 0;
};

namespace detail {

class ExactSearch {
 public:
  explicit ExactSearch(const ProblemInstance& instance)
      : inst_(instance),
        remaining_black_(instance.quotas().begin(), instance.quotas().end()),
        remaining_slots_(instance.ensemble_count()),
        current_(instance.size(), Color::White) {
    for (EnsembleId e = 0; e < instance.ensemble_count(); ++e) {
      remaining_slots_[e] = instance.multiplicity(e);
    }
  }

  ExactResult run() {
    dfs(0, 0);
    return std::move(result_);
  }

 private:
  void dfs(std::size_t pos, std::size_t switches) {
    if (have_incumbent_ && switches > result_.optimum) return;
    if (pos == inst_.size()) {
      if (!have_incumbent_ || switches < result_.optimum) {
        have_incumbent_ = true;
        result_.optimum = switches;
        result_.coloring = current_;
        result_.optimal_count = 1;
      } else {
        ++result_.optimal_count;
      }
      return;
    }
    const EnsembleId e = inst_.ensemble_at(pos);
    --remaining_slots_[e];
    for (Color c : {Color::White, Color::Black}) {
      if (c == Color::White && remaining_slots_[e] < remaining_black_[e]) continue;
      if (c == Color::Black && remaining_black_[e] == 0) continue;
      current_[pos] = c;
      if (c == Color::Black) --remaining_black_[e];
      const std::size_t step = pos > 0 && current_[pos - 1] != c ? 1 : 0;
      dfs(pos + 1, switches + step);
      if (c == Color::Black) ++remaining_black_[e];
    }
    ++remaining_slots_[e];
  }

  const ProblemInstance& inst_;
  std::vector<std::size_t> remaining_black_;
  std::vector<std::size_t> remaining_slots_;
  Coloring current_;
  ExactResult result_;
  bool have_incumbent_ = false;
};

}  // namespace detail

inline ExactResult brute_force(const ProblemInstance& instance, std::size_t free_limit = kExactFreeLimit) {
  const std::size_t free = free_count(instance);
  if (free > free_limit) {
    throw CapacityError("exact solver supports at most " + std::to_string(free_limit) +
                            " non-fixed cars; instance '" + instance.name() + "' has " +
                            std::to_string(free),
                        free_limit);
  }
  return detail::ExactSearch(instance).run();
}

}  // namespace mcps
