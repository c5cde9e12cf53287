#pragma once

#include <algorithm>
#include <vector>

#include "mcps/core.hpp"
#include "mcps/rng.hpp"

namespace mcps {

/// Random valid coloring: for every ensemble an independent, uniformly
/// chosen k-subset of its cars is black (partial Fisher-Yates over the
/// ensemble's positions).
inline Coloring random_valid(const ProblemInstance& instance, Seed seed) {
  Rng rng(seed);
  Coloring colors(instance.size(), Color::White);
  std::vector<std::size_t> pos;
  for (EnsembleId e = 0; e < instance.ensemble_count(); ++e) {
    const auto span = instance.positions_of(e);
    pos.assign(span.begin(), span.end());
    const std::size_t k = instance.quota(e);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(pos.size() - i));
      std::swap(pos[i], pos[j]);
      colors[pos[i]] = Color::Black;
    }
  }
  return colors;
}

// Black-first greedy: left to right, black while the car's ensemble still
// owes black cars, white otherwise.
inline Coloring greedy_black_first(const ProblemInstance& instance) {
  std::vector<std::size_t> remaining(instance.quotas().begin(), instance.quotas().end());
  Coloring colors(instance.size(), Color::White);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    auto& left = remaining[instance.ensemble_at(i)];
    if (left > 0) {
      colors[i] = Color::Black;
      --left;
    }
  }
  return colors;
}

}  // namespace mcps
