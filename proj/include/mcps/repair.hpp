#pragma once

#include <cstddef>
#include <limits>

#include "mcps/core.hpp"

namespace mcps {

struct RepairResult {
  Coloring coloring;
  bool changed = false;
};

namespace detail {

// Change in f(w) if position p were painted `to`.
inline int switch_delta(std::span<const Color> c, std::size_t p, Color to) noexcept {
  int d = 0;
  if (p > 0) d += static_cast<int>(c[p - 1] != to) - static_cast<int>(c[p - 1] != c[p]);
  if (p + 1 < c.size()) d += static_cast<int>(c[p + 1] != to) - static_cast<int>(c[p + 1] != c[p]);
  return d;
}

}  // namespace detail

/// Greedy quota repair. Ensembles are processed in id order; an ensemble
/// with surplus black cars gets one black car flipped to white at a time,
/// always the flip that raises f(w) the least (leftmost on ties), and
/// deficits are filled the same way in the other direction. Valid inputs
/// come back unchanged.
inline RepairResult repair(const ProblemInstance& instance, std::span<const Color> colors) {
  const auto report = validate(instance, colors);
  RepairResult out{Coloring(colors.begin(), colors.end()), false};
  if (report.valid) return out;
  Coloring& c = out.coloring;
  for (const auto& dev : report.ensembles) {
    if (dev.deviation == 0) continue;
    const Color from = dev.deviation > 0 ? Color::Black : Color::White;
    const Color to = complement(from);
    const auto positions = instance.positions_of(dev.ensemble);
    const long long flips = dev.deviation > 0 ? dev.deviation : -dev.deviation;
    for (long long f = 0; f < flips; ++f) {
      std::size_t best = SIZE_MAX;
      int best_delta = std::numeric_limits<int>::max();
      for (std::size_t p : positions) {
        if (c[p] != from) continue;
        const int d = detail::switch_delta(c, p, to);
        if (d < best_delta) {
          best_delta = d;
          best = p;
        }
      }
      c[best] = to;
    }
    out.changed = true;
  }
  return out;
}

}  // namespace mcps
