#pragma once

// Ising and QUBO models for the paint shop problem.
//
// Spin convention: +1 is Black, -1 is White. The encoded Hamiltonian is
//
//   H = H_A + lambda * sum_e H_B(e)
//   H_A    = -sum_i s_i s_{i+1}
//   H_B(e) = (#e - 2 k_e) sum_{i in e} s_i + sum_{i<j in e} s_i s_j
//
// H_B(e) with S = sum_{i in e} s_i equals ((S - a)^2 - a^2 - m) / 2 where
// m = #e and a = 2k_e - m, so it is minimal exactly when k_e cars are black,
// and each black car too many or too few costs 2 (k' - k)^2. On valid
// colorings H_B(e) is the constant -(a^2 + m) / 2; only energy differences
// carry meaning.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcps/core.hpp"
#include "mcps/error.hpp"

namespace mcps {

using Spin = std::int8_t;
using SpinVector = std::vector<Spin>;

inline constexpr Spin to_spin(Color c) noexcept { return c == Color::Black ? Spin{1} : Spin{-1}; }
inline constexpr Color to_color(Spin s) noexcept { return s > 0 ? Color::Black : Color::White; }

inline SpinVector to_spins(std::span<const Color> colors) {
  SpinVector s(colors.size());
  std::transform(colors.begin(), colors.end(), s.begin(), [](Color c) { return to_spin(c); });
  return s;
}

inline Coloring to_coloring(std::span<const Spin> spins) {
  Coloring c(spins.size());
  std::transform(spins.begin(), spins.end(), c.begin(), [](Spin s) { return to_color(s); });
  return c;
}

using VarPair = std::pair<std::size_t, std::size_t>;

class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(std::size_t n_vars) : n_vars_(n_vars), var_to_position_(n_vars) {
    std::iota(var_to_position_.begin(), var_to_position_.end(), std::size_t{0});
  }

  std::size_t n_vars() const noexcept { return n_vars_; }
  const std::map<std::size_t, double>& linear() const noexcept { return linear_; }
  const std::map<VarPair, double>& quadratic() const noexcept { return quadratic_; }
  double offset() const noexcept { return offset_; }
  std::span<const std::size_t> var_to_position() const noexcept { return var_to_position_; }

  double h(std::size_t i) const {
    auto it = linear_.find(i);
    return it == linear_.end() ? 0.0 : it->second;
  }
  double J(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = quadratic_.find({i, j});
    return it == quadratic_.end() ? 0.0 : it->second;
  }

  // Contributions are summed; entries that cancel to zero are dropped.
  void add_linear(std::size_t i, double value) {
    check_index(i);
    accumulate(linear_, i, value);
  }
  void add_quadratic(std::size_t i, std::size_t j, double value) {
    check_index(i);
    check_index(j);
    if (i == j) throw InputError("quadratic term needs two distinct variables, got (" +
                                 std::to_string(i) + "," + std::to_string(i) + ")");
    if (i > j) std::swap(i, j);
    accumulate(quadratic_, VarPair{i, j}, value);
  }
  void add_offset(double value) {
    offset_ += value;
    if (!std::isfinite(offset_)) throw InputError("offset is not finite");
  }
  void add(const IsingModel& other, double scale = 1.0) {
    if (other.n_vars_ != n_vars_) throw InputError("cannot add models of different sizes");
    for (const auto& [i, v] : other.linear_) add_linear(i, scale * v);
    for (const auto& [ij, v] : other.quadratic_) add_quadratic(ij.first, ij.second, scale * v);
    add_offset(scale * other.offset_);
  }
  void set_var_to_position(std::vector<std::size_t> positions) {
    if (positions.size() != n_vars_) throw InputError("var_to_position size mismatch");
    var_to_position_ = std::move(positions);
  }

  friend bool operator==(const IsingModel&, const IsingModel&) = default;

 private:
  void check_index(std::size_t i) const {
    if (i >= n_vars_) {
      throw InputError("variable index " + std::to_string(i) + " out of range (n_vars=" +
                       std::to_string(n_vars_) + ")");
    }
  }
  template <typename Map, typename Key>
  static void accumulate(Map& map, const Key& key, double value) {
    if (!std::isfinite(value)) throw InputError("coefficient is not finite");
    if (value == 0.0) return;
    auto [it, inserted] = map.emplace(key, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0.0) map.erase(it);
    }
  }

  std::size_t n_vars_ = 0;
  std::map<std::size_t, double> linear_;
  std::map<VarPair, double> quadratic_;
  double offset_ = 0.0;
  std::vector<std::size_t> var_to_position_;
};

/// Constraint weight lambda; must be positive and finite.
class PenaltyWeight {
 public:
  explicit PenaltyWeight(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw InputError("penalty weight must be positive and finite, got " + std::to_string(value));
    }
  }
  // lambda = N, enough to keep every constraint violation above the best
  // valid coloring.
  static PenaltyWeight for_instance(const ProblemInstance& instance) {
    return PenaltyWeight(static_cast<double>(instance.size()));
  }
  double value() const noexcept { return value_; }

 private:
  double value_;
};

inline IsingModel ferromagnet_term(const ProblemInstance& instance) {
  IsingModel m(instance.size());
  for (std::size_t i = 0; i + 1 < instance.size(); ++i) m.add_quadratic(i, i + 1, -1.0);
  return m;
}

inline IsingModel quota_penalty_term(const ProblemInstance& instance) {
  IsingModel m(instance.size());
  for (EnsembleId e = 0; e < instance.ensemble_count(); ++e) {
    const auto pos = instance.positions_of(e);
    const double field = static_cast<double>(pos.size()) - 2.0 * static_cast<double>(instance.quota(e));
    for (std::size_t a = 0; a < pos.size(); ++a) {
      m.add_linear(pos[a], field);
      for (std::size_t b = a + 1; b < pos.size(); ++b) m.add_quadratic(pos[a], pos[b], 1.0);
    }
  }
  return m;
}

inline IsingModel encode(const ProblemInstance& instance, PenaltyWeight lambda) {
  IsingModel m = ferromagnet_term(instance);
  m.add(quota_penalty_term(instance), lambda.value());
  return m;
}

inline IsingModel encode(const ProblemInstance& instance) {
  return encode(instance, PenaltyWeight::for_instance(instance));
}

inline void check_spins(const IsingModel& model, std::span<const Spin> spins) {
  if (spins.size() != model.n_vars()) {
    throw InputError("spin vector length " + std::to_string(spins.size()) +
                     " does not match n_vars " + std::to_string(model.n_vars()));
  }
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw InputError("spin[" + std::to_string(i) + "] = " + std::to_string(spins[i]) +
                       " is not +1 or -1");
    }
  }
}

inline double energy(const IsingModel& model, std::span<const Spin> spins) {
  check_spins(model, spins);
  double e = model.offset();
  for (const auto& [i, h] : model.linear()) e += h * spins[i];
  for (const auto& [ij, J] : model.quadratic()) e += J * spins[ij.first] * spins[ij.second];
  return e;
}

/// Energy of a coloring under the encoded model, computed per ensemble from
/// black counts without building the model.
inline double coloring_energy(const ProblemInstance& instance, std::span<const Color> colors,
                              PenaltyWeight lambda) {
  const auto counts = black_counts(instance, colors);
  const double n = static_cast<double>(instance.size());
  double e = 2.0 * static_cast<double>(count_switches(colors)) - (n - 1.0);
  for (EnsembleId id = 0; id < instance.ensemble_count(); ++id) {
    const double m = static_cast<double>(instance.multiplicity(id));
    const double S = 2.0 * static_cast<double>(counts[id]) - m;
    e += lambda.value() * ((m - 2.0 * static_cast<double>(instance.quota(id))) * S + (S * S - m) / 2.0);
  }
  return e;
}

/// Fixes the given variables and folds their couplings into the surviving
/// variables' fields and the offset. Energies of completions are preserved
/// exactly; surviving variables keep their relative order.
inline IsingModel condition(const IsingModel& model, const std::map<std::size_t, Spin>& assignments) {
  const std::size_t n = model.n_vars();
  std::vector<std::size_t> new_index(n, SIZE_MAX);
  std::vector<std::size_t> positions;
  for (const auto& [i, v] : assignments) {
    if (i >= n) {
      throw InputError("conditioning index " + std::to_string(i) + " out of range (n_vars=" +
                       std::to_string(n) + ")");
    }
    if (v != 1 && v != -1) {
      throw InputError("conditioning value for variable " + std::to_string(i) + " is " +
                       std::to_string(v) + ", expected +1 or -1");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!assignments.contains(i)) {
      new_index[i] = positions.size();
      positions.push_back(model.var_to_position()[i]);
    }
  }
  IsingModel out(positions.size());
  out.set_var_to_position(std::move(positions));
  out.add_offset(model.offset());
  for (const auto& [i, h] : model.linear()) {
    if (auto it = assignments.find(i); it != assignments.end()) {
      out.add_offset(h * it->second);
    } else {
      out.add_linear(new_index[i], h);
    }
  }
  for (const auto& [ij, J] : model.quadratic()) {
    auto fi = assignments.find(ij.first);
    auto fj = assignments.find(ij.second);
    const bool a = fi != assignments.end();
    const bool b = fj != assignments.end();
    if (a && b) {
      out.add_offset(J * fi->second * fj->second);
    } else if (a) {
      out.add_linear(new_index[ij.second], J * fi->second);
    } else if (b) {
      out.add_linear(new_index[ij.first], J * fj->second);
    } else {
      out.add_quadratic(new_index[ij.first], new_index[ij.second], J);
    }
  }
  return out;
}

inline std::map<std::size_t, Spin> fixed_spin_assignments(const ProblemInstance& instance) {
  std::map<std::size_t, Spin> out;
  for (const auto& [pos, color] : fixed_positions(instance)) out.emplace(pos, to_spin(color));
  return out;
}

// ---------------------------------------------------------------------------
// QUBO

using Binary = std::uint8_t;

class QuboModel {
 public:
  QuboModel() = default;
  explicit QuboModel(std::size_t n_vars) : n_vars_(n_vars) {}

  std::size_t n_vars() const noexcept { return n_vars_; }
  // Upper triangle, i <= j; the diagonal holds the linear part.
  const std::map<VarPair, double>& q() const noexcept { return q_; }
  double offset() const noexcept { return offset_; }

  void add(std::size_t i, std::size_t j, double value) {
    if (i > j) std::swap(i, j);
    if (j >= n_vars_) throw InputError("QUBO index out of range");
    if (value == 0.0) return;
    auto [it, inserted] = q_.emplace(VarPair{i, j}, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0.0) q_.erase(it);
    }
  }
  void add_offset(double value) { offset_ += value; }

  friend bool operator==(const QuboModel&, const QuboModel&) = default;

 private:
  std::size_t n_vars_ = 0;
  std::map<VarPair, double> q_;
  double offset_ = 0.0;
};

inline double qubo_energy(const QuboModel& model, std::span<const Binary> x) {
  if (x.size() != model.n_vars()) {
    throw InputError("binary vector length " + std::to_string(x.size()) +
                     " does not match n_vars " + std::to_string(model.n_vars()));
  }
  double e = model.offset();
  for (const auto& [ij, v] : model.q()) e += v * x[ij.first] * x[ij.second];
  return e;
}

// Substitutes s = 2x - 1.
inline QuboModel to_qubo(const IsingModel& model) {
  QuboModel q(model.n_vars());
  q.add_offset(model.offset());
  for (const auto& [i, h] : model.linear()) {
    q.add(i, i, 2.0 * h);
    q.add_offset(-h);
  }
  for (const auto& [ij, J] : model.quadratic()) {
    q.add(ij.first, ij.second, 4.0 * J);
    q.add(ij.first, ij.first, -2.0 * J);
    q.add(ij.second, ij.second, -2.0 * J);
    q.add_offset(J);
  }
  return q;
}

// Substitutes x = (1 + s) / 2.
inline IsingModel to_ising(const QuboModel& qubo) {
  IsingModel m(qubo.n_vars());
  m.add_offset(qubo.offset());
  for (const auto& [ij, v] : qubo.q()) {
    if (ij.first == ij.second) {
      m.add_linear(ij.first, v / 2.0);
      m.add_offset(v / 2.0);
    } else {
      m.add_quadratic(ij.first, ij.second, v / 4.0);
      m.add_linear(ij.first, v / 4.0);
      m.add_linear(ij.second, v / 4.0);
      m.add_offset(v / 4.0);
    }
  }
  return m;
}

/// Smallest nonzero coefficient magnitude over the largest, across linear
/// and quadratic terms. For lambda = N this shrinks like 1/N: the unit
/// ferromagnetic coupling has to be resolved next to O(N) penalty terms.
inline double precision_ratio(const IsingModel& model) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  auto visit = [&](double v) {
    const double a = std::abs(v);
    if (a == 0.0) return;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  };
  for (const auto& [i, v] : model.linear()) visit(v);
  for (const auto& [ij, v] : model.quadratic()) visit(v);
  if (hi == 0.0) throw InputError("precision ratio undefined for a model with no nonzero coefficients");
  return lo / hi;
}

}  // namespace mcps
