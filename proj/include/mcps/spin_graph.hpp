#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mcps/ising.hpp"

namespace mcps {

// Compressed adjacency view of an IsingModel for single-flip samplers.
class SpinGraph {
 public:
  explicit SpinGraph(const IsingModel& model) : h_(model.n_vars(), 0.0), start_(model.n_vars() + 1, 0) {
    for (const auto& [i, v] : model.linear()) h_[i] = v;
    for (const auto& [ij, J] : model.quadratic()) {
      ++start_[ij.first + 1];
      ++start_[ij.second + 1];
    }
    for (std::size_t i = 0; i < h_.size(); ++i) start_[i + 1] += start_[i];
    nbr_.resize(start_.back());
    weight_.resize(start_.back());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (const auto& [ij, J] : model.quadratic()) {
      nbr_[fill[ij.first]] = ij.second;
      weight_[fill[ij.first]++] = J;
      nbr_[fill[ij.second]] = ij.first;
      weight_[fill[ij.second]++] = J;
    }
  }

  std::size_t size() const noexcept { return h_.size(); }
  double h(std::size_t i) const noexcept { return h_[i]; }
  std::span<const std::size_t> neighbors(std::size_t i) const noexcept {
    return {nbr_.data() + start_[i], start_[i + 1] - start_[i]};
  }
  std::span<const double> weights(std::size_t i) const noexcept {
    return {weight_.data() + start_[i], start_[i + 1] - start_[i]};
  }

  // field_i = h_i + sum_j J_ij s_j; flipping i changes the energy by -2 s_i field_i.
  void local_fields(std::span<const Spin> s, std::span<double> field) const noexcept {
    for (std::size_t i = 0; i < h_.size(); ++i) {
      double f = h_[i];
      const auto nb = neighbors(i);
      const auto w = weights(i);
      for (std::size_t k = 0; k < nb.size(); ++k) f += w[k] * s[nb[k]];
      field[i] = f;
    }
  }

  // Flips spin i and keeps neighbor fields current.
  void flip(std::size_t i, std::span<Spin> s, std::span<double> field) const noexcept {
    s[i] = static_cast<Spin>(-s[i]);
    const double twice = 2.0 * s[i];
    const auto nb = neighbors(i);
    const auto w = weights(i);
    for (std::size_t k = 0; k < nb.size(); ++k) field[nb[k]] += twice * w[k];
  }

 private:
  std::vector<double> h_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> nbr_;
  std::vector<double> weight_;
};

}  // namespace mcps
