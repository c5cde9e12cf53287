#pragma once

// Simulated annealing over an Ising model: single-spin Metropolis updates,
// sequential sweeps over the variables, one sweep per inverse temperature on
// a geometric schedule from beta_min to beta_max.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "mcps/error.hpp"
#include "mcps/ising.hpp"
#include "mcps/rng.hpp"
#include "mcps/spin_graph.hpp"

namespace mcps {

struct SaParams {
  std::size_t n_sweeps = 1000;
  std::size_t n_samples = 2000;
  double beta_min = 0.01;
  double beta_max = 10.0;
  // Worker threads for independent samples; results do not depend on it.
  std::size_t threads = 1;

  // 10 N sweeps and 20 N samples for an N-car instance.
  static SaParams for_size(std::size_t n_cars) {
    SaParams p;
    p.n_sweeps = 10 * n_cars;
    p.n_samples = 20 * n_cars;
    return p;
  }

  void check() const {
    if (n_sweeps == 0) throw InputError("SA: n_sweeps must be at least 1");
    if (n_samples == 0) throw InputError("SA: n_samples must be at least 1");
    if (!(beta_min > 0.0)) throw InputError("SA: beta_min must be positive");
    if (!(beta_min < beta_max) || !std::isfinite(beta_max)) {
      throw InputError("SA: need beta_min < beta_max");
    }
  }
};

// beta_t = beta_min * (beta_max / beta_min)^(t / (n_sweeps - 1)).
inline std::vector<double> beta_schedule(const SaParams& p) {
  p.check();
  std::vector<double> betas(p.n_sweeps);
  if (p.n_sweeps == 1) {
    betas[0] = p.beta_max;
    return betas;
  }
  const double ratio = std::log(p.beta_max / p.beta_min);
  for (std::size_t t = 0; t < p.n_sweeps; ++t) {
    betas[t] = p.beta_min * std::exp(ratio * static_cast<double>(t) / static_cast<double>(p.n_sweeps - 1));
  }
  betas.front() = p.beta_min;
  betas.back() = p.beta_max;
  return betas;
}

struct Sample {
  SpinVector spins;
  double energy = 0.0;
  std::size_t index = 0;  // sample number; its RNG stream is derive_seed(seed, {index})
};

namespace detail {

// exp(-40) is below the 2^-53 resolution of uniform01, so larger exponents
// are rejected without drawing.
inline constexpr double kMaxAcceptExponent = 40.0;

inline void anneal_one(const SpinGraph& graph, std::span<const double> betas, Seed seed,
                       SpinVector& s, std::vector<double>& field) {
  Rng rng(seed);
  const std::size_t n = graph.size();
  s.resize(n);
  field.resize(n);
  for (auto& v : s) v = (rng.next() >> 63) ? Spin{1} : Spin{-1};
  graph.local_fields(s, field);
  for (double beta : betas) {
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = -2.0 * s[i] * field[i];
      bool accept = delta <= 0.0;
      if (!accept) {
        const double x = beta * delta;
        accept = x < kMaxAcceptExponent && rng.uniform01() < std::exp(-x);
      }
      if (accept) graph.flip(i, s, field);
    }
  }
}

}  // namespace detail

/// Runs n_samples independent anneals from uniformly random states and
/// returns them sorted by energy (ties by sample index). Sample i uses the
/// RNG stream derive_seed(seed, {i}), so output is the same for any thread
/// count.
inline std::vector<Sample> simulated_annealing(const IsingModel& model, const SaParams& params, Seed seed) {
  params.check();
  if (model.n_vars() == 0) throw InputError("SA: model has no variables");
  const SpinGraph graph(model);
  const auto betas = beta_schedule(params);
  std::vector<Sample> samples(params.n_samples);

  auto worker = [&](std::size_t first, std::size_t stride) {
    std::vector<double> field;
    for (std::size_t k = first; k < samples.size(); k += stride) {
      Sample& out = samples[k];
      out.index = k;
      detail::anneal_one(graph, betas, derive_seed(seed, {k}), out.spins, field);
      out.energy = energy(model, out.spins);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(params.threads, 1, params.n_samples);
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
  }
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.index < b.index;
  });
  return samples;
}

}  // namespace mcps
