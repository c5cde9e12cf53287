#pragma once

// Domain model for the multi-car paint shop problem: a fixed queue of cars,
// each belonging to an ensemble (a unique configuration), and a quota of
// cars per ensemble whose filler must be black. The objective counts color
// switches between adjacent cars.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcps/error.hpp"
#include "mcps/rng.hpp"

namespace mcps {

using EnsembleId = std::uint32_t;

enum class Color : std::uint8_t { White = 0, Black = 1 };

using Coloring = std::vector<Color>;

inline constexpr Color complement(Color c) noexcept {
  return c == Color::Black ? Color::White : Color::Black;
}

inline constexpr char to_char(Color c) noexcept { return c == Color::Black ? 'B' : 'W'; }

inline std::string to_string(std::span<const Color> colors) {
  std::string s;
  s.reserve(colors.size());
  for (Color c : colors) s.push_back(to_char(c));
  return s;
}

// Parses a "BWWB" style string. Throws InputError on other characters.
inline Coloring parse_coloring(std::string_view text) {
  Coloring out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'B': out.push_back(Color::Black); break;
      case 'W': out.push_back(Color::White); break;
      default:
        throw InputError("coloring[" + std::to_string(i) + "]: expected 'B' or 'W', got '" +
                         std::string(1, text[i]) + "'");
    }
  }
  return out;
}

/// A fixed car sequence with one black quota per ensemble.
///
/// Ensemble ids are dense: every id in 0..M-1 occurs in the word and has
/// exactly one quota with 0 <= k <= multiplicity. The constructor checks all
/// of this and reports the first violation with its position.
class ProblemInstance {
 public:
  ProblemInstance(std::string name, std::vector<EnsembleId> word, std::vector<std::size_t> quotas)
      : name_(std::move(name)), word_(std::move(word)), quotas_(std::move(quotas)) {
    if (word_.empty()) throw InputError("word: must contain at least one car");
    const std::size_t m = quotas_.size();
    positions_.assign(m, {});
    for (std::size_t i = 0; i < word_.size(); ++i) {
      if (word_[i] >= m) {
        throw InputError("word[" + std::to_string(i) + "]: ensemble id " +
                         std::to_string(word_[i]) + " has no quota entry (ensembles are 0.." +
                         std::to_string(m == 0 ? 0 : m - 1) + ")");
      }
      positions_[word_[i]].push_back(i);
    }
    for (std::size_t e = 0; e < m; ++e) {
      if (positions_[e].empty()) {
        throw InputError("quotas[" + std::to_string(e) + "]: ensemble does not occur in the word");
      }
      if (quotas_[e] > positions_[e].size()) {
        throw InputError("quotas[" + std::to_string(e) + "]: k=" + std::to_string(quotas_[e]) +
                         " exceeds multiplicity " + std::to_string(positions_[e].size()));
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  std::span<const EnsembleId> word() const noexcept { return word_; }
  std::span<const std::size_t> quotas() const noexcept { return quotas_; }
  std::size_t size() const noexcept { return word_.size(); }
  std::size_t ensemble_count() const noexcept { return quotas_.size(); }
  EnsembleId ensemble_at(std::size_t position) const { return word_.at(position); }
  std::size_t quota(EnsembleId e) const { return quotas_.at(e); }
  std::size_t multiplicity(EnsembleId e) const { return positions_.at(e).size(); }
  std::span<const std::size_t> positions_of(EnsembleId e) const { return positions_.at(e); }

  friend bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
    return a.name_ == b.name_ && a.word_ == b.word_ && a.quotas_ == b.quotas_;
  }

 private:
  std::string name_;
  std::vector<EnsembleId> word_;
  std::vector<std::size_t> quotas_;
  std::vector<std::vector<std::size_t>> positions_;
};

inline std::size_t count_switches(std::span<const Color> colors) noexcept {
  std::size_t switches = 0;
  for (std::size_t i = 1; i < colors.size(); ++i) switches += colors[i] != colors[i - 1];
  return switches;
}

inline void require_length(const ProblemInstance& instance, std::span<const Color> colors) {
  if (colors.size() != instance.size()) {
    throw InputError("coloring length " + std::to_string(colors.size()) +
                     " does not match word length " + std::to_string(instance.size()));
  }
}

// f(w): number of adjacent pairs painted differently.
inline std::size_t count_switches(const ProblemInstance& instance, std::span<const Color> colors) {
  require_length(instance, colors);
  return count_switches(colors);
}

struct EnsembleDeviation {
  EnsembleId ensemble;
  std::size_t black_count;
  std::size_t quota;
  long long deviation;  // black_count - quota
};

struct ValidityReport {
  bool valid = true;
  std::vector<EnsembleDeviation> ensembles;
};

inline std::vector<std::size_t> black_counts(const ProblemInstance& instance,
                                             std::span<const Color> colors) {
  require_length(instance, colors);
  std::vector<std::size_t> counts(instance.ensemble_count(), 0);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] == Color::Black) ++counts[instance.ensemble_at(i)];
  }
  return counts;
}

inline ValidityReport validate(const ProblemInstance& instance, std::span<const Color> colors) {
  const auto counts = black_counts(instance, colors);
  ValidityReport report;
  report.ensembles.reserve(counts.size());
  for (EnsembleId e = 0; e < counts.size(); ++e) {
    const long long dev = static_cast<long long>(counts[e]) - static_cast<long long>(instance.quota(e));
    report.ensembles.push_back({e, counts[e], instance.quota(e), dev});
    if (dev != 0) report.valid = false;
  }
  return report;
}

inline bool is_valid(const ProblemInstance& instance, std::span<const Color> colors) {
  return validate(instance, colors).valid;
}

// Positions whose color is forced by a saturated (k = #C) or empty (k = 0)
// quota. Single-car ensembles always land here.
inline std::map<std::size_t, Color> fixed_positions(const ProblemInstance& instance) {
  std::map<std::size_t, Color> fixed;
  for (EnsembleId e = 0; e < instance.ensemble_count(); ++e) {
    const std::size_t k = instance.quota(e);
    if (k != 0 && k != instance.multiplicity(e)) continue;
    const Color c = k == 0 ? Color::White : Color::Black;
    for (std::size_t p : instance.positions_of(e)) fixed.emplace(p, c);
  }
  return fixed;
}

inline std::size_t free_count(const ProblemInstance& instance) {
  std::size_t n = 0;
  for (EnsembleId e = 0; e < instance.ensemble_count(); ++e) {
    const std::size_t k = instance.quota(e);
    if (k != 0 && k != instance.multiplicity(e)) n += instance.multiplicity(e);
  }
  return n;
}

// ---------------------------------------------------------------------------
// Synthetic instances

enum class QuotaPolicy { UniformRandom, Balanced };

inline std::string_view to_string(QuotaPolicy p) noexcept {
  return p == QuotaPolicy::Balanced ? "balanced" : "uniform";
}

inline QuotaPolicy parse_quota_policy(std::string_view text) {
  if (text == "uniform" || text == "uniform-random") return QuotaPolicy::UniformRandom;
  if (text == "balanced") return QuotaPolicy::Balanced;
  throw InputError("unknown quota policy '" + std::string(text) + "' (expected uniform|balanced)");
}

namespace detail {

// Zipf-like popularity: a handful of common configurations and a long tail.
inline constexpr double kPopularityExponent = 1.2;

inline std::vector<double> popularity_cdf(std::size_t n_ensembles) {
  std::vector<double> cdf(n_ensembles);
  double total = 0.0;
  for (std::size_t j = 0; j < n_ensembles; ++j) {
    total += 1.0 / std::pow(static_cast<double>(j + 1), kPopularityExponent);
    cdf[j] = total;
  }
  for (double& c : cdf) c /= total;
  return cdf;
}

inline EnsembleId draw_ensemble(Rng& rng, std::span<const double> cdf) {
  const double u = rng.uniform01();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<EnsembleId>(it - cdf.begin());
}

}  // namespace detail

/// Seeded synthetic instance. Every ensemble occurs at least once (so ids
/// stay dense); the remaining cars are drawn from a Zipf-like popularity
/// distribution and the whole word is shuffled. Quotas are either drawn
/// uniformly from 0..#C_i or set to floor(#C_i / 2).
inline ProblemInstance generate_synthetic(std::size_t n_cars, std::size_t n_ensembles,
                                          QuotaPolicy policy, Seed seed,
                                          std::string name = {}) {
  if (n_ensembles == 0) throw InputError("n_ensembles must be at least 1");
  if (n_ensembles > n_cars) {
    throw InputError("n_ensembles (" + std::to_string(n_ensembles) + ") exceeds n_cars (" +
                     std::to_string(n_cars) + ")");
  }
  Rng rng(seed);
  const auto cdf = detail::popularity_cdf(n_ensembles);
  std::vector<EnsembleId> word;
  word.reserve(n_cars);
  for (std::size_t e = 0; e < n_ensembles; ++e) word.push_back(static_cast<EnsembleId>(e));
  while (word.size() < n_cars) word.push_back(detail::draw_ensemble(rng, cdf));
  rng.shuffle(std::span<EnsembleId>(word));

  std::vector<std::size_t> multiplicity(n_ensembles, 0);
  for (EnsembleId e : word) ++multiplicity[e];
  std::vector<std::size_t> quotas(n_ensembles);
  for (std::size_t e = 0; e < n_ensembles; ++e) {
    quotas[e] = policy == QuotaPolicy::Balanced
                    ? multiplicity[e] / 2
                    : static_cast<std::size_t>(rng.uniform_index(multiplicity[e] + 1));
  }
  if (name.empty()) name = "synthetic_N" + std::to_string(n_cars) + "_M" + std::to_string(n_ensembles);
  return ProblemInstance(std::move(name), std::move(word), std::move(quotas));
}

// ---------------------------------------------------------------------------
// Partitioning a long production stream into fixed-size instances

/// A production log: the car sequence plus the filler color each car was
/// ordered with. Chunk quotas are the black counts inside the chunk.
struct LabeledStream {
  std::vector<EnsembleId> word;
  Coloring colors;
};

struct PartitionStats {
  std::size_t total_cars = 0;
  std::size_t non_fixed_cars = 0;
  bool accepted = false;
};

inline constexpr double kMinNonFixedFraction = 0.7;

// Inclusive 70% rule in integer arithmetic: 7 of 10 passes, 6 of 10 fails.
inline constexpr bool meets_non_fixed_threshold(std::size_t non_fixed, std::size_t total) noexcept {
  return non_fixed * 10 >= total * 7;
}

inline PartitionStats partition_stats(const ProblemInstance& instance) {
  PartitionStats s;
  s.total_cars = instance.size();
  s.non_fixed_cars = free_count(instance);
  s.accepted = meets_non_fixed_threshold(s.non_fixed_cars, s.total_cars);
  return s;
}

struct Partition {
  ProblemInstance instance;
  PartitionStats stats;
  std::size_t offset;                     // first car of the chunk in the stream
  std::vector<EnsembleId> original_ids;   // local ensemble id -> stream ensemble id
};

/// Cuts the stream into floor(N / chunk_size) consecutive chunks; the
/// remainder is dropped. Ensemble ids are relabeled densely per chunk in
/// order of first appearance.
inline std::vector<Partition> partition_stream(const LabeledStream& stream, std::size_t chunk_size,
                                               std::string_view name_prefix = "chunk") {
  if (chunk_size == 0) throw InputError("chunk_size must be at least 1");
  if (stream.colors.size() != stream.word.size()) {
    throw InputError("stream colors length " + std::to_string(stream.colors.size()) +
                     " does not match word length " + std::to_string(stream.word.size()));
  }
  std::vector<Partition> out;
  const std::size_t n_chunks = stream.word.size() / chunk_size;
  out.reserve(n_chunks);
  for (std::size_t c = 0; c < n_chunks; ++c) {
    const std::size_t begin = c * chunk_size;
    std::map<EnsembleId, EnsembleId> local;
    std::vector<EnsembleId> original;
    std::vector<EnsembleId> word;
    std::vector<std::size_t> quotas;
    word.reserve(chunk_size);
    for (std::size_t i = begin; i < begin + chunk_size; ++i) {
      auto [it, inserted] = local.emplace(stream.word[i], static_cast<EnsembleId>(original.size()));
      if (inserted) {
        original.push_back(stream.word[i]);
        quotas.push_back(0);
      }
      word.push_back(it->second);
      if (stream.colors[i] == Color::Black) ++quotas[it->second];
    }
    ProblemInstance inst(std::string(name_prefix) + "_N" + std::to_string(chunk_size) + "_" +
                             std::to_string(c),
                         std::move(word), std::move(quotas));
    PartitionStats stats = partition_stats(inst);
    out.push_back(Partition{std::move(inst), stats, begin, std::move(original)});
  }
  return out;
}

/// Synthetic production stream: Zipf-like ensemble popularity as in
/// generate_synthetic, and each ensemble has its own black-order rate drawn
/// uniformly from [0, 1]; cars are colored independently at that rate.
inline LabeledStream generate_stream(std::size_t n_cars, std::size_t n_ensembles, Seed seed) {
  if (n_ensembles == 0) throw InputError("n_ensembles must be at least 1");
  Rng rng(seed);
  const auto cdf = detail::popularity_cdf(n_ensembles);
  std::vector<double> black_rate(n_ensembles);
  for (double& r : black_rate) r = rng.uniform01();
  LabeledStream s;
  s.word.reserve(n_cars);
  s.colors.reserve(n_cars);
  for (std::size_t i = 0; i < n_cars; ++i) {
    const EnsembleId e = detail::draw_ensemble(rng, cdf);
    s.word.push_back(e);
    s.colors.push_back(rng.uniform01() < black_rate[e] ? Color::Black : Color::White);
  }
  return s;
}

}  // namespace mcps
