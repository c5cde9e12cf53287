#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>

#include "mcps/core.hpp"
#include "mcps/instance_io.hpp"
#include "mcps/rng.hpp"
#include "oracles.hpp"

namespace {

using namespace mcps;

constexpr EnsembleId A = 0, B = 1, C = 2;

Coloring col(std::string_view s) { return parse_coloring(s); }

TEST(CountSwitches, Examples) {
  EXPECT_EQ(count_switches(col("BBWW")), 1u);
  EXPECT_EQ(count_switches(col("B")), 0u);
  EXPECT_EQ(count_switches(col("BWBW")), 3u);
}

TEST(CountSwitches, LengthMismatchIsInputError) {
  ProblemInstance inst("x", {A, A}, {1});
  EXPECT_THROW(count_switches(inst, col("BWB")), InputError);
}

TEST(CountSwitches, InvariantUnderComplement) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Coloring c(1 + rng.uniform_index(40));
    for (auto& x : c) x = rng.uniform_index(2) ? Color::Black : Color::White;
    Coloring flipped = c;
    for (auto& x : flipped) x = complement(x);
    EXPECT_EQ(count_switches(c), count_switches(flipped));
    EXPECT_LE(count_switches(c), c.size() - 1);
  }
}

TEST(Validate, Examples) {
  ProblemInstance aa("aa", {A, A}, {1});
  auto r = validate(aa, col("BW"));
  EXPECT_TRUE(r.valid);
  ASSERT_EQ(r.ensembles.size(), 1u);
  EXPECT_EQ(r.ensembles[0].deviation, 0);

  r = validate(aa, col("BB"));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.ensembles[0].deviation, +1);

  ProblemInstance aba("aba", {A, B, A}, {2, 0});
  EXPECT_TRUE(validate(aba, col("BWB")).valid);
  EXPECT_THROW(validate(aba, col("BW")), InputError);
}

TEST(FixedPositions, Examples) {
  ProblemInstance ab("ab", {A, B}, {0, 1});
  auto f = fixed_positions(ab);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.at(0), Color::White);
  EXPECT_EQ(f.at(1), Color::Black);

  EXPECT_TRUE(fixed_positions(ProblemInstance("aa", {A, A}, {1})).empty());

  auto all = fixed_positions(ProblemInstance("aaa", {A, A, A}, {3}));
  ASSERT_EQ(all.size(), 3u);
  for (const auto& [p, c] : all) EXPECT_EQ(c, Color::Black);
}

TEST(FixedPositions, AgreeWithEveryValidColoring) {
  for (Seed s = 0; s < 60; ++s) {
    auto inst = generate_synthetic(3 + s % 9, 1 + s % 3, QuotaPolicy::UniformRandom, s);
    const auto fixed = fixed_positions(inst);
    for (const auto& c : oracle::enumerate_valid(inst).all_valid) {
      for (const auto& [p, color] : fixed) EXPECT_EQ(c[p], color);
    }
  }
}

TEST(ProblemInstance, RejectsBadInput) {
  EXPECT_THROW(ProblemInstance("empty", {}, {}), InputError);
  EXPECT_THROW(ProblemInstance("quota", {A, A}, {3}), InputError);
  EXPECT_THROW(ProblemInstance("missing", {A, C}, {0, 0}), InputError);  // B never occurs
  EXPECT_THROW(ProblemInstance("unknown", {A, B}, {0}), InputError);
}

TEST(ProblemInstance, SingleCarWordHasNoSwitches) {
  ProblemInstance one("one", {A}, {1});
  EXPECT_EQ(count_switches(one, col("B")), 0u);
}

TEST(GenerateSynthetic, Deterministic) {
  auto a = generate_synthetic(10, 3, QuotaPolicy::Balanced, 42);
  auto b = generate_synthetic(10, 3, QuotaPolicy::Balanced, 42);
  EXPECT_EQ(a, b);
  bool any_different = false;
  for (Seed s = 43; s < 53; ++s) {
    auto c = generate_synthetic(10, 3, QuotaPolicy::Balanced, s);
    any_different |= !std::equal(a.word().begin(), a.word().end(), c.word().begin());
  }
  EXPECT_TRUE(any_different);
}

TEST(GenerateSynthetic, BalancedQuotaIsHalfMultiplicity) {
  for (Seed s = 0; s < 50; ++s) {
    auto inst = generate_synthetic(40, 6, QuotaPolicy::Balanced, s);
    for (EnsembleId e = 0; e < inst.ensemble_count(); ++e) {
      EXPECT_EQ(inst.quota(e), inst.multiplicity(e) / 2);
      if (inst.multiplicity(e) == 4) {
        EXPECT_EQ(inst.quota(e), 2u);
      }
    }
  }
}

TEST(GenerateSynthetic, ShapeAndErrors) {
  EXPECT_THROW(generate_synthetic(5, 6, QuotaPolicy::UniformRandom, 0), InputError);
  EXPECT_THROW(generate_synthetic(5, 0, QuotaPolicy::UniformRandom, 0), InputError);
  auto inst = generate_synthetic(300, 60, QuotaPolicy::UniformRandom, 3);
  EXPECT_EQ(inst.size(), 300u);
  EXPECT_EQ(inst.ensemble_count(), 60u);
  // Skewed popularity: the most common ensemble is far above the average of 5.
  std::size_t top = 0;
  for (EnsembleId e = 0; e < 60; ++e) top = std::max(top, inst.multiplicity(e));
  EXPECT_GT(top, 20u);
}

TEST(PartitionStream, TableOneCount) {
  LabeledStream s = generate_stream(104334, 121, 1);
  auto parts = partition_stream(s, 3000);
  EXPECT_EQ(parts.size(), 34u);
}

TEST(PartitionStream, ChunksReproducePrefixAndCountQuotasInsideChunk) {
  LabeledStream s = generate_stream(1003, 17, 5);
  auto parts = partition_stream(s, 100);
  ASSERT_EQ(parts.size(), 10u);
  std::vector<EnsembleId> joined;
  for (const auto& p : parts) {
    std::vector<std::size_t> expected(p.instance.ensemble_count(), 0);
    for (std::size_t i = 0; i < p.instance.size(); ++i) {
      joined.push_back(p.original_ids[p.instance.word()[i]]);
      if (s.colors[p.offset + i] == Color::Black) ++expected[p.instance.word()[i]];
    }
    EXPECT_EQ(std::vector<std::size_t>(p.instance.quotas().begin(), p.instance.quotas().end()), expected);
    EXPECT_EQ(p.stats.total_cars, 100u);
    EXPECT_EQ(p.stats.non_fixed_cars, free_count(p.instance));
    EXPECT_LE(p.stats.non_fixed_cars, p.stats.total_cars);
  }
  EXPECT_TRUE(std::equal(joined.begin(), joined.end(), s.word.begin()));
}

TEST(PartitionStream, ThresholdBoundary) {
  EXPECT_TRUE(meets_non_fixed_threshold(7, 10));
  EXPECT_FALSE(meets_non_fixed_threshold(6, 10));
  EXPECT_TRUE(meets_non_fixed_threshold(70, 100));
  EXPECT_FALSE(meets_non_fixed_threshold(69, 100));

  // 10 cars: ensemble A x7 with k=3 (free), three singletons (fixed).
  LabeledStream s;
  s.word = {0, 0, 1, 0, 0, 2, 0, 0, 3, 0};
  s.colors = parse_coloring("BWBBWWBWWW");
  auto parts = partition_stream(s, 10);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].stats.non_fixed_cars, 7u);
  EXPECT_TRUE(parts[0].stats.accepted);

  s.colors = parse_coloring("WWBWWWWWWW");  // k(A)=0: everything fixed
  parts = partition_stream(s, 10);
  EXPECT_EQ(parts[0].stats.non_fixed_cars, 0u);
  EXPECT_FALSE(parts[0].stats.accepted);

  s.word = {0, 0, 1, 0, 0, 2, 0, 0, 3, 4};  // A x6, four singletons: 6 of 10
  s.colors = parse_coloring("BWBBWWBWWW");
  parts = partition_stream(s, 10);
  EXPECT_EQ(parts[0].stats.non_fixed_cars, 6u);
  EXPECT_FALSE(parts[0].stats.accepted);
}

TEST(PartitionStream, RemainderDroppedAndZeroChunkRejected) {
  LabeledStream s = generate_stream(25, 3, 0);
  EXPECT_EQ(partition_stream(s, 10).size(), 2u);
  EXPECT_EQ(partition_stream(s, 30).size(), 0u);
  EXPECT_THROW(partition_stream(s, 0), InputError);
}

// --- instance files ---------------------------------------------------------

TEST(InstanceIo, RoundTripIsByteExact) {
  for (Seed s = 0; s < 40; ++s) {
    auto inst = generate_synthetic(5 + s * 7, 1 + s % 13, s % 2 ? QuotaPolicy::Balanced : QuotaPolicy::UniformRandom, s);
    const std::string text = instance_to_json(inst);
    const auto back = instance_from_json(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(instance_to_json(back), text);
  }
}

TEST(InstanceIo, CanonicalFormAndKeyOrderTolerance) {
  ProblemInstance inst("demo", {A, B, A, C, B, B, B, B, B, B, B, B}, {1, 0, 1});
  EXPECT_EQ(instance_to_json(inst),
            "{\"name\":\"demo\",\"word\":[0,1,0,2,1,1,1,1,1,1,1,1],\"quotas\":{\"0\":1,\"1\":0,\"2\":1}}\n");
  auto reordered = instance_from_json(
      R"({"quotas": {"2": 1, "0": 1, "1": 0}, "word": [0,1,0,2,1,1,1,1,1,1,1,1], "name": "demo"})");
  EXPECT_EQ(reordered, inst);
}

TEST(InstanceIo, ReportsFirstViolationWithPosition) {
  auto message = [](std::string_view text) {
    try {
      instance_from_json(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"name":"x","word":[0,-1],"quotas":{"0":0}})").find("word[1]"), std::string::npos);
  EXPECT_NE(message(R"({"name":"x","word":[0,0],"quotas":{"0":3}})").find("quotas[0]"), std::string::npos);
  EXPECT_NE(message(R"({"name":"x","word":[0,2],"quotas":{"0":0,"2":1}})").find("ensemble 1"),
            std::string::npos);
  EXPECT_NE(message(R"({"name":"x","word":[0],"quotas":{"a":0}})").find("quotas[\"a\"]"), std::string::npos);
  EXPECT_NE(message(R"({"name":"x","word":[0]})").find("quotas"), std::string::npos);
  EXPECT_NE(message("{not json").find("malformed"), std::string::npos);
  EXPECT_NE(message(R"({"name":"x","word":[],"quotas":{}})").find("at least one"), std::string::npos);
}

TEST(InstanceIo, FileRoundTripAndMissingFile) {
  const auto dir = std::filesystem::temp_directory_path() / "mcps_core_io";
  std::filesystem::create_directories(dir);
  auto inst = generate_synthetic(30, 6, QuotaPolicy::UniformRandom, 9, "file_test");
  save_instance(inst, dir / "i.json");
  EXPECT_EQ(load_instance(dir / "i.json"), inst);
  EXPECT_THROW(load_instance(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(StreamIo, RoundTrip) {
  auto s = generate_stream(50, 5, 2);
  auto back = stream_from_json(stream_to_json(s, "s"));
  EXPECT_EQ(back.word, s.word);
  EXPECT_EQ(back.colors, s.colors);
  EXPECT_THROW(stream_from_json(R"({"word":[0,1],"colors":"B"})"), InputError);
}

}  // namespace
