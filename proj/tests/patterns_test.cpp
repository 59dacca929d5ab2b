#include <gtest/gtest.h>

#include "fmviz/mutgen.hpp"
#include "fmviz/patterns.hpp"
#include "test_support.hpp"

namespace fmviz {
namespace {

using patterns::Window;

// Seed of `len` bytes followed by one input per window, each flipping that
// window's bytes. Windows are {start, k}.
Corpus corpus_from_windows(std::size_t len, const std::vector<Window>& windows) {
  Bytes seed(len);
  for (std::size_t i = 0; i < len; ++i) seed[i] = static_cast<std::uint8_t>(0x20 + i);
  Corpus c{{0, seed}};
  for (const auto& w : windows) {
    Bytes m = seed;
    for (std::size_t o = w.start; o < w.start + w.k; ++o) m[o] ^= 0xFF;
    c.push_back({c.size(), m});
  }
  return c;
}

Corpus corpus_from_values(std::size_t len, std::size_t offset, const Bytes& values) {
  Bytes seed(len, 0x00);
  Corpus c{{0, seed}};
  for (std::uint8_t v : values) {
    Bytes m = seed;
    m[offset] = v;
    c.push_back({c.size(), m});
  }
  return c;
}

void expect_covers(const PatternReport& report, std::size_t n) {
  std::size_t expected_from = 1;
  for (const auto& run : report.runs) {
    ASSERT_EQ(run.from, expected_from);
    ASSERT_LE(run.from, run.to);
    const std::size_t len = std::visit([](const auto& p) { return p.run_length; }, run.pattern);
    ASSERT_EQ(len, run.to - run.from + 1);
    expected_from = run.to + 1;
  }
  ASSERT_EQ(expected_from, n);
}

TEST(ClassifyWindow, Examples) {
  const std::vector<std::size_t> pair{5, 6}, single{3}, gap{1, 5}, empty{};
  EXPECT_EQ(patterns::classify_window(pair), (Window{5, 2}));
  EXPECT_EQ(patterns::classify_window(single), (Window{3, 1}));
  EXPECT_FALSE(patterns::classify_window(gap));
  EXPECT_FALSE(patterns::classify_window(empty));
}

TEST(DetectPatterns, TwoByteShifting) {
  const Corpus c = corpus_from_windows(16, {{5, 2}, {6, 2}, {7, 2}, {8, 2}});
  const PatternReport r = patterns::detect_corpus(c);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0], (PatternRun{1, 4, KByteShifting{2, 1, 5, 4}}));
}

TEST(DetectPatterns, FourByteShifting) {
  const Corpus c = corpus_from_windows(24, {{10, 4}, {11, 4}, {12, 4}, {13, 4}});
  const PatternReport r = patterns::detect_corpus(c);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0], (PatternRun{1, 4, KByteShifting{4, 1, 10, 4}}));
}

TEST(DetectPatterns, SingleByteFixed) {
  const Corpus c = corpus_from_values(8, 3, {0x11, 0x22, 0x33, 0x44});
  const PatternReport r = patterns::detect_corpus(c);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0], (PatternRun{1, 4, SingleByteFixed{3, 4}}));
}

TEST(DetectPatterns, FixedNeedsTheValueToChange) {
  // Input 3 repeats input 2's value, so no 4-step fixed run exists.
  const Corpus c = corpus_from_values(8, 3, {0x11, 0x22, 0x22, 0x44, 0x55});
  const PatternReport r = patterns::detect_corpus(c);
  for (const auto& run : r.runs) EXPECT_TRUE(std::holds_alternative<Unclassified>(run.pattern));
  const PatternReport r2 = patterns::detect_corpus(c, 3);
  ASSERT_EQ(r2.runs.size(), 2u);
  EXPECT_EQ(r2.runs[0], (PatternRun{1, 2, Unclassified{1, 2}}));
  EXPECT_EQ(r2.runs[1], (PatternRun{3, 5, SingleByteFixed{3, 3}}));
}

TEST(DetectPatterns, NoRuleReachesMinRun) {
  Bytes seed(12, 0x00);
  auto with = [&](std::initializer_list<std::size_t> offs) {
    Bytes m = seed;
    for (auto o : offs) m[o] = 0xFF;
    return m;
  };
  const Corpus c{{0, seed}, {1, with({5, 6})}, {2, with({9})}, {3, with({1, 5})}};
  const PatternReport r = patterns::detect_corpus(c, 4);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0], (PatternRun{1, 3, Unclassified{1, 3}}));
}

TEST(DetectPatterns, StrideIsDetected) {
  const Corpus c = corpus_from_windows(20, {{0, 2}, {3, 2}, {6, 2}, {9, 2}, {12, 2}});
  const PatternReport r = patterns::detect_corpus(c);
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.runs[0], (PatternRun{1, 5, KByteShifting{2, 3, 0, 5}}));
}

TEST(DetectPatterns, SegmentsConsecutiveStages) {
  // Shifting run, then a gap record, then a fixed run on the same offset.
  std::vector<Window> w{{0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}};
  Corpus c = corpus_from_windows(12, w);
  for (std::uint8_t v : {0x01, 0x02, 0x03, 0x04}) {
    Bytes m = c[0].payload;
    m[7] = v;
    c.push_back({c.size(), m});
  }
  const PatternReport r = patterns::detect_corpus(c);
  ASSERT_EQ(r.runs.size(), 3u);
  EXPECT_EQ(r.runs[0], (PatternRun{1, 5, KByteShifting{2, 1, 0, 5}}));
  EXPECT_EQ(r.runs[1], (PatternRun{6, 6, Unclassified{6, 1}}));
  EXPECT_EQ(r.runs[2], (PatternRun{7, 10, SingleByteFixed{7, 4}}));
}

TEST(DetectPatterns, Errors) {
  const Corpus c = corpus_from_windows(8, {{0, 1}, {1, 1}, {2, 1}});
  const auto prev = diff::diff_stream(c, BaselineMode::Previous);
  try {
    patterns::detect_patterns(prev, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BaselineModeMismatch);
  }
  auto first = diff::diff_stream(c, BaselineMode::First);
  first.erase(first.begin() + 1);
  try {
    patterns::detect_patterns(first, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IndexGap);
  }
  EXPECT_THROW(patterns::detect_corpus(c, 1), Error);
}

// Random windows drawn from a small alphabet so that runs actually form.
Corpus random_window_corpus(std::mt19937& rng, std::size_t records) {
  const std::size_t len = 24;
  Bytes seed(len, 0x00);
  Corpus c{{0, seed}};
  std::size_t start = rng() % 8, k = 1 + rng() % 3;
  for (std::size_t i = 0; i < records; ++i) {
    switch (rng() % 5) {
      case 0: start = rng() % 8; k = 1 + rng() % 3; break;
      case 1: break;  // repeat window
      default: start = std::min<std::size_t>(start + 1, len - k); break;
    }
    Bytes m = seed;
    for (std::size_t o = start; o < start + k; ++o) m[o] = static_cast<std::uint8_t>(1 + rng() % 3);
    if (rng() % 9 == 0) m[(start + 5) % len] = 0xEE;  // occasionally break contiguity
    c.push_back({c.size(), m});
  }
  return c;
}

TEST(PatternProperty, CoverageAndMinRunMonotonicity) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const Corpus c = random_window_corpus(rng, 1 + rng() % 40);
    std::vector<bool> classified_prev;
    for (std::size_t min_run = 8; min_run >= 2; --min_run) {
      const PatternReport r = patterns::detect_corpus(c, min_run);
      expect_covers(r, c.size());
      std::vector<bool> classified(c.size(), false);
      for (const auto& run : r.runs) {
        if (std::holds_alternative<Unclassified>(run.pattern)) continue;
        for (std::size_t i = run.from; i <= run.to; ++i) classified[i] = true;
        const std::size_t len = std::visit([](const auto& p) { return p.run_length; }, run.pattern);
        EXPECT_GE(len, min_run);
      }
      for (std::size_t i = 0; i < classified_prev.size(); ++i) {
        if (classified_prev[i]) {
          EXPECT_TRUE(classified[i]) << "input " << i << " lost at min_run " << min_run;
        }
      }
      classified_prev = classified;
    }
  }
}

TEST(PatternProperty, GeneratorDetectorEquivalence) {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const Bytes seed = testing::random_bytes(rng, 8 + rng() % 25);
    for (std::size_t k : {1u, 2u, 4u}) {
      const Corpus c = mutgen::generate_stage(seed, mutgen::WalkingByteFlip{k});
      const PatternReport r = patterns::detect_corpus(c);
      ASSERT_EQ(r.runs.size(), 1u);
      EXPECT_EQ(r.runs[0], (PatternRun{1, c.size() - 1, KByteShifting{k, 1, 0, c.size() - 1}}));
    }
    const std::size_t offset = rng() % seed.size();
    Bytes values;
    for (int v = 0; values.size() < 5 + rng() % 4; ++v) {
      if (static_cast<std::uint8_t>(v * 37 + 1) != seed[offset]) values.push_back(static_cast<std::uint8_t>(v * 37 + 1));
    }
    const Corpus c = mutgen::generate_stage(seed, mutgen::ByteValueSweep{offset, values});
    const PatternReport r = patterns::detect_corpus(c);
    ASSERT_EQ(r.runs.size(), 1u);
    EXPECT_EQ(r.runs[0], (PatternRun{1, values.size(), SingleByteFixed{offset, values.size()}}));
  }
}

TEST(Summary, TextForm) {
  const PatternReport r{{{1, 7, KByteShifting{2, 1, 5, 7}}, {8, 9, Unclassified{8, 2}}, {10, 14, SingleByteFixed{3, 5}}}};
  EXPECT_EQ(patterns::summarize_text(r),
            "inputs 1..7: 2-byte shifting window, stride 1, from offset 5\n"
            "inputs 8..9: unclassified\n"
            "inputs 10..14: single-byte fixed at offset 3\n");
}

TEST(Summary, AllUnclassified) {
  Bytes seed(6, 0);
  Corpus c{{0, seed}};
  for (int i = 0; i < 3; ++i) c.push_back({c.size(), Bytes(6, static_cast<std::uint8_t>(i + 1))});
  const PatternReport r = patterns::detect_corpus(c);
  EXPECT_EQ(patterns::summarize_text(r), "inputs 1..3: unclassified\n");
}

TEST(Summary, JsonSchemaAndRoundTrip) {
  const PatternReport r{{{1, 7, KByteShifting{2, 1, 5, 7}}, {8, 9, Unclassified{8, 2}}, {10, 14, SingleByteFixed{3, 5}}}};
  const auto j = patterns::to_json(r);
  EXPECT_EQ(j["runs"][0]["class"], "k_byte_shifting");
  EXPECT_EQ(j["runs"][0]["k"], 2);
  EXPECT_EQ(j["runs"][0]["stride"], 1);
  EXPECT_EQ(j["runs"][0]["start_offset"], 5);
  EXPECT_EQ(j["runs"][1]["class"], "unclassified");
  EXPECT_EQ(j["runs"][2]["class"], "single_byte_fixed");
  EXPECT_EQ(j["runs"][2]["offset"], 3);
  EXPECT_EQ(patterns::report_from_json(nlohmann::json::parse(j.dump())), r);
}

}  // namespace
}  // namespace fmviz
