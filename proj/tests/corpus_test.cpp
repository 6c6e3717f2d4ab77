/*
 * Copyright (c) 2026, The streamtl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "streamtl/corpus/registry.hpp"

using namespace streamtl;
using namespace streamtl::corpus;
using harness::HarnessConfig;
using harness::Json;

namespace {

HarnessConfig config_for(const Example& ex, std::uint64_t seed) {
  HarnessConfig c;
  c.min_tests_ok = ex.default_min_tests;
  c.seed = seed;
  return c;
}

std::vector<std::string> names() {
  std::vector<std::string> v;
  for (const auto& ex : examples()) v.push_back(ex.name);
  return v;
}

std::int64_t count_of(const gen::Batch<tweets::HashtagCount>& b, const std::string& tag) {
  for (const auto& [h, c] : b)
    if (h == tag) return c;
  return -1;
}

}  // namespace

TEST(Registry, EightUniquelyNamedExamples) {
  const auto v = names();
  EXPECT_EQ(v.size(), 8u);
  EXPECT_EQ(std::set<std::string>(v.begin(), v.end()).size(), v.size());
  ASSERT_NE(find_example("banning-stateless"), nullptr);
  EXPECT_EQ(find_example("banning-stateless")->expected, Expected::Fail);
  EXPECT_EQ(find_example("banning-stateful")->default_min_tests, 20u);
  EXPECT_EQ(find_example("nope"), nullptr);
}

class EveryExample : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryExample, OutcomeMatchesAtDefaultAndTenOtherSeeds) {
  const Example& ex = *find_example(GetParam());
  for (std::uint64_t seed : {0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89}) {
    const auto r = ex.run(config_for(ex, seed), {});
    EXPECT_TRUE(outcome_matches(ex, r)) << "seed " << seed << ": " << harness::to_json(r).dump();
    EXPECT_EQ(r.errors, 0u);
    if (ex.expected == Expected::Pass) {
      EXPECT_EQ(r.cases, ex.default_min_tests);
    }
  }
}

TEST_P(EveryExample, ReportRoundTripsAndIsParallelDeterministic) {
  const Example& ex = *find_example(GetParam());
  HarnessConfig c = config_for(ex, 7);
  const auto seq = ex.run(c, {});
  EXPECT_EQ(harness::report_from_json(harness::to_json(seq)), seq);
  c.parallelism = 4;
  EXPECT_EQ(harness::to_json(ex.run(c, {})).dump(), harness::to_json(seq).dump());
}

INSTANTIATE_TEST_SUITE_P(Corpus, EveryExample, ::testing::ValuesIn(names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (char& ch : n)
                             if (ch == '-') ch = '_';
                           return n;
                         });

// ---------------------------------------------------------------------------------------------
// Banning

TEST(Banning, StatelessCounterexampleHasABadBatchEarly) {
  const Example& ex = *find_example("banning-stateless");
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto r = ex.run(config_for(ex, seed), {});
    ASSERT_EQ(r.failed, 1u);
    ASSERT_TRUE(r.counterexample);
    const Json& prefix = r.counterexample->prefix;
    bool bad_early = false;
    for (std::size_t k = 0; k < std::min<std::size_t>(10, prefix.size()); ++k)
      for (const auto& rec : prefix[k])
        if (rec == Json::array({15, false})) bad_early = true;
    EXPECT_TRUE(bad_early) << prefix.dump();
  }
}

TEST(Banning, StatefulPassesTwentyCases) {
  const Example& ex = *find_example("banning-stateful");
  const auto r = ex.run(config_for(ex, 7), {});
  EXPECT_EQ(r.passed + r.inconclusive, 20u);
  EXPECT_EQ(r.failed, 0u);
  EXPECT_EQ(r.errors, 0u);
}

TEST(Banning, GeneratorShape) {
  banning::Params p;
  auto g = banning::generator(p);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto prefix = gen::sample(g, s);
    ASSERT_GE(prefix.size(), 11u);
    ASSERT_LE(prefix.size(), 20u);
    const std::size_t head = prefix.size() - p.tail_timeout;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      const auto& b = prefix[k];
      const bool bad = std::count(b.begin(), b.end(), banning::UserRecord{15, false}) == 1;
      EXPECT_EQ(b.size(), bad ? 21u : 20u);
      if (k + 1 < head) {
        EXPECT_FALSE(bad);
      } else if (k + 1 == head) {
        EXPECT_TRUE(bad);
      }
      for (const auto& [id, honest] : b) {
        EXPECT_GE(id, 1);
        EXPECT_LE(id, 50);
        if (!honest) {
          EXPECT_EQ(id, 15);
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------------------------
// Tweets

TEST(Tweets, ExtractorsAgreeOnSimpleText) {
  EXPECT_EQ(tweets::hashtags_of("hi #a b #cd"), (std::vector<std::string>{"#a", "#cd"}));
  EXPECT_EQ(tweets::hashtags_by_tokens("hi #a b #cd"), (std::vector<std::string>{"#a", "#cd"}));
  EXPECT_TRUE(tweets::hashtags_of("no tags here").empty());
}

TEST(Tweets, GeneratedTweetsAreShortAndCarryOneHashtag) {
  auto g = tweets::tweet_with_hashtag_of_max_len(8);
  auto pooled = tweets::tweet_with_hashtags({"#spark", "#scala"});
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto t = gen::sample(g, s);
    EXPECT_LE(t.text.size(), tweets::kMaxTweetLength);
    const auto tags = tweets::hashtags_of(t.text);
    ASSERT_EQ(tags.size(), 1u) << t.text;
    EXPECT_GE(tags[0].size(), 2u);
    EXPECT_LE(tags[0].size(), 9u);
    const auto p = tweets::hashtags_of(gen::sample(pooled, s).text);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_TRUE(p[0] == "#spark" || p[0] == "#scala");
  }
  EXPECT_TRUE(tweets::hashtags_of(gen::sample(tweets::plain_tweet(), 3).text).empty());
}

// The regex extractor used by the subjects against the token-split reference.
TEST(Tweets, HashtagsMatchTheTokenReference) {
  using L = hashtags::TagLetter;
  const std::uint32_t n = 5;
  auto gen_prefix = gen::gen_always(hashtags::random_tweets(), n);
  auto phi = always(n, now<L>([](const L& l) {
                      std::set<std::string> expected;
                      for (const auto& t : l.input)
                        for (auto& h : tweets::hashtags_by_tokens(t.text)) expected.insert(h);
                      return std::set<std::string>(l.output.begin(), l.output.end()) == expected;
                    }));
  HarnessConfig c;
  c.min_tests_ok = 100;
  c.seed = 31;
  c.oracle_crosscheck = true;
  const auto r = harness::for_all_stream("getHashtagsReference", gen_prefix, tweets::get_hashtags(), phi, c);
  EXPECT_EQ(r.passed, 100u) << harness::to_json(r).dump();
}

TEST(Tweets, CountHashtagsDecaysAsTheWindowSlides) {
  hashtags::CountParams p;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto prefix = gen::sample(hashtags::count_hashtags_generator(p), s);
    ASSERT_EQ(prefix.size(), 18u);
    const auto out = tweets::count_hashtags(p.window).run(prefix.batches);
    const std::vector<std::int64_t> spark{2, 4, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 4, 2, 0, 0, 0, 0};
    const std::vector<std::int64_t> scala{-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 1, 2, 3, 3, 3, 3};
    for (std::size_t k = 0; k < out.size(); ++k) {
      EXPECT_EQ(count_of(out[k], "#spark"), spark[k]) << "instant " << k + 1;
      EXPECT_EQ(count_of(out[k], "#scala"), scala[k]) << "instant " << k + 1;
    }
  }
}

TEST(Tweets, TopHashtagBreaksTiesBySmallerName) {
  std::vector<gen::Batch<tweets::Tweet>> in{{{"x #b"}, {"y #a"}}, {{"#b"}}, {}};
  const auto out = tweets::get_top_hashtag(1).run(in);
  EXPECT_EQ(out[0], (gen::Batch<std::string>{"#a"}));
  EXPECT_EQ(out[1], (gen::Batch<std::string>{"#b"}));
  EXPECT_EQ(out[2], (gen::Batch<std::string>{"#a"}));  // both counts 0
  EXPECT_TRUE(tweets::get_top_hashtag(1).run(std::vector<gen::Batch<tweets::Tweet>>{{}})[0].empty());
}

TEST(Tweets, EmptyTailFlushesEveryCount) {
  auto p = hashtags::always_eventually_zero_count();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto prefix = gen::sample(p.generator, s);
    ASSERT_EQ(prefix.size(), 24u);
    const auto out = p.subject.run(prefix.batches);
    for (std::size_t k = 19; k < out.size(); ++k)
      for (const auto& [h, c] : out[k]) EXPECT_EQ(c, 0) << h << " at instant " << k + 1;
  }
}

TEST(Tweets, PeakGeneratorPlacesOnePeakPerSegment) {
  auto p = hashtags::always_peak_implies_eventually_top();
  const auto prefix = gen::sample(p.generator, 4);
  ASSERT_EQ(prefix.size(), 54u);
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    std::map<std::string, int> counts;
    for (const auto& t : prefix[k])
      for (const auto& h : tweets::hashtags_of(t.text)) ++counts[h];
    int max = 0;
    for (const auto& [h, c] : counts) max = std::max(max, c);
    if (k % 9 == 4) {
      EXPECT_GE(max, 20);
    } else {
      EXPECT_LE(max, 10);
    }
  }
}
