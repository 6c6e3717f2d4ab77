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

#ifndef STREAMTL_CORPUS_HASHTAGS_HPP_
#define STREAMTL_CORPUS_HASHTAGS_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "streamtl/corpus/example.hpp"
#include "streamtl/corpus/tweets.hpp"
#include "streamtl/formula.hpp"

// Properties of the hashtag operations in tweets.hpp.
namespace streamtl::corpus::hashtags {

using tweets::Hashtag;
using tweets::HashtagCount;
using tweets::Tweet;

using TagLetter = harness::IoLetter<Tweet, Hashtag>;
using CountLetter = harness::IoLetter<Tweet, HashtagCount>;

inline std::set<Hashtag> hashtag_set(const gen::Batch<Tweet>& b) {
  std::set<Hashtag> out;
  for (const auto& t : b)
    for (auto& h : tweets::hashtags_of(t.text)) out.insert(std::move(h));
  return out;
}

inline gen::GenFn<gen::Batch<Tweet>> random_tweets(std::size_t max_len = 8) {
  return gen::batch_of_n_to_m(5, 10, tweets::tweet_with_hashtag_of_max_len(max_len));
}

// ---------------------------------------------------------------------------------------------

/// Every extracted hashtag is drawn from the pool, and there is at least one per batch.
inline Property<Tweet, Hashtag> get_hashtags_ok() {
  const std::uint32_t num_batches = 5;
  const std::vector<Hashtag> pool{"#spark", "#scala", "#scalacheck"};
  auto batches = gen::batch_of_n_to_m(5, 10, tweets::tweet_with_hashtags(pool));
  auto phi = always(num_batches, now<TagLetter>([pool](const TagLetter& l) {
                      if (l.output.empty()) return false;
                      return std::all_of(l.output.begin(), l.output.end(), [&](const Hashtag& h) {
                        return std::find(pool.begin(), pool.end(), h) != pool.end();
                      });
                    }));
  return {gen::gen_always(batches, num_batches), tweets::get_hashtags(), phi};
}

struct CountParams {
  std::size_t window = 3;
  std::uint32_t spark_timeout = 12;  // 4 windows
  std::uint32_t scala_timeout = 6;   // 2 windows
  std::int64_t spark_batch = 2;
  std::int64_t scala_batch = 1;
};

inline gen::GenFn<gen::StreamPrefix<Tweet>> count_hashtags_generator(const CountParams& p = {}) {
  auto spark = gen::batch_of_n(static_cast<std::size_t>(p.spark_batch), tweets::tweet_with_hashtags({"#spark"}));
  auto scala = gen::batch_of_n(static_cast<std::size_t>(p.scala_batch), tweets::tweet_with_hashtags({"#scala"}));
  return gen::concat(gen::gen_always(spark, p.spark_timeout), gen::gen_always(scala, p.scala_timeout));
}

/// #spark reaches a full-window count, holds it, then decays to 0; #scala later reaches its
/// full-window count.
inline Property<Tweet, HashtagCount> count_hashtags_ok(const CountParams& p = {}) {
  const auto w = static_cast<std::int64_t>(p.window);
  auto count_n = [](Hashtag tag, std::int64_t n) {
    return now<CountLetter>([tag, n](const CountLetter& l) {
      return std::any_of(l.output.begin(), l.output.end(), [&](const HashtagCount& c) { return c == HashtagCount{tag, n}; });
    });
  };
  auto sparks = [&](std::int64_t n) { return count_n("#spark", n); };
  auto scalas = [&](std::int64_t n) { return count_n("#scala", n); };
  const auto first_full = static_cast<std::uint32_t>(p.window + 1);

  auto later_always_all_spark = eventually(first_full, always(p.spark_timeout - 2, sparks(p.spark_batch * w)));
  auto later_scala = eventually(p.spark_timeout + first_full, scalas(p.scala_batch * w));
  auto decay = sparks(p.spark_batch * (w - 1)) && next(sparks(p.spark_batch * (w - 2))) &&
               next(next(sparks(p.spark_batch * (w - 3))));
  auto later_spark_down_to_zero = eventually(first_full, until(p.spark_timeout - 2, sparks(p.spark_batch * w), decay));

  return {count_hashtags_generator(p), tweets::count_hashtags(p.window),
          later_always_all_spark && later_scala && later_spark_down_to_zero};
}

/// #spark is the top hashtag until #scala is.
inline Property<Tweet, Hashtag> spark_top_until_scala_top() {
  const std::uint32_t scala_timeout = 6;
  auto spark_popular = gen::batch_union(gen::batch_of_n(5, tweets::tweet_with_hashtags({"#spark"})),
                                        gen::batch_of_n(2, tweets::tweet_with_hashtags({"#scalacheck"})));
  auto scala_popular = gen::batch_union(gen::batch_of_n(7, tweets::tweet_with_hashtags({"#scala"})),
                                        gen::batch_of_n(2, tweets::tweet_with_hashtags({"#scalacheck"})));
  auto only = [](Hashtag tag) {
    return now<TagLetter>([tag](const TagLetter& l) {
      return std::all_of(l.output.begin(), l.output.end(), [&](const Hashtag& h) { return h == tag; });
    });
  };
  return {gen::gen_until(spark_popular, scala_popular, scala_timeout), tweets::get_top_hashtag(1),
          until(scala_timeout, only("#spark"), only("#scala"))};
}

/// Exactly one top hashtag at every instant.
inline Property<Tweet, Hashtag> always_only_one_top_hashtag() {
  const std::uint32_t num_batches = 5;
  return {gen::gen_always(random_tweets(), num_batches), tweets::get_top_hashtag(2),
          always(num_batches, now<TagLetter>([](const TagLetter& l) { return l.output.size() == 1; }))};
}

/// Liveness: the hashtags of every batch eventually have count 0 once a tail of empty batches
/// flushes the window.
inline Property<Tweet, HashtagCount> always_eventually_zero_count() {
  const std::size_t window = 4;
  const auto num_batches = static_cast<std::uint32_t>(window * 4);
  // six hashtags per batch, so counts exceed 1
  gen::GenFn<gen::Batch<Tweet>> batch = [](Rng& rng, std::size_t size) {
    std::vector<Hashtag> pool;
    auto h = tweets::hashtag(8);
    for (int k = 0; k < 6; ++k) pool.push_back(h(rng, size));
    return gen::batch_of_n_to_m(5, 10, tweets::add_hashtag(gen::elements(pool), tweets::plain_tweet()))(rng, size);
  };
  auto generator = gen::concat(gen::gen_always(batch, num_batches),
                               gen::gen_always(gen::empty_batch<Tweet>(), static_cast<std::uint32_t>(window * 2)));
  auto phi = always(num_batches, consume<CountLetter>([window](const CountLetter& seen) {
                      auto tags = hashtag_set(seen.input);
                      return eventually(static_cast<std::uint32_t>(window * 3),
                                        now<CountLetter>([tags = std::move(tags)](const CountLetter& l) {
                                          for (const auto& [h, c] : l.output)
                                            if (tags.count(h) && c != 0) return false;
                                          return true;
                                        }));
                    }));
  return {generator, tweets::count_hashtags(window), phi};
}

/// Liveness: a sudden peak of one hashtag over background noise makes it the top hashtag.
inline Property<Tweet, Hashtag> always_peak_implies_eventually_top() {
  const std::size_t window = 2;
  const auto sides = static_cast<std::uint32_t>(window * 2);
  const std::uint32_t num_batches = sides + 1 + sides;
  const std::int64_t peak_size = 20;

  auto noise = gen::gen_always(random_tweets(), num_batches);
  gen::GenFn<gen::Batch<Tweet>> peak = [](Rng& rng, std::size_t size) {
    const Hashtag h = tweets::hashtag(8)(rng, size);
    return gen::batch_of_n(static_cast<std::size_t>(peak_size), tweets::tweet_with_hashtags({h}))(rng, size);
  };
  auto spike = gen::concat(gen::concat(gen::gen_always(gen::empty_batch<Tweet>(), sides), gen::gen_always(peak, 1)),
                           gen::gen_always(gen::empty_batch<Tweet>(), sides));
  auto generator = gen::repeat(gen::superpose(noise, spike), 6);

  auto phi = always(num_batches * 3, consume<TagLetter>([num_batches](const TagLetter& seen) {
                      std::map<Hashtag, std::int64_t> counts;
                      for (const auto& t : seen.input)
                        for (const auto& h : tweets::hashtags_of(t.text)) ++counts[h];
                      std::set<Hashtag> peaks;
                      for (const auto& [h, c] : counts)
                        if (c >= peak_size) peaks.insert(h);
                      auto is_peak = Formula<TagLetter>::truth(!peaks.empty());
                      auto top = eventually(num_batches, now<TagLetter>([peaks](const TagLetter& l) {
                                              return std::set<Hashtag>(l.output.begin(), l.output.end()) == peaks;
                                            }));
                      return implies(is_peak, top);
                    }));
  return {generator, tweets::get_top_hashtag(window), phi};
}

}  // namespace streamtl::corpus::hashtags

#endif  // STREAMTL_CORPUS_HASHTAGS_HPP_
