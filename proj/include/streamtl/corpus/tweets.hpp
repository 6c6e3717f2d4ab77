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

#ifndef STREAMTL_CORPUS_TWEETS_HPP_
#define STREAMTL_CORPUS_TWEETS_HPP_

#include <cstdint>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "streamtl/gen/generators.hpp"
#include "streamtl/harness/transformation.hpp"

// A toy tweet stream: a tweet is its text, hashtags are the "#"-prefixed tokens.
namespace streamtl::corpus::tweets {

struct Tweet {
  std::string text;
  auto operator<=>(const Tweet&) const = default;
};

template <class BasicJson>
void to_json(BasicJson& j, const Tweet& t) {
  j = t.text;
}

using Hashtag = std::string;
using HashtagCount = std::pair<Hashtag, std::int64_t>;

inline constexpr std::size_t kMaxTweetLength = 140;

/// Every match of #\S+ in the text.
inline std::vector<Hashtag> hashtags_of(const std::string& text) {
  static const std::regex re(R"(#\S+)");
  std::vector<Hashtag> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it)
    out.push_back(it->str());
  return out;
}

/// Second extractor: whitespace tokens starting with '#'.
inline std::vector<Hashtag> hashtags_by_tokens(const std::string& text) {
  std::vector<Hashtag> out;
  std::istringstream in(text);
  for (std::string tok; in >> tok;)
    if (tok.front() == '#') out.push_back(tok);
  return out;
}

// ---------------------------------------------------------------------------------------------
// Generators

namespace detail {
inline std::string random_chars(Rng& rng, std::size_t len, std::string_view alphabet) {
  std::string s;
  for (std::size_t k = 0; k < len; ++k) s.push_back(alphabet[rng.below(alphabet.size())]);
  return s;
}
}  // namespace detail

/// A tweet of 1 to 10 plain words and no hashtags.
inline gen::GenFn<Tweet> plain_tweet() {
  return [](Rng& rng, std::size_t) {
    const auto words = rng.uniform(1, 10);
    std::string text;
    for (std::int64_t k = 0; k < words; ++k) {
      if (k) text.push_back(' ');
      text += detail::random_chars(rng, static_cast<std::size_t>(rng.uniform(1, 7)), "abcdefghijklmnopqrstuvwxyz");
    }
    return Tweet{text};
  };
}

/// "#" followed by 1 to max_len lowercase letters or digits.
inline gen::GenFn<Hashtag> hashtag(std::size_t max_len) {
  return [max_len](Rng& rng, std::size_t) {
    const auto len = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_len)));
    return "#" + detail::random_chars(rng, len, "abcdefghijklmnopqrstuvwxyz0123456789");
  };
}

/// Inserts one hashtag from hg at a random word boundary of a tweet from tg.
inline gen::GenFn<Tweet> add_hashtag(gen::GenFn<Hashtag> hg, gen::GenFn<Tweet> tg) {
  return [hg = std::move(hg), tg = std::move(tg)](Rng& rng, std::size_t size) {
    Tweet t = tg(rng, size);
    const Hashtag h = hg(rng, size);
    std::vector<std::string> words;
    std::istringstream in(t.text);
    for (std::string w; in >> w;) words.push_back(w);
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size() + 1)), h);
    std::string text;
    for (const auto& w : words) {
      if (!text.empty() && text.size() + 1 + w.size() > kMaxTweetLength) break;
      if (!text.empty()) text.push_back(' ');
      text += w;
    }
    return Tweet{text};
  };
}

inline gen::GenFn<Tweet> tweet_with_hashtags(std::vector<Hashtag> pool) {
  return add_hashtag(gen::elements(std::move(pool)), plain_tweet());
}

inline gen::GenFn<Tweet> tweet_with_hashtag_of_max_len(std::size_t max_len) {
  return add_hashtag(hashtag(max_len), plain_tweet());
}

// ---------------------------------------------------------------------------------------------
// Subjects

inline harness::Transformation<Tweet, Hashtag> get_hashtags() {
  return harness::flat_map<Tweet>([](const Tweet& t) { return hashtags_of(t.text); });
}

/// (hashtag, occurrences) over a sliding window of `window` batches. Hashtags that left the
/// window are reported with count 0.
inline harness::Transformation<Tweet, HashtagCount> count_hashtags(std::size_t window) {
  return get_hashtags() | harness::count_by_value_and_window<Hashtag>(window);
}

/// The hashtag with the highest windowed count (ties broken by the smaller hashtag); empty
/// while nothing has been counted.
inline harness::Transformation<Tweet, Hashtag> get_top_hashtag(std::size_t window) {
  auto top = harness::stateless<HashtagCount, Hashtag>([](const gen::Batch<HashtagCount>& b, TimeMs) {
    gen::Batch<Hashtag> out;
    const HashtagCount* best = nullptr;
    for (const auto& hc : b)
      if (!best || hc.second > best->second || (hc.second == best->second && hc.first < best->first)) best = &hc;
    if (best) out.elements.push_back(best->first);
    return out;
  });
  return count_hashtags(window) | top;
}

}  // namespace streamtl::corpus::tweets

#endif  // STREAMTL_CORPUS_TWEETS_HPP_
