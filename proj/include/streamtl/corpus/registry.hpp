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

#ifndef STREAMTL_CORPUS_REGISTRY_HPP_
#define STREAMTL_CORPUS_REGISTRY_HPP_

#include <string_view>
#include <vector>

#include "streamtl/corpus/banning.hpp"
#include "streamtl/corpus/example.hpp"
#include "streamtl/corpus/hashtags.hpp"

namespace streamtl::corpus {

/// The bundled examples, in listing order.
inline const std::vector<Example>& examples() {
  static const std::vector<Example> all = [] {
    std::vector<Example> v;
    v.push_back(make_example("banning-stateless", "user banning, faulty stateless subject", Expected::Fail, 20,
                             banning::property(banning::stateless_subject())));
    v.push_back(make_example("banning-stateful", "user banning, keyed stateful subject", Expected::Pass, 20,
                             banning::property(banning::stateful_subject())));
    v.push_back(make_example("getHashtagsOk", "hashtags are extracted from a fixed pool", Expected::Pass, 100,
                             hashtags::get_hashtags_ok()));
    v.push_back(make_example("countHashtagsOk", "windowed counts rise to 6 and decay 6, 4, 2, 0", Expected::Pass, 100,
                             hashtags::count_hashtags_ok()));
    v.push_back(make_example("sparkTopUntilScalaTop", "#spark is top until #scala is top", Expected::Pass, 100,
                             hashtags::spark_top_until_scala_top()));
    v.push_back(make_example("alwaysOnlyOneTopHashtag", "exactly one top hashtag per instant", Expected::Pass, 100,
                             hashtags::always_only_one_top_hashtag()));
    v.push_back(make_example("alwaysEventuallyZeroCount", "every counted hashtag eventually drops to 0",
                             Expected::Pass, 100, hashtags::always_eventually_zero_count()));
    v.push_back(make_example("alwaysPeakImpliesEventuallyTop", "a peak hashtag eventually becomes top",
                             Expected::Pass, 100, hashtags::always_peak_implies_eventually_top()));
    return v;
  }();
  return all;
}

inline const Example* find_example(std::string_view name) {
  for (const auto& ex : examples())
    if (ex.name == name) return &ex;
  return nullptr;
}

}  // namespace streamtl::corpus

#endif  // STREAMTL_CORPUS_REGISTRY_HPP_
