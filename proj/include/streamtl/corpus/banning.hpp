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

#ifndef STREAMTL_CORPUS_BANNING_HPP_
#define STREAMTL_CORPUS_BANNING_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "streamtl/corpus/example.hpp"
#include "streamtl/formula.hpp"
#include "streamtl/gen/generators.hpp"
#include "streamtl/harness/harness.hpp"
#include "streamtl/harness/transformation.hpp"

// User banning: input records are (user id, honest?) pairs, the output is the set of banned ids.
namespace streamtl::corpus::banning {

using UserRecord = std::pair<std::int64_t, bool>;
using UserId = std::int64_t;
using Letter = harness::IoLetter<UserRecord, UserId>;
using Subject = harness::Transformation<UserRecord, UserId>;

struct Params {
  UserId bad_id = 15;
  std::size_t batch_size = 20;
  std::uint32_t head_timeout = 10;
  std::uint32_t tail_timeout = 10;
  std::uint32_t nested_timeout = 5;
  UserId max_id = 50;
};

inline gen::GenFn<gen::Batch<UserRecord>> good_batch(const Params& p) {
  auto id = gen::choose(1, p.max_id);
  return gen::batch_of_n<UserRecord>(
      p.batch_size, gen::map(id, [](std::int64_t i) { return UserRecord{i, true}; }));
}

inline gen::GenFn<gen::Batch<UserRecord>> bad_batch(const Params& p) {
  return gen::batch_union(good_batch(p), gen::batch_of_n(1, gen::constant(UserRecord{p.bad_id, false})));
}

/// until(good, bad, head) ++ always(oneOf(good, bad), tail)
inline gen::GenFn<gen::StreamPrefix<UserRecord>> generator(const Params& p) {
  return gen::concat(gen::gen_until(good_batch(p), bad_batch(p), p.head_timeout),
                     gen::gen_always(gen::one_of(good_batch(p), bad_batch(p)), p.tail_timeout));
}

inline Formula<Letter> formula(const Params& p) {
  const UserId bad = p.bad_id;
  auto all_good_inputs = now<Letter>([](const Letter& l) {
    for (const auto& [id, honest] : l.input)
      if (!honest) return false;
    return true;
  });
  auto bad_input = now<Letter>([bad](const Letter& l) {
    for (const auto& r : l.input)
      if (r == UserRecord{bad, false}) return true;
    return false;
  });
  auto no_id_banned = now<Letter>([](const Letter& l) { return l.output.empty(); });
  auto bad_id_banned = now<Letter>([bad](const Letter& l) {
    for (UserId id : l.output)
      if (id == bad) return true;
    return false;
  });
  return until(p.head_timeout, all_good_inputs && no_id_banned, bad_id_banned) &&
         always(p.tail_timeout, implies(bad_input, always(p.nested_timeout, bad_id_banned)));
}

/// Faulty: bans only the ids misbehaving in the current batch.
inline Subject stateless_subject() {
  return harness::stateless<UserRecord, UserId>([](const gen::Batch<UserRecord>& b, TimeMs) {
    std::vector<UserId> ids;
    for (const auto& [id, honest] : b)
      if (!honest) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return gen::Batch<UserId>(std::move(ids));
  });
}

/// Keeps a per-user "ever misbehaved" flag.
inline Subject stateful_subject() {
  auto flags = harness::stateful_by_key<UserId, bool, bool>(
      [](const std::vector<bool>& honest, std::optional<bool> banned) -> std::optional<bool> {
        bool b = banned.value_or(false);
        for (bool h : honest) b = b || !h;
        return b;
      });
  auto banned = harness::filter_elements<std::pair<UserId, bool>>([](const auto& kv) { return kv.second; });
  auto ids = harness::map_elements<std::pair<UserId, bool>>([](const auto& kv) { return kv.first; });
  return flags | banned | ids;
}

inline Property<UserRecord, UserId> property(Subject subject, const Params& p = {}) {
  return {generator(p), std::move(subject), formula(p)};
}

}  // namespace streamtl::corpus::banning

#endif  // STREAMTL_CORPUS_BANNING_HPP_
