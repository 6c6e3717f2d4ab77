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

#ifndef STREAMTL_SYMBOLIC_GEN_HPP_
#define STREAMTL_SYMBOLIC_GEN_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "streamtl/rng.hpp"
#include "streamtl/symbolic/compile.hpp"
#include "streamtl/symbolic/formula.hpp"

namespace streamtl::sym {

using TermBatch = std::vector<Term>;
/// A generated word: one batch of elements per instant. std::nullopt plays the role of err.
using BatchWord = std::vector<TermBatch>;

inline void batch_insert(TermBatch& b, const Term& e) {
  if (std::find(b.begin(), b.end(), e) == b.end()) b.push_back(e);
}

/// a u ∪ b v = (a ∪ b)(u ∪ v), and u ∪ ε = u.
inline BatchWord word_union(const BatchWord& u, const BatchWord& v) {
  BatchWord out = u.size() >= v.size() ? u : v;
  const BatchWord& shorter = u.size() >= v.size() ? v : u;
  for (std::size_t k = 0; k < shorter.size(); ++k)
    for (const auto& e : shorter[k]) batch_insert(out[k], e);
  return out;
}

/// True when gen applies to φ: no negation, no falsity, and every consume leaves its time
/// variable unused.
inline bool generatable(const Sym& f) {
  return std::visit(streamtl::detail::Overloaded{
                        [](const snode::True&) { return true; },
                        [](const snode::False&) { return false; },
                        [](const snode::Pred&) { return true; },
                        [](const snode::Eq&) { return true; },
                        [](const snode::Not&) { return false; },
                        [](const snode::Next& n) { return generatable(n.body); },
                        [](const snode::Eventually& n) { return generatable(n.body); },
                        [](const snode::Always& n) { return generatable(n.body); },
                        [](const snode::Consume& n) { return free_vars(n.body).count(n.o) == 0 && generatable(n.body); },
                        [](const snode::Implies& n) { return generatable(n.rhs); },
                        [](const auto& n) { return generatable(n.lhs) && generatable(n.rhs); },
                    },
                    f->node());
}

/// Random word generation from a closed formula. Disjunctions pick a branch at random and fall
/// back to the other one on err; consume draws its witness from the interpretation's constants
/// in random order. Temporal operators are unfolded on the way.
inline std::optional<BatchWord> gen_word(const Sym& f, const Interpretation& interp, Rng& rng) {
  using R = std::optional<BatchWord>;
  return std::visit(
      streamtl::detail::Overloaded{
          [](const snode::True&) -> R { return BatchWord{}; },
          [](const snode::False&) -> R { return std::nullopt; },
          [](const snode::Not&) -> R { return std::nullopt; },
          [&](const snode::Pred& n) -> R {
            if (interp.holds(n.name, n.args)) return BatchWord{};
            return std::nullopt;
          },
          [&](const snode::Eq& n) -> R {
            if (interp.eval(n.lhs) == interp.eval(n.rhs)) return BatchWord{};
            return std::nullopt;
          },
          [&](const snode::Or& n) -> R {
            const bool left_first = rng.coin();
            const Sym& first = left_first ? n.lhs : n.rhs;
            const Sym& second = left_first ? n.rhs : n.lhs;
            if (auto w = gen_word(first, interp, rng)) return w;
            return gen_word(second, interp, rng);
          },
          [&](const snode::And& n) -> R {
            auto a = gen_word(n.lhs, interp, rng);
            if (!a) return std::nullopt;
            auto b = gen_word(n.rhs, interp, rng);
            if (!b) return std::nullopt;
            return word_union(*a, *b);
          },
          [&](const snode::Implies& n) -> R { return gen_word(n.rhs, interp, rng); },
          [&](const snode::Next& n) -> R {
            auto w = gen_word(n.body, interp, rng);
            if (!w) return std::nullopt;
            w->insert(w->begin(), TermBatch{});
            return w;
          },
          [&](const snode::Consume& n) -> R {
            if (free_vars(n.body).count(n.o)) return std::nullopt;
            std::vector<std::string> pool = interp.constants;
            rng.shuffle(pool);
            for (const auto& c : pool) {
              const Term e = Term::app(c);
              if (auto w = gen_word(substitute(n.body, n.x, e), interp, rng)) {
                w->insert(w->begin(), TermBatch{e});
                return w;
              }
            }
            return std::nullopt;
          },
          [&](const auto&) -> R { return gen_word(unfold_temporal(f, interp), interp, rng); },
      },
      f->node());
}

}  // namespace streamtl::sym

#endif  // STREAMTL_SYMBOLIC_GEN_HPP_
