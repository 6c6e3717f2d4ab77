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

#ifndef STREAMTL_JUDGE_HPP_
#define STREAMTL_JUDGE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "streamtl/formula.hpp"

namespace streamtl {

/// Reference judgment (u, i ⊨ φ : v) with unrestricted lookahead. Positions are 1-based and may
/// exceed len(u); clauses are tried in order and the first that fits decides.
template <class L>
Truth judge(std::span<const TimedLetter<L>> u, std::size_t i, const Formula<L>& f) {
  using F = Formula<L>;
  auto at = [&](std::size_t k, const F& g) { return judge(u, k, g); };

  // verdicts of g over [i, i+t-1]
  auto window = [&](std::uint32_t t, const F& g) {
    std::vector<Truth> out;
    out.reserve(t);
    for (std::size_t k = i; k < i + t; ++k) out.push_back(at(k, g));
    return out;
  };

  return std::visit(
      detail::Overloaded{
          [&](const node::Solved<L>& n) { return n.value; },
          [&](const node::Not<L>& n) { return truth_not(at(i, n.body)); },
          [&](const node::And<L>& n) { return truth_and(at(i, n.lhs), at(i, n.rhs)); },
          [&](const node::Or<L>& n) { return truth_or(at(i, n.lhs), at(i, n.rhs)); },
          [&](const node::Implies<L>& n) { return truth_implies(at(i, n.lhs), at(i, n.rhs)); },
          [&](const node::Next<L>& n) { return at(i + 1, n.body); },
          [&](const node::BindNext<L>& n) {
            if (i > u.size()) return Truth::Inconclusive;
            const auto& letter = u[i - 1];
            return at(i + 1, (*n.consumer)(letter.letter, letter.time));
          },
          [&](const node::Eventually<L>& n) {
            bool all_false = true;
            for (Truth v : window(n.timeout.value(), n.body)) {
              if (v == Truth::True) return Truth::True;
              all_false = all_false && v == Truth::False;
            }
            return all_false ? Truth::False : Truth::Inconclusive;
          },
          [&](const node::Always<L>& n) {
            bool all_true = true;
            for (Truth v : window(n.timeout.value(), n.body)) {
              if (v == Truth::False) return Truth::False;
              all_true = all_true && v == Truth::True;
            }
            return all_true ? Truth::True : Truth::Inconclusive;
          },
          [&](const node::Until<L>& n) {
            const auto a = window(n.timeout.value(), n.lhs);
            const auto b = window(n.timeout.value(), n.rhs);
            const std::size_t t = n.timeout.value();
            // exists k: b(k) = T and a = T on [i, k)
            for (std::size_t k = 0; k < t; ++k) {
              if (b[k] == Truth::True) return Truth::True;
              if (a[k] != Truth::True) break;
            }
            // exists k: a(k) = F and b = F on [i, k]
            for (std::size_t k = 0; k < t; ++k) {
              if (b[k] != Truth::False) break;
              if (a[k] == Truth::False) return Truth::False;
            }
            // b = F over the whole interval
            bool all_false = true;
            for (Truth v : b) all_false = all_false && v == Truth::False;
            return all_false ? Truth::False : Truth::Inconclusive;
          },
          [&](const node::Release<L>& n) {
            const auto a = window(n.timeout.value(), n.lhs);
            const auto b = window(n.timeout.value(), n.rhs);
            const std::size_t t = n.timeout.value();
            // exists k: a(k) = T and b = T on [i, k]
            for (std::size_t k = 0; k < t; ++k) {
              if (b[k] != Truth::True) break;
              if (a[k] == Truth::True) return Truth::True;
            }
            bool all_true = true;
            for (Truth v : b) all_true = all_true && v == Truth::True;
            if (all_true) return Truth::True;
            // exists k: b(k) = F and a = F on [i, k)
            for (std::size_t k = 0; k < t; ++k) {
              if (b[k] == Truth::False) return Truth::False;
              if (a[k] != Truth::False) break;
            }
            return Truth::Inconclusive;
          },
      },
      f.node());
}

template <class L>
Truth judge(const std::vector<TimedLetter<L>>& u, std::size_t i, const Formula<L>& f) {
  return judge(std::span<const TimedLetter<L>>(u), i, f);
}

/// u ⊨ φ, as a verdict: the judgment at position 1.
template <class L>
Truth models(std::span<const TimedLetter<L>> u, const Formula<L>& f) {
  return judge(u, 1, f);
}

template <class L>
Truth models(const std::vector<TimedLetter<L>>& u, const Formula<L>& f) {
  return judge(std::span<const TimedLetter<L>>(u), 1, f);
}

}  // namespace streamtl

#endif  // STREAMTL_JUDGE_HPP_
