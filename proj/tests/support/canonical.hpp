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

#ifndef STREAMTL_TESTS_SUPPORT_CANONICAL_HPP_
#define STREAMTL_TESTS_SUPPORT_CANONICAL_HPP_

// Normal form for next-form formulas, used to compare the lazy and the explicit next
// transformations. X is pushed to the leaves, negation to literals, and the result is a
// disjunction of conjunctions kept as a minimal antichain (absorption). Only laws valid in
// Kleene algebra are used.

#include <algorithm>
#include <compare>
#include <set>
#include <stdexcept>
#include <tuple>

#include "streamtl/formula.hpp"

namespace testsupport {

struct Literal {
  std::size_t shift = 0;
  const void* leaf = nullptr;  // consumer identity; nullptr stands for the constant ?
  bool positive = true;

  auto operator<=>(const Literal&) const = default;
};

using Clause = std::set<Literal>;
using Dnf = std::set<Clause>;

class DnfTooLarge : public std::runtime_error {
 public:
  DnfTooLarge() : std::runtime_error("normal form exceeds the clause budget") {}
};

inline Dnf minimize(const Dnf& d) {
  Dnf out;
  for (const Clause& c : d) {
    bool absorbed = false;
    for (const Clause& o : d) {
      if (o.size() < c.size() && std::includes(c.begin(), c.end(), o.begin(), o.end())) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) out.insert(c);
  }
  return out;
}

inline Dnf dnf_or(Dnf a, const Dnf& b) {
  a.insert(b.begin(), b.end());
  return minimize(a);
}

inline Dnf dnf_and(const Dnf& a, const Dnf& b, std::size_t budget) {
  if (a.size() * b.size() > budget) throw DnfTooLarge();
  Dnf out;
  for (const Clause& x : a)
    for (const Clause& y : b) {
      Clause c = x;
      c.insert(y.begin(), y.end());
      out.insert(std::move(c));
    }
  return minimize(out);
}

template <class L>
Dnf canonical(const streamtl::Formula<L>& f, std::size_t shift, bool positive, std::size_t budget) {
  namespace node = streamtl::node;
  using streamtl::Truth;
  auto rec = [&](const streamtl::Formula<L>& g, bool pos) { return canonical(g, shift, pos, budget); };
  return std::visit(
      streamtl::detail::Overloaded{
          [&](const node::Solved<L>& n) -> Dnf {
            const Truth v = positive ? n.value : streamtl::truth_not(n.value);
            if (v == Truth::True) return Dnf{Clause{}};
            if (v == Truth::False) return Dnf{};
            return Dnf{Clause{Literal{0, nullptr, true}}};
          },
          [&](const node::BindNext<L>& n) -> Dnf {
            return Dnf{Clause{Literal{shift, n.consumer.get(), positive}}};
          },
          [&](const node::Not<L>& n) { return rec(n.body, !positive); },
          [&](const node::Next<L>& n) { return canonical(n.body, shift + 1, positive, budget); },
          [&](const node::And<L>& n) {
            return positive ? dnf_and(rec(n.lhs, true), rec(n.rhs, true), budget)
                            : dnf_or(rec(n.lhs, false), rec(n.rhs, false));
          },
          [&](const node::Or<L>& n) {
            return positive ? dnf_or(rec(n.lhs, true), rec(n.rhs, true))
                            : dnf_and(rec(n.lhs, false), rec(n.rhs, false), budget);
          },
          [&](const node::Implies<L>& n) {
            return positive ? dnf_or(rec(n.lhs, false), rec(n.rhs, true))
                            : dnf_and(rec(n.lhs, true), rec(n.rhs, false), budget);
          },
          [&](const auto&) -> Dnf { throw std::logic_error("temporal operator outside next form"); },
      },
      f.node());
}

template <class L>
Dnf canonical(const streamtl::Formula<L>& f, std::size_t budget = 200000) {
  return canonical(f, 0, true, budget);
}

}  // namespace testsupport

#endif  // STREAMTL_TESTS_SUPPORT_CANONICAL_HPP_
