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

#ifndef STREAMTL_GEN_GENERATORS_HPP_
#define STREAMTL_GEN_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "streamtl/errors.hpp"
#include "streamtl/rng.hpp"

namespace streamtl::gen {

/// A deterministic generator: same generator state and size hint, same value.
template <class T>
using GenFn = std::function<T(Rng&, std::size_t)>;

/// One micro batch: an ordered multiset of elements.
template <class E>
struct Batch {
  std::vector<E> elements;

  Batch() = default;
  Batch(std::initializer_list<E> es) : elements(es) {}
  explicit Batch(std::vector<E> es) : elements(std::move(es)) {}

  std::size_t size() const noexcept { return elements.size(); }
  bool empty() const noexcept { return elements.empty(); }
  auto begin() const noexcept { return elements.begin(); }
  auto end() const noexcept { return elements.end(); }

  bool operator==(const Batch&) const = default;
};

/// A finite stream prefix, one batch per instant.
template <class E>
struct StreamPrefix {
  std::vector<Batch<E>> batches;

  std::size_t size() const noexcept { return batches.size(); }
  const Batch<E>& operator[](std::size_t k) const { return batches[k]; }

  bool operator==(const StreamPrefix&) const = default;
};

constexpr std::size_t kDefaultSize = 100;

template <class T>
T sample(const GenFn<T>& g, std::uint64_t seed, std::size_t size = kDefaultSize) {
  Rng rng(seed);
  return g(rng, size);
}

// ---------------------------------------------------------------------------------------------
// Elements

template <class T>
GenFn<T> constant(T value) {
  return [value = std::move(value)](Rng&, std::size_t) { return value; };
}

/// Uniform choice among values.
template <class T>
GenFn<T> elements(std::vector<T> values) {
  if (values.empty()) throw ContractViolation("elements: no values");
  return [values = std::move(values)](Rng& rng, std::size_t) { return rng.pick(values); };
}

/// Uniform integer in [lo, hi].
inline GenFn<std::int64_t> choose(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ContractViolation("choose: empty range");
  return [lo, hi](Rng& rng, std::size_t) { return rng.uniform(lo, hi); };
}

/// Uniform choice among generators.
template <class T>
GenFn<T> one_of(std::vector<GenFn<T>> gens) {
  if (gens.empty()) throw ContractViolation("one_of: no generators");
  return [gens = std::move(gens)](Rng& rng, std::size_t size) { return gens[rng.below(gens.size())](rng, size); };
}

template <class T>
GenFn<T> one_of(GenFn<T> a, GenFn<T> b) {
  return one_of(std::vector<GenFn<T>>{std::move(a), std::move(b)});
}

template <class T, class F>
auto map(GenFn<T> g, F f) -> GenFn<std::invoke_result_t<F, T>> {
  return [g = std::move(g), f = std::move(f)](Rng& rng, std::size_t size) { return f(g(rng, size)); };
}

// ---------------------------------------------------------------------------------------------
// Batches

template <class E>
GenFn<Batch<E>> empty_batch() {
  return [](Rng&, std::size_t) { return Batch<E>{}; };
}

/// Exactly n elements drawn from g.
template <class E>
GenFn<Batch<E>> batch_of_n(std::size_t n, GenFn<E> g) {
  return [n, g = std::move(g)](Rng& rng, std::size_t size) {
    Batch<E> b;
    b.elements.reserve(n);
    for (std::size_t k = 0; k < n; ++k) b.elements.push_back(g(rng, size));
    return b;
  };
}

/// Between n and m elements (size uniform) drawn from g.
template <class E>
GenFn<Batch<E>> batch_of_n_to_m(std::size_t n, std::size_t m, GenFn<E> g) {
  if (n > m) throw ContractViolation("batch_of_n_to_m: n > m");
  return [n, m, g = std::move(g)](Rng& rng, std::size_t size) {
    const auto len = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(n), static_cast<std::int64_t>(m)));
    Batch<E> b;
    b.elements.reserve(len);
    for (std::size_t k = 0; k < len; ++k) b.elements.push_back(g(rng, size));
    return b;
  };
}

/// Concatenation of a batch from g1 and a batch from g2.
template <class E>
GenFn<Batch<E>> batch_union(GenFn<Batch<E>> g1, GenFn<Batch<E>> g2) {
  return [g1 = std::move(g1), g2 = std::move(g2)](Rng& rng, std::size_t size) {
    Batch<E> b = g1(rng, size);
    Batch<E> c = g2(rng, size);
    b.elements.insert(b.elements.end(), c.elements.begin(), c.elements.end());
    return b;
  };
}

template <class E>
Batch<E> merge(Batch<E> a, const Batch<E>& b) {
  a.elements.insert(a.elements.end(), b.elements.begin(), b.elements.end());
  return a;
}

// ---------------------------------------------------------------------------------------------
// Stream prefixes

namespace detail {
inline void check_timeout(std::uint32_t t, const char* who) {
  if (t == 0) throw ContractViolation(std::string(who) + ": timeout must be positive");
}
}  // namespace detail

/// A fixed prefix.
template <class E>
GenFn<StreamPrefix<E>> prefix_of(StreamPrefix<E> p) {
  return [p = std::move(p)](Rng&, std::size_t) { return p; };
}

/// t instants, each an independent batch from bg.
template <class E>
GenFn<StreamPrefix<E>> gen_always(GenFn<Batch<E>> bg, std::uint32_t t) {
  detail::check_timeout(t, "gen_always");
  return [bg = std::move(bg), t](Rng& rng, std::size_t size) {
    StreamPrefix<E> p;
    for (std::uint32_t k = 0; k < t; ++k) p.batches.push_back(bg(rng, size));
    return p;
  };
}

/// An empty batch followed by one from bg.
template <class E>
GenFn<StreamPrefix<E>> gen_next(GenFn<Batch<E>> bg) {
  return [bg = std::move(bg)](Rng& rng, std::size_t size) {
    StreamPrefix<E> p;
    p.batches.emplace_back();
    p.batches.push_back(bg(rng, size));
    return p;
  };
}

/// k uniform in [1, t]: k-1 empty batches, then one from bg.
template <class E>
GenFn<StreamPrefix<E>> gen_eventually(GenFn<Batch<E>> bg, std::uint32_t t) {
  detail::check_timeout(t, "gen_eventually");
  return [bg = std::move(bg), t](Rng& rng, std::size_t size) {
    const auto k = static_cast<std::uint32_t>(rng.uniform(1, t));
    StreamPrefix<E> p;
    p.batches.resize(k - 1);
    p.batches.push_back(bg(rng, size));
    return p;
  };
}

/// k uniform in [1, t]: instants before k from bg1, instant k from bg2.
template <class E>
GenFn<StreamPrefix<E>> gen_until(GenFn<Batch<E>> bg1, GenFn<Batch<E>> bg2, std::uint32_t t) {
  detail::check_timeout(t, "gen_until");
  return [bg1 = std::move(bg1), bg2 = std::move(bg2), t](Rng& rng, std::size_t size) {
    const auto k = static_cast<std::uint32_t>(rng.uniform(1, t));
    StreamPrefix<E> p;
    for (std::uint32_t j = 1; j < k; ++j) p.batches.push_back(bg1(rng, size));
    p.batches.push_back(bg2(rng, size));
    return p;
  };
}

/// Either t instants from bg2 (no release) or, for k uniform in [1, t], bg2 before k and
/// bg1 ∪ bg2 at k. The branch is a coin flip.
template <class E>
GenFn<StreamPrefix<E>> gen_release(GenFn<Batch<E>> bg1, GenFn<Batch<E>> bg2, std::uint32_t t) {
  detail::check_timeout(t, "gen_release");
  return [bg1 = std::move(bg1), bg2 = std::move(bg2), t](Rng& rng, std::size_t size) {
    StreamPrefix<E> p;
    if (rng.coin()) {
      for (std::uint32_t j = 0; j < t; ++j) p.batches.push_back(bg2(rng, size));
      return p;
    }
    const auto k = static_cast<std::uint32_t>(rng.uniform(1, t));
    for (std::uint32_t j = 1; j < k; ++j) p.batches.push_back(bg2(rng, size));
    Batch<E> last = bg1(rng, size);
    p.batches.push_back(merge(std::move(last), bg2(rng, size)));
    return p;
  };
}

/// p1 followed in time by p2 ("++").
template <class E>
GenFn<StreamPrefix<E>> concat(GenFn<StreamPrefix<E>> p1, GenFn<StreamPrefix<E>> p2) {
  return [p1 = std::move(p1), p2 = std::move(p2)](Rng& rng, std::size_t size) {
    StreamPrefix<E> a = p1(rng, size);
    StreamPrefix<E> b = p2(rng, size);
    a.batches.insert(a.batches.end(), b.batches.begin(), b.batches.end());
    return a;
  };
}

/// Positionwise union ("+"); the shorter prefix is padded with empty batches.
template <class E>
StreamPrefix<E> superpose(StreamPrefix<E> a, const StreamPrefix<E>& b) {
  if (a.batches.size() < b.batches.size()) a.batches.resize(b.batches.size());
  for (std::size_t k = 0; k < b.batches.size(); ++k) a.batches[k] = merge(std::move(a.batches[k]), b.batches[k]);
  return a;
}

template <class E>
GenFn<StreamPrefix<E>> superpose(GenFn<StreamPrefix<E>> p1, GenFn<StreamPrefix<E>> p2) {
  return [p1 = std::move(p1), p2 = std::move(p2)](Rng& rng, std::size_t size) {
    StreamPrefix<E> a = p1(rng, size);
    return superpose(std::move(a), p2(rng, size));
  };
}

/// n repetitions of p, concatenated.
template <class E>
GenFn<StreamPrefix<E>> repeat(GenFn<StreamPrefix<E>> p, std::size_t n) {
  return [p = std::move(p), n](Rng& rng, std::size_t size) {
    StreamPrefix<E> out;
    for (std::size_t k = 0; k < n; ++k) {
      StreamPrefix<E> part = p(rng, size);
      out.batches.insert(out.batches.end(), part.batches.begin(), part.batches.end());
    }
    return out;
  };
}

}  // namespace streamtl::gen

#endif  // STREAMTL_GEN_GENERATORS_HPP_
