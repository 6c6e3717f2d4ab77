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

#ifndef STREAMTL_HARNESS_TRANSFORMATION_HPP_
#define STREAMTL_HARNESS_TRANSFORMATION_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "streamtl/errors.hpp"
#include "streamtl/formula.hpp"
#include "streamtl/gen/generators.hpp"

namespace streamtl::harness {

using gen::Batch;

/// Per-instant step function of a running transformation; owns the transformation state.
template <class I, class O>
using Stepper = std::function<Batch<O>(const Batch<I>&, TimeMs)>;

/// A synchronous micro-batch transformation: each start() yields a stepper in the initial
/// state, producing exactly one output batch per input batch.
template <class I, class O>
class Transformation {
 public:
  using Input = I;
  using Output = O;

  explicit Transformation(std::function<Stepper<I, O>()> factory) : factory_(std::move(factory)) {}

  Stepper<I, O> start() const { return factory_(); }

  /// Applies the transformation to a whole prefix.
  std::vector<Batch<O>> run(std::span<const Batch<I>> inputs, TimeMs start_time = 0, TimeMs interval = 1) const {
    auto step = start();
    std::vector<Batch<O>> out;
    out.reserve(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k)
      out.push_back(step(inputs[k], start_time + static_cast<TimeMs>(k) * interval));
    return out;
  }

 private:
  std::function<Stepper<I, O>()> factory_;
};

/// this, then next.
template <class I, class M, class O>
Transformation<I, O> compose(Transformation<I, M> first, Transformation<M, O> second) {
  return Transformation<I, O>([first = std::move(first), second = std::move(second)] {
    return Stepper<I, O>([s1 = first.start(), s2 = second.start()](const Batch<I>& b, TimeMs t) mutable {
      return s2(s1(b, t), t);
    });
  });
}

template <class I, class M, class O>
Transformation<I, O> operator|(Transformation<I, M> first, Transformation<M, O> second) {
  return compose(std::move(first), std::move(second));
}

template <class I, class O, class F>
Transformation<I, O> stateless(F f) {
  return Transformation<I, O>([f = std::move(f)] {
    return Stepper<I, O>([f](const Batch<I>& b, TimeMs t) { return f(b, t); });
  });
}

/// State threaded through instants; step(state&, batch, time) -> output batch.
template <class I, class O, class S, class F>
Transformation<I, O> stateful(S initial, F step) {
  return Transformation<I, O>([initial = std::move(initial), step = std::move(step)] {
    return Stepper<I, O>([state = initial, step](const Batch<I>& b, TimeMs t) mutable { return step(state, b, t); });
  });
}

template <class I>
Transformation<I, I> identity() {
  return stateless<I, I>([](const Batch<I>& b, TimeMs) { return b; });
}

template <class I, class F>
auto map_elements(F f) -> Transformation<I, std::invoke_result_t<F, const I&>> {
  using O = std::invoke_result_t<F, const I&>;
  return stateless<I, O>([f = std::move(f)](const Batch<I>& b, TimeMs) {
    Batch<O> out;
    out.elements.reserve(b.size());
    for (const auto& e : b) out.elements.push_back(f(e));
    return out;
  });
}

template <class I, class P>
Transformation<I, I> filter_elements(P p) {
  return stateless<I, I>([p = std::move(p)](const Batch<I>& b, TimeMs) {
    Batch<I> out;
    for (const auto& e : b)
      if (p(e)) out.elements.push_back(e);
    return out;
  });
}

/// f maps an element to a sequence of outputs.
template <class I, class F>
auto flat_map(F f) -> Transformation<I, typename std::invoke_result_t<F, const I&>::value_type> {
  using O = typename std::invoke_result_t<F, const I&>::value_type;
  return stateless<I, O>([f = std::move(f)](const Batch<I>& b, TimeMs) {
    Batch<O> out;
    for (const auto& e : b)
      for (auto&& o : f(e)) out.elements.push_back(std::move(o));
    return out;
  });
}

/// Sliding window of n instants (slide 1): the concatenation of the last n input batches.
template <class E>
Transformation<E, E> window(std::size_t n) {
  if (n == 0) throw ContractViolation("window size must be positive");
  return stateful<E, E>(std::deque<Batch<E>>{}, [n](std::deque<Batch<E>>& last, const Batch<E>& b, TimeMs) {
    last.push_back(b);
    if (last.size() > n) last.pop_front();
    Batch<E> out;
    for (const auto& x : last) out.elements.insert(out.elements.end(), x.elements.begin(), x.elements.end());
    return out;
  });
}

/// (value, count) pairs, ordered by value.
template <class E>
Transformation<E, std::pair<E, std::int64_t>> count_by_value() {
  return stateless<E, std::pair<E, std::int64_t>>([](const Batch<E>& b, TimeMs) {
    std::map<E, std::int64_t> counts;
    for (const auto& e : b) ++counts[e];
    Batch<std::pair<E, std::int64_t>> out;
    for (auto& [k, c] : counts) out.elements.emplace_back(k, c);
    return out;
  });
}

/// Per-batch reduction of values sharing a key; output ordered by key.
template <class K, class V, class Op>
Transformation<std::pair<K, V>, std::pair<K, V>> reduce_by_key(Op op) {
  return stateless<std::pair<K, V>, std::pair<K, V>>([op = std::move(op)](const Batch<std::pair<K, V>>& b, TimeMs) {
    std::map<K, V> acc;
    for (const auto& [k, v] : b) {
      auto it = acc.find(k);
      if (it == acc.end()) {
        acc.emplace(k, v);
      } else {
        it->second = op(it->second, v);
      }
    }
    Batch<std::pair<K, V>> out;
    for (auto& [k, v] : acc) out.elements.emplace_back(k, v);
    return out;
  });
}

/// Keyed state across instants. update(new values of the key in this batch, previous state)
/// returns the new state, or nullopt to drop the key. It is called for every key that has a
/// state or new values. Output: (key, state) for every live key, ordered by key.
template <class K, class V, class S, class Update>
Transformation<std::pair<K, V>, std::pair<K, S>> stateful_by_key(Update update) {
  using In = std::pair<K, V>;
  using Out = std::pair<K, S>;
  return stateful<In, Out>(std::map<K, S>{}, [update = std::move(update)](std::map<K, S>& states, const Batch<In>& b,
                                                                           TimeMs) {
    std::map<K, std::vector<V>> fresh;
    for (const auto& [k, v] : b) fresh[k].push_back(v);
    std::map<K, S> next;
    auto visit = [&](const K& k, std::optional<S> previous) {
      static const std::vector<V> none;
      auto it = fresh.find(k);
      const std::vector<V>& vs = it == fresh.end() ? none : it->second;
      if (auto s = update(vs, std::move(previous))) next.emplace(k, std::move(*s));
    };
    for (auto& [k, s] : states) visit(k, s);
    for (auto& [k, vs] : fresh)
      if (!states.count(k)) visit(k, std::nullopt);
    states = std::move(next);
    Batch<Out> out;
    for (const auto& [k, s] : states) out.elements.emplace_back(k, s);
    return out;
  });
}

/// Windowed count by value in the style of an incremental window with inverse reduction: a
/// value keeps being reported, with count 0, after it leaves the window.
template <class E>
Transformation<E, std::pair<E, std::int64_t>> count_by_value_and_window(std::size_t n) {
  if (n == 0) throw ContractViolation("window size must be positive");
  struct State {
    std::deque<Batch<E>> last;
    std::map<E, std::int64_t> counts;
  };
  return stateful<E, std::pair<E, std::int64_t>>(State{}, [n](State& s, const Batch<E>& b, TimeMs) {
    s.last.push_back(b);
    for (const auto& e : b) ++s.counts[e];
    if (s.last.size() > n) {
      for (const auto& e : s.last.front()) --s.counts[e];
      s.last.pop_front();
    }
    Batch<std::pair<E, std::int64_t>> out;
    for (const auto& [k, c] : s.counts) out.elements.emplace_back(k, c);
    return out;
  });
}

}  // namespace streamtl::harness

#endif  // STREAMTL_HARNESS_TRANSFORMATION_HPP_
