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

#ifndef STREAMTL_FORMULA_HPP_
#define STREAMTL_FORMULA_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "streamtl/errors.hpp"
#include "streamtl/truth.hpp"

namespace streamtl {

/// Milliseconds since the start of a run.
using TimeMs = std::int64_t;

/// Number of instants a temporal operator may inspect, counting the current one. Always >= 1.
class Timeout {
 public:
  constexpr explicit Timeout(std::uint32_t instants) : value_(instants) {
    if (instants == 0) throw std::invalid_argument("timeout must be positive");
  }
  constexpr std::uint32_t value() const noexcept { return value_; }
  constexpr auto operator<=>(const Timeout&) const = default;

 private:
  std::uint32_t value_;
};

template <class L>
struct TimedLetter {
  L letter;
  TimeMs time = 0;
};

template <class L>
class Formula;

namespace node {

template <class L>
struct Solved {
  Truth value;
};
template <class L>
struct Not {
  Formula<L> body;
};
template <class L>
struct And {
  Formula<L> lhs, rhs;
};
template <class L>
struct Or {
  Formula<L> lhs, rhs;
};
template <class L>
struct Implies {
  Formula<L> lhs, rhs;
};
template <class L>
struct Next {
  Formula<L> body;
};

/// Consume operator: binds the current letter and its time, continuing one instant later.
///
/// `static_depth`, when present, is swl(consumer(letter, time)) + 1 for every letter. Only
/// constructors that can guarantee it (timeless atoms, compiled consumes with constant
/// timeouts) set it.
template <class L>
struct BindNext {
  std::shared_ptr<const std::function<Formula<L>(const L&, TimeMs)>> consumer;
  std::optional<std::size_t> static_depth;
};

template <class L>
struct Eventually {
  Timeout timeout;
  Formula<L> body;
};
template <class L>
struct Always {
  Timeout timeout;
  Formula<L> body;
};
template <class L>
struct Until {
  Timeout timeout;
  Formula<L> lhs, rhs;
};
template <class L>
struct Release {
  Timeout timeout;
  Formula<L> lhs, rhs;
};

template <class L>
using Variant = std::variant<Solved<L>, Not<L>, And<L>, Or<L>, Implies<L>, Next<L>, BindNext<L>,
                             Eventually<L>, Always<L>, Until<L>, Release<L>>;

}  // namespace node

namespace detail {

template <class L>
struct FormulaNode {
  explicit FormulaNode(node::Variant<L> v) : value(std::move(v)) {}
  FormulaNode(const FormulaNode&) = delete;
  FormulaNode& operator=(const FormulaNode&) = delete;

  node::Variant<L> value;
  // memo for the one-level next transformation
  mutable std::once_flag unfold_once;
  mutable std::shared_ptr<const FormulaNode> unfolded;
};

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace detail

/// Immutable executable formula over letters of type `L`.
///
/// Nodes are shared; copying a Formula is a reference-count bump. Consumers must be pure and
/// deterministic, since the same node can be evaluated from several threads and several times
/// by the reference semantics.
template <class L>
class Formula {
 public:
  using Letter = L;
  using ConsumerFn = std::function<Formula(const L&, TimeMs)>;

  const node::Variant<L>& node() const noexcept { return node_->value; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&node_->value);
  }

  bool is_solved() const noexcept { return as<node::Solved<L>>() != nullptr; }
  std::optional<Truth> solved_value() const noexcept {
    if (auto s = as<node::Solved<L>>()) return s->value;
    return std::nullopt;
  }

  bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }
  const detail::FormulaNode<L>& impl() const noexcept { return *node_; }
  const std::shared_ptr<const detail::FormulaNode<L>>& handle() const noexcept { return node_; }
  static Formula from_handle(std::shared_ptr<const detail::FormulaNode<L>> n) { return Formula(std::move(n)); }

  static Formula make(node::Variant<L> v) {
    return Formula(std::make_shared<const detail::FormulaNode<L>>(std::move(v)));
  }

  static Formula solved(Truth v) { return make(node::Solved<L>{v}); }
  static Formula truth(bool b) { return solved(from_bool(b)); }
  static Formula negation(Formula f) { return make(node::Not<L>{std::move(f)}); }
  static Formula conj(Formula a, Formula b) { return make(node::And<L>{std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return make(node::Or<L>{std::move(a), std::move(b)}); }
  static Formula implication(Formula a, Formula b) {
    return make(node::Implies<L>{std::move(a), std::move(b)});
  }
  static Formula next(Formula f) { return make(node::Next<L>{std::move(f)}); }
  static Formula bind_next(ConsumerFn consumer, std::optional<std::size_t> static_depth = std::nullopt) {
    if (!consumer) throw std::invalid_argument("bind_next: empty consumer");
    return make(node::BindNext<L>{std::make_shared<const ConsumerFn>(std::move(consumer)), static_depth});
  }
  static Formula eventually(Timeout t, Formula f) { return make(node::Eventually<L>{t, std::move(f)}); }
  static Formula always(Timeout t, Formula f) { return make(node::Always<L>{t, std::move(f)}); }
  static Formula until(Timeout t, Formula a, Formula b) {
    return make(node::Until<L>{t, std::move(a), std::move(b)});
  }
  static Formula release(Timeout t, Formula a, Formula b) {
    return make(node::Release<L>{t, std::move(a), std::move(b)});
  }

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode<L>> n) : node_(std::move(n)) {}

  std::shared_ptr<const detail::FormulaNode<L>> node_;
};

// ---------------------------------------------------------------------------------------------
// Combinator syntax

template <class L>
Formula<L> operator!(const Formula<L>& f) {
  return Formula<L>::negation(f);
}
template <class L>
Formula<L> operator&&(const Formula<L>& a, const Formula<L>& b) {
  return Formula<L>::conj(a, b);
}
template <class L>
Formula<L> operator||(const Formula<L>& a, const Formula<L>& b) {
  return Formula<L>::disj(a, b);
}
template <class L>
Formula<L> implies(const Formula<L>& a, const Formula<L>& b) {
  return Formula<L>::implication(a, b);
}
template <class L>
Formula<L> next(const Formula<L>& f) {
  return Formula<L>::next(f);
}
/// `times` applications of next.
template <class L>
Formula<L> next(std::size_t times, Formula<L> f) {
  for (std::size_t k = 0; k < times; ++k) f = Formula<L>::next(std::move(f));
  return f;
}
template <class L>
Formula<L> eventually(std::uint32_t t, const Formula<L>& f) {
  return Formula<L>::eventually(Timeout(t), f);
}
template <class L>
Formula<L> always(std::uint32_t t, const Formula<L>& f) {
  return Formula<L>::always(Timeout(t), f);
}
template <class L>
Formula<L> until(std::uint32_t t, const Formula<L>& a, const Formula<L>& b) {
  return Formula<L>::until(Timeout(t), a, b);
}
template <class L>
Formula<L> release(std::uint32_t t, const Formula<L>& a, const Formula<L>& b) {
  return Formula<L>::release(Timeout(t), a, b);
}

/// Timeless atom on the current letter. Consumes one letter, so it is inconclusive past the end
/// of a word; its static depth is 1.
template <class L, class Pred>
Formula<L> now(Pred pred) {
  return Formula<L>::bind_next(
      [pred = std::move(pred)](const L& letter, TimeMs) -> Formula<L> {
        if constexpr (std::is_same_v<std::invoke_result_t<const Pred&, const L&>, Truth>) {
          return Formula<L>::solved(pred(letter));
        } else {
          return Formula<L>::truth(static_cast<bool>(pred(letter)));
        }
      },
      1);
}

/// Timeless atom on the current letter and its time.
template <class L, class Pred>
Formula<L> now_time(Pred pred) {
  return Formula<L>::bind_next(
      [pred = std::move(pred)](const L& letter, TimeMs t) -> Formula<L> {
        return Formula<L>::truth(static_cast<bool>(pred(letter, t)));
      },
      1);
}

/// Atom applying `pred` to a projection of the current letter.
template <class L, class Proj, class Pred>
Formula<L> at(Proj proj, Pred pred) {
  return now<L>([proj = std::move(proj), pred = std::move(pred)](const L& letter) {
    return static_cast<bool>(pred(std::invoke(proj, letter)));
  });
}

/// General consume: the continuation formula depends on the letter. No static depth is known.
template <class L, class Fn>
Formula<L> consume(Fn fn) {
  return Formula<L>::bind_next(
      [fn = std::move(fn)](const L& letter, TimeMs) -> Formula<L> { return fn(letter); });
}

template <class L, class Fn>
Formula<L> consume_time(Fn fn) {
  return Formula<L>::bind_next(
      [fn = std::move(fn)](const L& letter, TimeMs t) -> Formula<L> { return fn(letter, t); });
}

// ---------------------------------------------------------------------------------------------
// Inspection

template <class L>
bool is_temporal_node(const Formula<L>& f) {
  return f.template as<node::Eventually<L>>() || f.template as<node::Always<L>>() ||
         f.template as<node::Until<L>>() || f.template as<node::Release<L>>();
}

/// Node count; a consumer counts as one node.
template <class L>
std::size_t formula_size(const Formula<L>& f) {
  return std::visit(
      detail::Overloaded{
          [](const node::Solved<L>&) -> std::size_t { return 1; },
          [](const node::BindNext<L>&) -> std::size_t { return 1; },
          [](const node::Not<L>& n) -> std::size_t { return 1 + formula_size(n.body); },
          [](const node::Next<L>& n) -> std::size_t { return 1 + formula_size(n.body); },
          [](const node::Eventually<L>& n) -> std::size_t { return 1 + formula_size(n.body); },
          [](const node::Always<L>& n) -> std::size_t { return 1 + formula_size(n.body); },
          [](const auto& n) -> std::size_t { return 1 + formula_size(n.lhs) + formula_size(n.rhs); },
      },
      f.node());
}

/// Structural identity. Consumers compare by identity of the consumer object.
template <class L>
bool structurally_equal(const Formula<L>& a, const Formula<L>& b) {
  if (a.same_node(b)) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      detail::Overloaded{
          [&](const node::Solved<L>& x) { return x.value == b.template as<node::Solved<L>>()->value; },
          [&](const node::BindNext<L>& x) {
            const auto* y = b.template as<node::BindNext<L>>();
            return x.consumer == y->consumer && x.static_depth == y->static_depth;
          },
          [&](const node::Not<L>& x) {
            return structurally_equal(x.body, b.template as<node::Not<L>>()->body);
          },
          [&](const node::Next<L>& x) {
            return structurally_equal(x.body, b.template as<node::Next<L>>()->body);
          },
          [&](const node::Eventually<L>& x) {
            const auto* y = b.template as<node::Eventually<L>>();
            return x.timeout == y->timeout && structurally_equal(x.body, y->body);
          },
          [&](const node::Always<L>& x) {
            const auto* y = b.template as<node::Always<L>>();
            return x.timeout == y->timeout && structurally_equal(x.body, y->body);
          },
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            const auto* y = b.template as<T>();
            if constexpr (std::is_same_v<T, node::Until<L>> || std::is_same_v<T, node::Release<L>>) {
              if (!(x.timeout == y->timeout)) return false;
            }
            return structurally_equal(x.lhs, y->lhs) && structurally_equal(x.rhs, y->rhs);
          },
      },
      a.node());
}

/// S-expression rendering; consumers print as `(consume@N)` with N the static depth or `*`.
template <class L>
void render(std::ostream& os, const Formula<L>& f) {
  std::visit(detail::Overloaded{
                 [&](const node::Solved<L>& n) { os << to_symbol(n.value); },
                 [&](const node::BindNext<L>& n) {
                   os << "(consume@";
                   if (n.static_depth) {
                     os << *n.static_depth;
                   } else {
                     os << '*';
                   }
                   os << ')';
                 },
                 [&](const node::Not<L>& n) {
                   os << "(not ";
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const node::Next<L>& n) {
                   os << "(next ";
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const node::Eventually<L>& n) {
                   os << "(eventually " << n.timeout.value() << ' ';
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const node::Always<L>& n) {
                   os << "(always " << n.timeout.value() << ' ';
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const auto& n) {
                   using T = std::decay_t<decltype(n)>;
                   if constexpr (std::is_same_v<T, node::And<L>>) os << "(and ";
                   if constexpr (std::is_same_v<T, node::Or<L>>) os << "(or ";
                   if constexpr (std::is_same_v<T, node::Implies<L>>) os << "(implies ";
                   if constexpr (std::is_same_v<T, node::Until<L>>) os << "(until " << n.timeout.value() << ' ';
                   if constexpr (std::is_same_v<T, node::Release<L>>) {
                     os << "(release " << n.timeout.value() << ' ';
                   }
                   render(os, n.lhs);
                   os << ' ';
                   render(os, n.rhs);
                   os << ')';
                 },
             },
             f.node());
}

template <class L>
std::string to_string(const Formula<L>& f) {
  std::ostringstream os;
  render(os, f);
  return os.str();
}

}  // namespace streamtl

#endif  // STREAMTL_FORMULA_HPP_
