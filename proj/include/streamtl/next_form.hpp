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

#ifndef STREAMTL_NEXT_FORM_HPP_
#define STREAMTL_NEXT_FORM_HPP_

#include <algorithm>
#include <cstddef>
#include <vector>

#include "streamtl/errors.hpp"
#include "streamtl/formula.hpp"

namespace streamtl {

// ---------------------------------------------------------------------------------------------
// Constant-folding constructors. Each folds only when an operand is solved; Kleene identities
// (T ∧ x = x, F ∨ x = x, x → F = ¬x, ...) keep the result equivalent to the unfolded node.

namespace fold {

template <class L>
Formula<L> negation(const Formula<L>& a) {
  if (auto v = a.solved_value()) return Formula<L>::solved(truth_not(*v));
  return Formula<L>::negation(a);
}

template <class L>
Formula<L> conj(const Formula<L>& a, const Formula<L>& b) {
  const auto va = a.solved_value();
  const auto vb = b.solved_value();
  if (va && vb) return Formula<L>::solved(truth_and(*va, *vb));
  if (va == Truth::False || vb == Truth::False) return Formula<L>::solved(Truth::False);
  if (va == Truth::True) return b;
  if (vb == Truth::True) return a;
  return Formula<L>::conj(a, b);
}

template <class L>
Formula<L> disj(const Formula<L>& a, const Formula<L>& b) {
  const auto va = a.solved_value();
  const auto vb = b.solved_value();
  if (va && vb) return Formula<L>::solved(truth_or(*va, *vb));
  if (va == Truth::True || vb == Truth::True) return Formula<L>::solved(Truth::True);
  if (va == Truth::False) return b;
  if (vb == Truth::False) return a;
  return Formula<L>::disj(a, b);
}

template <class L>
Formula<L> implication(const Formula<L>& a, const Formula<L>& b) {
  const auto va = a.solved_value();
  const auto vb = b.solved_value();
  if (va && vb) return Formula<L>::solved(truth_implies(*va, *vb));
  if (va == Truth::False || vb == Truth::True) return Formula<L>::solved(Truth::True);
  if (va == Truth::True) return b;
  if (vb == Truth::False) return negation(a);
  return Formula<L>::implication(a, b);
}

}  // namespace fold

/// Bottom-up constant folding over the propositional skeleton (temporal bodies included).
template <class L>
Formula<L> constant_fold(const Formula<L>& f) {
  using F = Formula<L>;
  return std::visit(
      detail::Overloaded{
          [&](const node::Solved<L>&) { return f; },
          [&](const node::BindNext<L>&) { return f; },
          [&](const node::Not<L>& n) { return fold::negation(constant_fold(n.body)); },
          [&](const node::And<L>& n) { return fold::conj(constant_fold(n.lhs), constant_fold(n.rhs)); },
          [&](const node::Or<L>& n) { return fold::disj(constant_fold(n.lhs), constant_fold(n.rhs)); },
          [&](const node::Implies<L>& n) {
            return fold::implication(constant_fold(n.lhs), constant_fold(n.rhs));
          },
          [&](const node::Next<L>& n) {
            // a solved body is position independent
            auto body = constant_fold(n.body);
            return body.is_solved() ? body : F::next(body);
          },
          [&](const node::Eventually<L>& n) {
            auto body = constant_fold(n.body);
            return body.is_solved() ? body : F::eventually(n.timeout, body);
          },
          [&](const node::Always<L>& n) {
            auto body = constant_fold(n.body);
            return body.is_solved() ? body : F::always(n.timeout, body);
          },
          [&](const node::Until<L>& n) { return F::until(n.timeout, constant_fold(n.lhs), constant_fold(n.rhs)); },
          [&](const node::Release<L>& n) {
            return F::release(n.timeout, constant_fold(n.lhs), constant_fold(n.rhs));
          },
      },
      f.node());
}

/// Folds the propositional skeleton above Next/BindNext/temporal leaves; X of a solved formula
/// folds to the formula. Unchanged subtrees keep their identity (and their unfold memo).
template <class L>
Formula<L> fold_skeleton(const Formula<L>& f) {
  return std::visit(
      detail::Overloaded{
          [&](const node::Not<L>& n) {
            auto b = fold_skeleton(n.body);
            return b.is_solved() ? fold::negation(b) : (b.same_node(n.body) ? f : Formula<L>::negation(b));
          },
          [&](const node::Next<L>& n) { return n.body.is_solved() ? n.body : f; },
          [&](const auto& n) -> Formula<L> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::And<L>> || std::is_same_v<T, node::Or<L>> ||
                          std::is_same_v<T, node::Implies<L>>) {
              auto a = fold_skeleton(n.lhs);
              auto b = fold_skeleton(n.rhs);
              if (a.is_solved() || b.is_solved()) {
                if constexpr (std::is_same_v<T, node::And<L>>) return fold::conj(a, b);
                if constexpr (std::is_same_v<T, node::Or<L>>) return fold::disj(a, b);
                if constexpr (std::is_same_v<T, node::Implies<L>>) return fold::implication(a, b);
              }
              if (a.same_node(n.lhs) && b.same_node(n.rhs)) return f;
              return Formula<L>::make(T{a, b});
            } else {
              return f;
            }
          },
      },
      f.node());
}

/// True when no temporal operator occurs outside consumer closures.
template <class L>
bool is_next_form(const Formula<L>& f) {
  return std::visit(detail::Overloaded{
                        [](const node::Solved<L>&) { return true; },
                        [](const node::BindNext<L>&) { return true; },
                        [](const node::Not<L>& n) { return is_next_form(n.body); },
                        [](const node::Next<L>& n) { return is_next_form(n.body); },
                        [](const node::And<L>& n) { return is_next_form(n.lhs) && is_next_form(n.rhs); },
                        [](const node::Or<L>& n) { return is_next_form(n.lhs) && is_next_form(n.rhs); },
                        [](const node::Implies<L>& n) { return is_next_form(n.lhs) && is_next_form(n.rhs); },
                        [](const auto&) { return false; },
                    },
                    f.node());
}

// ---------------------------------------------------------------------------------------------
// Explicit next transformation

namespace detail {

template <class L, class Combine>
Formula<L> chain(std::vector<Formula<L>> items, Combine combine) {
  Formula<L> acc = items.front();
  for (std::size_t k = 1; k < items.size(); ++k) acc = combine(acc, items[k]);
  return acc;
}

// f ∧ X f ∧ ... ∧ X^(count-1) f, empty when count == 0
template <class L>
std::vector<Formula<L>> shifted(const Formula<L>& f, std::size_t count) {
  std::vector<Formula<L>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(next(k, f));
  return out;
}

}  // namespace detail

/// Eager next form. Disjunction/conjunction chains are left-associated; consumer bodies are not
/// entered (they are transformed when the consumer produces them).
template <class L>
Formula<L> nt_explicit(const Formula<L>& f) {
  using F = Formula<L>;
  auto conj_all = [](std::vector<F> items) {
    return detail::chain<L>(std::move(items), [](const F& a, const F& b) { return F::conj(a, b); });
  };
  auto disj_all = [](std::vector<F> items) {
    return detail::chain<L>(std::move(items), [](const F& a, const F& b) { return F::disj(a, b); });
  };
  return std::visit(
      detail::Overloaded{
          [&](const node::Solved<L>&) { return f; },
          [&](const node::BindNext<L>&) { return f; },
          [&](const node::Not<L>& n) { return F::negation(nt_explicit(n.body)); },
          [&](const node::Next<L>& n) { return F::next(nt_explicit(n.body)); },
          [&](const node::And<L>& n) { return F::conj(nt_explicit(n.lhs), nt_explicit(n.rhs)); },
          [&](const node::Or<L>& n) { return F::disj(nt_explicit(n.lhs), nt_explicit(n.rhs)); },
          [&](const node::Implies<L>& n) { return F::implication(nt_explicit(n.lhs), nt_explicit(n.rhs)); },
          [&](const node::Eventually<L>& n) {
            return disj_all(detail::shifted(nt_explicit(n.body), n.timeout.value()));
          },
          [&](const node::Always<L>& n) {
            return conj_all(detail::shifted(nt_explicit(n.body), n.timeout.value()));
          },
          [&](const node::Until<L>& n) {
            const F a = nt_explicit(n.lhs);
            const F b = nt_explicit(n.rhs);
            std::vector<F> disjuncts;
            for (std::size_t k = 0; k < n.timeout.value(); ++k) {
              auto items = detail::shifted(a, k);
              items.push_back(next(k, b));
              disjuncts.push_back(conj_all(std::move(items)));
            }
            return disj_all(std::move(disjuncts));
          },
          [&](const node::Release<L>& n) {
            const F a = nt_explicit(n.lhs);
            const F b = nt_explicit(n.rhs);
            std::vector<F> disjuncts;
            disjuncts.push_back(conj_all(detail::shifted(b, n.timeout.value())));
            for (std::size_t k = 0; k < n.timeout.value(); ++k) {
              auto items = detail::shifted(b, k);
              items.push_back(next(k, F::conj(a, b)));
              disjuncts.push_back(conj_all(std::move(items)));
            }
            return disj_all(std::move(disjuncts));
          },
      },
      f.node());
}

// ---------------------------------------------------------------------------------------------
// Lazy (recursive) next transformation

/// One level of the recursive next transformation, memoized per node.
///
/// The result is in next form at the top: temporal operators reachable without crossing a Next
/// are expanded, and the remainder of a temporal operator is left folded under a Next (e.g.
/// ◇ₜφ becomes nt(φ) ∨ X ◇ₜ₋₁φ) for expansion when that Next is discharged.
template <class L>
Formula<L> nt_unfold(const Formula<L>& f) {
  using F = Formula<L>;
  const auto& impl = f.impl();
  std::call_once(impl.unfold_once, [&] {
    F result = std::visit(
        detail::Overloaded{
            [&](const node::Solved<L>&) { return f; },
            [&](const node::BindNext<L>&) { return f; },
            [&](const node::Next<L>&) { return f; },
            [&](const node::Not<L>& n) {
              F body = nt_unfold(n.body);
              return body.same_node(n.body) ? f : F::negation(body);
            },
            [&](const auto& n) -> F {
              using T = std::decay_t<decltype(n)>;
              if constexpr (std::is_same_v<T, node::And<L>> || std::is_same_v<T, node::Or<L>> ||
                            std::is_same_v<T, node::Implies<L>>) {
                F lhs = nt_unfold(n.lhs);
                F rhs = nt_unfold(n.rhs);
                if (lhs.same_node(n.lhs) && rhs.same_node(n.rhs)) return f;
                return F::make(T{lhs, rhs});
              } else if constexpr (std::is_same_v<T, node::Eventually<L>>) {
                const auto t = n.timeout.value();
                if (t == 1) return nt_unfold(n.body);
                return F::disj(nt_unfold(n.body), F::next(F::eventually(Timeout(t - 1), n.body)));
              } else if constexpr (std::is_same_v<T, node::Always<L>>) {
                const auto t = n.timeout.value();
                if (t == 1) return nt_unfold(n.body);
                return F::conj(nt_unfold(n.body), F::next(F::always(Timeout(t - 1), n.body)));
              } else if constexpr (std::is_same_v<T, node::Until<L>>) {
                const auto t = n.timeout.value();
                if (t == 1) return nt_unfold(n.rhs);
                return F::disj(nt_unfold(n.rhs),
                               F::conj(nt_unfold(n.lhs), F::next(F::until(Timeout(t - 1), n.lhs, n.rhs))));
              } else {
                static_assert(std::is_same_v<T, node::Release<L>>);
                const auto t = n.timeout.value();
                // φ1 R₁ φ2 holds exactly when φ2 does.
                if (t == 1) return nt_unfold(n.rhs);
                return F::disj(F::conj(nt_unfold(n.lhs), nt_unfold(n.rhs)),
                               F::conj(nt_unfold(n.rhs), F::next(F::release(Timeout(t - 1), n.lhs, n.rhs))));
              }
            },
        },
        f.node());
    // a self-reference would keep the node alive forever
    if (!result.same_node(f)) impl.unfolded = result.handle();
  });
  return impl.unfolded ? F::from_handle(impl.unfolded) : f;
}

/// Applies nt_unfold until no temporal operator remains outside consumer closures.
template <class L>
Formula<L> nt_full(const Formula<L>& f) {
  using F = Formula<L>;
  const F top = nt_unfold(f);
  return std::visit(detail::Overloaded{
                        [&](const node::Next<L>& n) { return F::next(nt_full(n.body)); },
                        [&](const node::Not<L>& n) { return F::negation(nt_full(n.body)); },
                        [&](const node::And<L>& n) { return F::conj(nt_full(n.lhs), nt_full(n.rhs)); },
                        [&](const node::Or<L>& n) { return F::disj(nt_full(n.lhs), nt_full(n.rhs)); },
                        [&](const node::Implies<L>& n) {
                          return F::implication(nt_full(n.lhs), nt_full(n.rhs));
                        },
                        [&](const auto&) { return top; },
                    },
                    top.node());
}

// ---------------------------------------------------------------------------------------------
// Letter simplification

/// Consumes one letter: every Next/BindNext at the top of the next form is discharged with
/// `letter` observed at `time`, and the propositional skeleton is folded.
template <class L>
Formula<L> letter_simplify(const Formula<L>& f, const L& letter, TimeMs time) {
  return std::visit(
      detail::Overloaded{
          [&](const node::Solved<L>&) { return f; },
          [&](const node::BindNext<L>& n) { return (*n.consumer)(letter, time); },
          [&](const node::Next<L>& n) { return n.body; },
          [&](const node::Not<L>& n) { return fold::negation(letter_simplify(n.body, letter, time)); },
          [&](const node::And<L>& n) {
            return fold::conj(letter_simplify(n.lhs, letter, time), letter_simplify(n.rhs, letter, time));
          },
          [&](const node::Or<L>& n) {
            return fold::disj(letter_simplify(n.lhs, letter, time), letter_simplify(n.rhs, letter, time));
          },
          [&](const node::Implies<L>& n) {
            return fold::implication(letter_simplify(n.lhs, letter, time),
                                     letter_simplify(n.rhs, letter, time));
          },
          [&](const auto&) { return letter_simplify(nt_unfold(f), letter, time); },
      },
      f.node());
}

/// Simplification with the empty letter: the word has ended. Always yields a solved formula.
template <class L>
Formula<L> letter_simplify_empty(const Formula<L>& f) {
  using F = Formula<L>;
  return std::visit(
      detail::Overloaded{
          [&](const node::Solved<L>&) { return f; },
          [&](const node::BindNext<L>&) { return F::solved(Truth::Inconclusive); },
          [&](const node::Next<L>& n) { return letter_simplify_empty(nt_unfold(n.body)); },
          [&](const node::Not<L>& n) { return fold::negation(letter_simplify_empty(n.body)); },
          [&](const node::And<L>& n) {
            return fold::conj(letter_simplify_empty(n.lhs), letter_simplify_empty(n.rhs));
          },
          [&](const node::Or<L>& n) {
            return fold::disj(letter_simplify_empty(n.lhs), letter_simplify_empty(n.rhs));
          },
          [&](const node::Implies<L>& n) {
            return fold::implication(letter_simplify_empty(n.lhs), letter_simplify_empty(n.rhs));
          },
          [&](const auto&) { return letter_simplify_empty(nt_unfold(f)); },
      },
      f.node());
}

// ---------------------------------------------------------------------------------------------
// Safe word length

/// Number of letters after which the formula is guaranteed to be solved. Throws SwlUndefined
/// when a consumer without a declared depth is reachable.
template <class L>
std::size_t swl(const Formula<L>& f) {
  return std::visit(
      detail::Overloaded{
          [](const node::Solved<L>&) -> std::size_t { return 0; },
          [](const node::BindNext<L>& n) -> std::size_t {
            if (!n.static_depth) throw SwlUndefined("safe word length undefined: consumer without static depth");
            return *n.static_depth;
          },
          [](const node::Not<L>& n) { return swl(n.body); },
          [](const node::Next<L>& n) { return swl(n.body) + 1; },
          [](const node::And<L>& n) { return std::max(swl(n.lhs), swl(n.rhs)); },
          [](const node::Or<L>& n) { return std::max(swl(n.lhs), swl(n.rhs)); },
          [](const node::Implies<L>& n) { return std::max(swl(n.lhs), swl(n.rhs)); },
          [](const node::Eventually<L>& n) { return swl(n.body) + n.timeout.value() - 1; },
          [](const node::Always<L>& n) { return swl(n.body) + n.timeout.value() - 1; },
          [](const node::Until<L>& n) { return std::max(swl(n.lhs), swl(n.rhs)) + n.timeout.value() - 1; },
          [](const node::Release<L>& n) { return std::max(swl(n.lhs), swl(n.rhs)) + n.timeout.value() - 1; },
      },
      f.node());
}

}  // namespace streamtl

#endif  // STREAMTL_NEXT_FORM_HPP_
