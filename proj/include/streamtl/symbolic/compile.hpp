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

#ifndef STREAMTL_SYMBOLIC_COMPILE_HPP_
#define STREAMTL_SYMBOLIC_COMPILE_HPP_

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "streamtl/formula.hpp"
#include "streamtl/symbolic/formula.hpp"
#include "streamtl/symbolic/term.hpp"

namespace streamtl::sym {

using Letter = TimedLetter<Term>;
using Word = std::vector<Letter>;
using RFormula = Formula<Term>;

namespace detail {

inline void check_term(const Term& t, const Interpretation& interp) {
  if (t.is_var()) return;
  for (const auto& a : t.args) check_term(a, interp);
  if (!interp.interprets_function(t.name, t.args.size())) throw UninterpretedSymbol(t.name);
}

inline void check_symbols(const Sym& f, const Interpretation& interp) {
  std::visit(streamtl::detail::Overloaded{
                 [](const snode::True&) {},
                 [](const snode::False&) {},
                 [&](const snode::Pred& n) {
                   if (!interp.interprets_predicate(n.name, n.args.size())) throw UninterpretedSymbol(n.name);
                   for (const auto& a : n.args) check_term(a, interp);
                 },
                 [&](const snode::Eq& n) {
                   check_term(n.lhs, interp);
                   check_term(n.rhs, interp);
                 },
                 [&](const snode::Not& n) { check_symbols(n.body, interp); },
                 [&](const snode::Next& n) { check_symbols(n.body, interp); },
                 [&](const snode::Consume& n) { check_symbols(n.body, interp); },
                 [&](const snode::Eventually& n) {
                   check_term(n.timeout, interp);
                   check_symbols(n.body, interp);
                 },
                 [&](const snode::Always& n) {
                   check_term(n.timeout, interp);
                   check_symbols(n.body, interp);
                 },
                 [&](const snode::Until& n) {
                   check_term(n.timeout, interp);
                   check_symbols(n.lhs, interp);
                   check_symbols(n.rhs, interp);
                 },
                 [&](const snode::Release& n) {
                   check_term(n.timeout, interp);
                   check_symbols(n.lhs, interp);
                   check_symbols(n.rhs, interp);
                 },
                 [&](const auto& n) {
                   check_symbols(n.lhs, interp);
                   check_symbols(n.rhs, interp);
                 },
             },
             f->node());
}

inline bool has_vars(const Term& t) {
  std::set<std::string> vs;
  collect_vars(t, vs);
  return !vs.empty();
}

}  // namespace detail

/// Safe word length of a symbolic formula; empty when some timeout mentions a variable.
inline std::optional<std::size_t> sym_swl(const Sym& f, const Interpretation& interp) {
  using R = std::optional<std::size_t>;
  auto combine = [](R a, R b) -> R {
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
  };
  auto timed = [&](const Term& t, R inner) -> R {
    if (detail::has_vars(t) || !inner) return std::nullopt;
    const auto n = timeout_value(t, interp);
    if (n == 0) return 0;
    return *inner + static_cast<std::size_t>(n) - 1;
  };
  return std::visit(streamtl::detail::Overloaded{
                        [](const snode::True&) -> R { return 0; },
                        [](const snode::False&) -> R { return 0; },
                        [](const snode::Pred&) -> R { return 0; },
                        [](const snode::Eq&) -> R { return 0; },
                        [&](const snode::Not& n) { return sym_swl(n.body, interp); },
                        [&](const snode::Next& n) -> R {
                          auto b = sym_swl(n.body, interp);
                          return b ? R(*b + 1) : std::nullopt;
                        },
                        [&](const snode::Consume& n) -> R {
                          auto b = sym_swl(n.body, interp);
                          return b ? R(*b + 1) : std::nullopt;
                        },
                        [&](const snode::Eventually& n) { return timed(n.timeout, sym_swl(n.body, interp)); },
                        [&](const snode::Always& n) { return timed(n.timeout, sym_swl(n.body, interp)); },
                        [&](const snode::Until& n) {
                          return timed(n.timeout, combine(sym_swl(n.lhs, interp), sym_swl(n.rhs, interp)));
                        },
                        [&](const snode::Release& n) {
                          return timed(n.timeout, combine(sym_swl(n.lhs, interp), sym_swl(n.rhs, interp)));
                        },
                        [&](const auto& n) { return combine(sym_swl(n.lhs, interp), sym_swl(n.rhs, interp)); },
                    },
                    f->node());
}

namespace detail {

inline RFormula compile_closed(const Sym& f, const std::shared_ptr<const Interpretation>& interp) {
  using F = RFormula;
  auto rec = [&](const Sym& g) { return compile_closed(g, interp); };
  auto timeout = [&](const Term& t) { return timeout_value(t, *interp); };
  return std::visit(
      streamtl::detail::Overloaded{
          [](const snode::True&) { return F::solved(Truth::True); },
          [](const snode::False&) { return F::solved(Truth::False); },
          [&](const snode::Pred& n) { return F::truth(interp->holds(n.name, n.args)); },
          [&](const snode::Eq& n) { return F::truth(interp->eval(n.lhs) == interp->eval(n.rhs)); },
          [&](const snode::Not& n) { return F::negation(rec(n.body)); },
          [&](const snode::Or& n) { return F::disj(rec(n.lhs), rec(n.rhs)); },
          [&](const snode::And& n) { return F::conj(rec(n.lhs), rec(n.rhs)); },
          [&](const snode::Implies& n) { return F::implication(rec(n.lhs), rec(n.rhs)); },
          [&](const snode::Next& n) { return F::next(rec(n.body)); },
          [&](const snode::Eventually& n) {
            const auto t = timeout(n.timeout);
            return t == 0 ? F::solved(Truth::False) : F::eventually(Timeout(static_cast<std::uint32_t>(t)), rec(n.body));
          },
          [&](const snode::Always& n) {
            const auto t = timeout(n.timeout);
            return t == 0 ? F::solved(Truth::True) : F::always(Timeout(static_cast<std::uint32_t>(t)), rec(n.body));
          },
          [&](const snode::Until& n) {
            const auto t = timeout(n.timeout);
            return t == 0 ? F::solved(Truth::False)
                          : F::until(Timeout(static_cast<std::uint32_t>(t)), rec(n.lhs), rec(n.rhs));
          },
          [&](const snode::Release& n) {
            const auto t = timeout(n.timeout);
            return t == 0 ? F::solved(Truth::True)
                          : F::release(Timeout(static_cast<std::uint32_t>(t)), rec(n.lhs), rec(n.rhs));
          },
          [&](const snode::Consume& n) {
            std::optional<std::size_t> depth;
            if (auto b = sym_swl(n.body, *interp)) depth = *b + 1;
            auto body = n.body;
            auto x = n.x;
            auto o = n.o;
            return F::bind_next(
                [body, x, o, interp](const Term& e, TimeMs t) {
                  return compile_closed(substitute(substitute(body, x, e), o, Term::num(t)), interp);
                },
                depth);
          },
      },
      f->node());
}

}  // namespace detail

/// Translates a closed formula into an executable one over timed term letters. Atoms are
/// evaluated through `interp` as soon as they are closed; consume becomes a consumer closure.
inline RFormula compile(const Sym& f, const Interpretation& interp) {
  const auto fv = free_vars(f);
  if (!fv.empty()) {
    std::string names;
    for (const auto& v : fv) names += (names.empty() ? "" : ", ") + v;
    throw OpenFormula("formula has free variables: " + names);
  }
  detail::check_symbols(f, interp);
  return detail::compile_closed(f, std::make_shared<const Interpretation>(interp));
}

// ---------------------------------------------------------------------------------------------
// Symbolic judgment

enum class AtomReading : std::uint8_t {
  Strict,   // letters are terms
  Relaxed,  // letters are set terms; an atom holds if some choice of members satisfies it
};

namespace detail {

inline void collect_sets(const Term& t, std::vector<Term>& out) {
  if (t.is_set()) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& a : t.args) collect_sets(a, out);
}

inline Term replace_term(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  Term out{t.kind, t.name, {}};
  for (const auto& a : t.args) out.args.push_back(replace_term(a, from, to));
  return out;
}

/// ∃ choice of one member per distinct set term such that `check` holds on the rewritten terms.
template <class Check>
bool exists_choice(const std::vector<Term>& terms, const Check& check) {
  std::vector<Term> sets;
  for (const auto& t : terms) collect_sets(t, sets);
  if (sets.empty()) return check(terms);
  for (const auto& s : sets)
    if (s.args.empty()) return false;
  std::vector<std::size_t> idx(sets.size(), 0);
  while (true) {
    std::vector<Term> chosen = terms;
    for (std::size_t k = 0; k < sets.size(); ++k)
      for (auto& c : chosen) c = replace_term(c, sets[k], sets[k].args[idx[k]]);
    if (check(chosen)) return true;
    std::size_t k = 0;
    while (k < sets.size() && ++idx[k] == sets[k].args.size()) idx[k++] = 0;
    if (k == sets.size()) return false;
  }
}

}  // namespace detail

/// (u, i ⊨ φ : v) for symbolic formulas, by substitution. Same clauses as the runtime judge.
inline Truth sym_judge(std::span<const Letter> u, std::size_t i, const Sym& f, const Interpretation& interp,
                       AtomReading reading = AtomReading::Strict) {
  auto at = [&](std::size_t k, const Sym& g) { return sym_judge(u, k, g, interp, reading); };
  auto window = [&](std::int64_t t, const Sym& g) {
    std::vector<Truth> out;
    for (std::size_t k = i; k < i + static_cast<std::size_t>(t); ++k) out.push_back(at(k, g));
    return out;
  };
  auto atom = [&](const std::vector<Term>& terms, auto check) {
    if (reading == AtomReading::Strict) return from_bool(check(terms));
    return from_bool(detail::exists_choice(terms, check));
  };
  return std::visit(
      streamtl::detail::Overloaded{
          [](const snode::True&) { return Truth::True; },
          [](const snode::False&) { return Truth::False; },
          [&](const snode::Pred& n) {
            return atom(n.args, [&](const std::vector<Term>& ts) { return interp.holds(n.name, ts); });
          },
          [&](const snode::Eq& n) {
            return atom({n.lhs, n.rhs},
                        [&](const std::vector<Term>& ts) { return interp.eval(ts[0]) == interp.eval(ts[1]); });
          },
          [&](const snode::Not& n) { return truth_not(at(i, n.body)); },
          [&](const snode::Or& n) { return truth_or(at(i, n.lhs), at(i, n.rhs)); },
          [&](const snode::And& n) { return truth_and(at(i, n.lhs), at(i, n.rhs)); },
          [&](const snode::Implies& n) { return truth_implies(at(i, n.lhs), at(i, n.rhs)); },
          [&](const snode::Next& n) { return at(i + 1, n.body); },
          [&](const snode::Consume& n) {
            if (i > u.size()) return Truth::Inconclusive;
            const auto& l = u[i - 1];
            return at(i + 1, substitute(substitute(n.body, n.x, l.letter), n.o, Term::num(l.time)));
          },
          [&](const snode::Eventually& n) {
            bool all_false = true;
            for (Truth v : window(timeout_value(n.timeout, interp), n.body)) {
              if (v == Truth::True) return Truth::True;
              all_false = all_false && v == Truth::False;
            }
            return all_false ? Truth::False : Truth::Inconclusive;
          },
          [&](const snode::Always& n) {
            bool all_true = true;
            for (Truth v : window(timeout_value(n.timeout, interp), n.body)) {
              if (v == Truth::False) return Truth::False;
              all_true = all_true && v == Truth::True;
            }
            return all_true ? Truth::True : Truth::Inconclusive;
          },
          [&](const snode::Until& n) {
            const auto t = timeout_value(n.timeout, interp);
            const auto a = window(t, n.lhs);
            const auto b = window(t, n.rhs);
            for (std::size_t k = 0; k < b.size(); ++k) {
              if (b[k] == Truth::True) return Truth::True;
              if (a[k] != Truth::True) break;
            }
            for (std::size_t k = 0; k < b.size(); ++k) {
              if (b[k] != Truth::False) break;
              if (a[k] == Truth::False) return Truth::False;
            }
            return std::all_of(b.begin(), b.end(), [](Truth v) { return v == Truth::False; }) ? Truth::False
                                                                                              : Truth::Inconclusive;
          },
          [&](const snode::Release& n) {
            const auto t = timeout_value(n.timeout, interp);
            const auto a = window(t, n.lhs);
            const auto b = window(t, n.rhs);
            for (std::size_t k = 0; k < b.size(); ++k) {
              if (b[k] != Truth::True) break;
              if (a[k] == Truth::True) return Truth::True;
            }
            if (std::all_of(b.begin(), b.end(), [](Truth v) { return v == Truth::True; })) return Truth::True;
            for (std::size_t k = 0; k < b.size(); ++k) {
              if (b[k] == Truth::False) return Truth::False;
              if (a[k] != Truth::False) break;
            }
            return Truth::Inconclusive;
          },
      },
      f->node());
}

inline Truth sym_models(const Word& u, const Sym& f, const Interpretation& interp) {
  return sym_judge(u, 1, f, interp, AtomReading::Strict);
}

/// Judges over a word of batches (each letter a set term).
inline Truth relaxed_judge(const Sym& f, const Word& u, const Interpretation& interp) {
  return sym_judge(u, 1, f, interp, AtomReading::Relaxed);
}

/// Batches paired with timestamps 0, 1, 2, ... as set-term letters.
inline Word batch_word(const std::vector<std::vector<Term>>& batches, TimeMs start = 0, TimeMs interval = 1) {
  Word u;
  u.reserve(batches.size());
  for (std::size_t k = 0; k < batches.size(); ++k)
    u.push_back(Letter{Term::set(batches[k]), start + static_cast<TimeMs>(k) * interval});
  return u;
}

}  // namespace streamtl::sym

#endif  // STREAMTL_SYMBOLIC_COMPILE_HPP_
