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

#ifndef STREAMTL_SYMBOLIC_FORMULA_HPP_
#define STREAMTL_SYMBOLIC_FORMULA_HPP_

#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "streamtl/formula.hpp"
#include "streamtl/symbolic/term.hpp"

namespace streamtl::sym {

class SymFormula;

namespace snode {
struct True {};
struct False {};
struct Pred {
  std::string name;
  std::vector<Term> args;
};
struct Eq {
  Term lhs, rhs;
};
struct Not {
  std::shared_ptr<const SymFormula> body;
};
struct Or {
  std::shared_ptr<const SymFormula> lhs, rhs;
};
struct And {
  std::shared_ptr<const SymFormula> lhs, rhs;
};
struct Implies {
  std::shared_ptr<const SymFormula> lhs, rhs;
};
struct Next {
  std::shared_ptr<const SymFormula> body;
};
struct Eventually {
  Term timeout;
  std::shared_ptr<const SymFormula> body;
};
struct Always {
  Term timeout;
  std::shared_ptr<const SymFormula> body;
};
struct Until {
  Term timeout;
  std::shared_ptr<const SymFormula> lhs, rhs;
};
struct Release {
  Term timeout;
  std::shared_ptr<const SymFormula> lhs, rhs;
};
/// λ_x^o. body: binds the current letter to x and its time to o.
struct Consume {
  std::string x, o;
  std::shared_ptr<const SymFormula> body;
};

using Variant = std::variant<True, False, Pred, Eq, Not, Or, And, Implies, Next, Eventually, Always, Until, Release,
                             Consume>;
}  // namespace snode

/// Immutable syntactic formula. Cheap to copy (shared nodes).
class SymFormula {
 public:
  explicit SymFormula(snode::Variant v) : node_(std::move(v)) {}

  const snode::Variant& node() const noexcept { return node_; }
  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&node_);
  }

 private:
  snode::Variant node_;
};

using Sym = std::shared_ptr<const SymFormula>;

inline Sym mk(snode::Variant v) { return std::make_shared<const SymFormula>(std::move(v)); }

inline Sym s_true() { return mk(snode::True{}); }
inline Sym s_false() { return mk(snode::False{}); }
inline Sym s_pred(std::string p, std::vector<Term> args) { return mk(snode::Pred{std::move(p), std::move(args)}); }
inline Sym s_eq(Term a, Term b) { return mk(snode::Eq{std::move(a), std::move(b)}); }
inline Sym s_not(Sym f) { return mk(snode::Not{std::move(f)}); }
inline Sym s_or(Sym a, Sym b) { return mk(snode::Or{std::move(a), std::move(b)}); }
inline Sym s_and(Sym a, Sym b) { return mk(snode::And{std::move(a), std::move(b)}); }
inline Sym s_implies(Sym a, Sym b) { return mk(snode::Implies{std::move(a), std::move(b)}); }
inline Sym s_next(Sym f) { return mk(snode::Next{std::move(f)}); }
inline Sym s_next(std::size_t times, Sym f) {
  for (std::size_t k = 0; k < times; ++k) f = s_next(std::move(f));
  return f;
}
inline Sym s_eventually(Term t, Sym f) { return mk(snode::Eventually{std::move(t), std::move(f)}); }
inline Sym s_always(Term t, Sym f) { return mk(snode::Always{std::move(t), std::move(f)}); }
inline Sym s_until(Term t, Sym a, Sym b) { return mk(snode::Until{std::move(t), std::move(a), std::move(b)}); }
inline Sym s_release(Term t, Sym a, Sym b) { return mk(snode::Release{std::move(t), std::move(a), std::move(b)}); }
inline Sym s_eventually(std::int64_t t, Sym f) { return s_eventually(Term::num(t), std::move(f)); }
inline Sym s_always(std::int64_t t, Sym f) { return s_always(Term::num(t), std::move(f)); }
inline Sym s_until(std::int64_t t, Sym a, Sym b) { return s_until(Term::num(t), std::move(a), std::move(b)); }
inline Sym s_release(std::int64_t t, Sym a, Sym b) { return s_release(Term::num(t), std::move(a), std::move(b)); }
inline Sym s_consume(std::string x, std::string o, Sym body) {
  return mk(snode::Consume{std::move(x), std::move(o), std::move(body)});
}

// ---------------------------------------------------------------------------------------------

/// Free variables, including those occurring in timeouts.
inline void free_vars_into(const Sym& f, std::set<std::string>& out) {
  std::visit(detail::Overloaded{
                 [](const snode::True&) {},
                 [](const snode::False&) {},
                 [&](const snode::Pred& n) {
                   for (const auto& a : n.args) collect_vars(a, out);
                 },
                 [&](const snode::Eq& n) {
                   collect_vars(n.lhs, out);
                   collect_vars(n.rhs, out);
                 },
                 [&](const snode::Not& n) { free_vars_into(n.body, out); },
                 [&](const snode::Next& n) { free_vars_into(n.body, out); },
                 [&](const snode::Eventually& n) {
                   collect_vars(n.timeout, out);
                   free_vars_into(n.body, out);
                 },
                 [&](const snode::Always& n) {
                   collect_vars(n.timeout, out);
                   free_vars_into(n.body, out);
                 },
                 [&](const snode::Until& n) {
                   collect_vars(n.timeout, out);
                   free_vars_into(n.lhs, out);
                   free_vars_into(n.rhs, out);
                 },
                 [&](const snode::Release& n) {
                   collect_vars(n.timeout, out);
                   free_vars_into(n.lhs, out);
                   free_vars_into(n.rhs, out);
                 },
                 [&](const snode::Consume& n) {
                   std::set<std::string> inner;
                   free_vars_into(n.body, inner);
                   inner.erase(n.x);
                   inner.erase(n.o);
                   out.insert(inner.begin(), inner.end());
                 },
                 [&](const auto& n) {
                   free_vars_into(n.lhs, out);
                   free_vars_into(n.rhs, out);
                 },
             },
             f->node());
}

inline std::set<std::string> free_vars(const Sym& f) {
  std::set<std::string> out;
  free_vars_into(f, out);
  return out;
}

inline bool is_closed(const Sym& f) { return free_vars(f).empty(); }

/// φ[x ↦ e] for a closed term e. Occurrences bound by an inner consume are left alone.
inline Sym substitute(const Sym& f, const std::string& x, const Term& e) {
  auto sub = [&](const Term& t) { return sym::substitute(t, x, e); };
  return std::visit(detail::Overloaded{
                        [&](const snode::True&) { return f; },
                        [&](const snode::False&) { return f; },
                        [&](const snode::Pred& n) {
                          std::vector<Term> args;
                          for (const auto& a : n.args) args.push_back(sub(a));
                          return s_pred(n.name, std::move(args));
                        },
                        [&](const snode::Eq& n) { return s_eq(sub(n.lhs), sub(n.rhs)); },
                        [&](const snode::Not& n) { return s_not(substitute(n.body, x, e)); },
                        [&](const snode::Or& n) { return s_or(substitute(n.lhs, x, e), substitute(n.rhs, x, e)); },
                        [&](const snode::And& n) { return s_and(substitute(n.lhs, x, e), substitute(n.rhs, x, e)); },
                        [&](const snode::Implies& n) {
                          return s_implies(substitute(n.lhs, x, e), substitute(n.rhs, x, e));
                        },
                        [&](const snode::Next& n) { return s_next(substitute(n.body, x, e)); },
                        [&](const snode::Eventually& n) { return s_eventually(sub(n.timeout), substitute(n.body, x, e)); },
                        [&](const snode::Always& n) { return s_always(sub(n.timeout), substitute(n.body, x, e)); },
                        [&](const snode::Until& n) {
                          return s_until(sub(n.timeout), substitute(n.lhs, x, e), substitute(n.rhs, x, e));
                        },
                        [&](const snode::Release& n) {
                          return s_release(sub(n.timeout), substitute(n.lhs, x, e), substitute(n.rhs, x, e));
                        },
                        [&](const snode::Consume& n) {
                          if (n.x == x || n.o == x) return f;
                          return s_consume(n.x, n.o, substitute(n.body, x, e));
                        },
                    },
                    f->node());
}

/// Structural equality (binder names included).
inline bool sym_equal(const Sym& a, const Sym& b) {
  if (a == b) return true;
  if (a->node().index() != b->node().index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node());
        if constexpr (std::is_same_v<T, snode::True> || std::is_same_v<T, snode::False>) {
          return true;
        } else if constexpr (std::is_same_v<T, snode::Pred>) {
          return x.name == y.name && x.args == y.args;
        } else if constexpr (std::is_same_v<T, snode::Eq>) {
          return x.lhs == y.lhs && x.rhs == y.rhs;
        } else if constexpr (std::is_same_v<T, snode::Not> || std::is_same_v<T, snode::Next>) {
          return sym_equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, snode::Eventually> || std::is_same_v<T, snode::Always>) {
          return x.timeout == y.timeout && sym_equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, snode::Until> || std::is_same_v<T, snode::Release>) {
          return x.timeout == y.timeout && sym_equal(x.lhs, y.lhs) && sym_equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, snode::Consume>) {
          return x.x == y.x && x.o == y.o && sym_equal(x.body, y.body);
        } else {
          return sym_equal(x.lhs, y.lhs) && sym_equal(x.rhs, y.rhs);
        }
      },
      a->node());
}

/// Timeout value of a closed timeout term. Non-integer or negative values are contract errors.
inline std::int64_t timeout_value(const Term& t, const Interpretation& interp) {
  const Value v = interp.eval(t);
  if (!std::holds_alternative<std::int64_t>(v)) throw ContractViolation("timeout is not a natural: " + to_string(v));
  const auto n = std::get<std::int64_t>(v);
  if (n < 0) throw ContractViolation("negative timeout " + std::to_string(n));
  return n;
}

/// Symbolic one-level unfolding of a temporal node with a closed timeout, following the
/// recursive next transformation (timeouts reaching 0 resolve to ⊥ for ◇/U and ⊤ for □/R).
/// Returns nullptr for non-temporal nodes.
inline Sym unfold_temporal(const Sym& f, const Interpretation& interp) {
  return std::visit(detail::Overloaded{
                        [&](const snode::Eventually& n) -> Sym {
                          const auto t = timeout_value(n.timeout, interp);
                          if (t == 0) return s_false();
                          if (t == 1) return n.body;
                          return s_or(n.body, s_next(s_eventually(t - 1, n.body)));
                        },
                        [&](const snode::Always& n) -> Sym {
                          const auto t = timeout_value(n.timeout, interp);
                          if (t == 0) return s_true();
                          if (t == 1) return n.body;
                          return s_and(n.body, s_next(s_always(t - 1, n.body)));
                        },
                        [&](const snode::Until& n) -> Sym {
                          const auto t = timeout_value(n.timeout, interp);
                          if (t == 0) return s_false();
                          if (t == 1) return n.rhs;
                          return s_or(n.rhs, s_and(n.lhs, s_next(s_until(t - 1, n.lhs, n.rhs))));
                        },
                        [&](const snode::Release& n) -> Sym {
                          const auto t = timeout_value(n.timeout, interp);
                          if (t == 0) return s_true();
                          if (t == 1) return n.rhs;
                          return s_or(s_and(n.lhs, n.rhs), s_and(n.rhs, s_next(s_release(t - 1, n.lhs, n.rhs))));
                        },
                        [](const auto&) -> Sym { return nullptr; },
                    },
                    f->node());
}

// ---------------------------------------------------------------------------------------------
// Printing (S-expression syntax accepted by the parser)

inline void render(std::ostream& os, const Sym& f) {
  auto bin = [&](const char* op, const Sym& a, const Sym& b) {
    os << '(' << op << ' ';
    render(os, a);
    os << ' ';
    render(os, b);
    os << ')';
  };
  std::visit(detail::Overloaded{
                 [&](const snode::True&) { os << "true"; },
                 [&](const snode::False&) { os << "false"; },
                 [&](const snode::Pred& n) {
                   os << "(pred " << n.name;
                   for (const auto& a : n.args) os << ' ' << a;
                   os << ')';
                 },
                 [&](const snode::Eq& n) { os << "(= " << n.lhs << ' ' << n.rhs << ')'; },
                 [&](const snode::Not& n) {
                   os << "(not ";
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const snode::Or& n) { bin("or", n.lhs, n.rhs); },
                 [&](const snode::And& n) { bin("and", n.lhs, n.rhs); },
                 [&](const snode::Implies& n) { bin("implies", n.lhs, n.rhs); },
                 [&](const snode::Next& n) {
                   os << "(next ";
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const snode::Eventually& n) {
                   os << "(eventually " << n.timeout << ' ';
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const snode::Always& n) {
                   os << "(always " << n.timeout << ' ';
                   render(os, n.body);
                   os << ')';
                 },
                 [&](const snode::Until& n) {
                   os << "(until " << n.timeout << ' ';
                   render(os, n.lhs);
                   os << ' ';
                   render(os, n.rhs);
                   os << ')';
                 },
                 [&](const snode::Release& n) {
                   os << "(release " << n.timeout << ' ';
                   render(os, n.lhs);
                   os << ' ';
                   render(os, n.rhs);
                   os << ')';
                 },
                 [&](const snode::Consume& n) {
                   os << "(consume " << n.x << ' ' << n.o << ' ';
                   render(os, n.body);
                   os << ')';
                 },
             },
             f->node());
}

inline std::string to_string(const Sym& f) {
  std::ostringstream os;
  render(os, f);
  return os.str();
}

}  // namespace streamtl::sym

#endif  // STREAMTL_SYMBOLIC_FORMULA_HPP_
