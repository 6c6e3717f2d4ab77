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

#ifndef STREAMTL_SYMBOLIC_TERM_HPP_
#define STREAMTL_SYMBOLIC_TERM_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "streamtl/errors.hpp"

namespace streamtl::sym {

/// First-order term: a variable or a function symbol applied to arguments. Natural-number
/// literals are nullary symbols whose name is a digit string.
struct Term {
  enum class Kind : std::uint8_t { Var, App };

  Kind kind = Kind::App;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string n) { return Term{Kind::Var, std::move(n), {}}; }
  static Term app(std::string f, std::vector<Term> a = {}) { return Term{Kind::App, std::move(f), std::move(a)}; }
  static Term num(std::int64_t n) { return app(std::to_string(n)); }
  /// A batch of elements, used as a letter by the relaxed judge.
  static Term set(std::vector<Term> elements) { return app(std::string(kSetSymbol), std::move(elements)); }

  static constexpr std::string_view kSetSymbol = "{}";

  bool is_var() const noexcept { return kind == Kind::Var; }
  bool is_set() const noexcept { return kind == Kind::App && name == kSetSymbol; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.name <=> b.name; c != 0) return c;
    return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
  }
};

inline bool is_numeral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t k = (s[0] == '-' && s.size() > 1) ? 1 : 0;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(k), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline void render(std::ostream& os, const Term& t) {
  if (t.args.empty()) {
    os << (t.is_set() ? "{}" : t.name);
    return;
  }
  os << '(' << t.name;
  for (const auto& a : t.args) {
    os << ' ';
    render(os, a);
  }
  os << ')';
}

inline std::string to_string(const Term& t) {
  std::ostringstream os;
  render(os, t);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  render(os, t);
  return os;
}

inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

inline Term substitute(const Term& t, const std::string& x, const Term& e) {
  if (t.is_var()) return t.name == x ? e : t;
  Term out{Term::Kind::App, t.name, {}};
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(substitute(a, x, e));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Interpretation structures

/// Domain values: integers for arithmetic, names for the free constants.
using Value = std::variant<std::int64_t, std::string>;

inline std::string to_string(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::string>) {
          return x;
        } else {
          return std::to_string(x);
        }
      },
      v);
}

struct Function {
  std::size_t arity = 0;
  std::function<Value(std::span<const Value>)> apply;
};

struct Predicate {
  std::size_t arity = 0;
  std::function<bool(std::span<const Value>)> holds;
};

/// (D, I): interprets function and predicate symbols. Numerals denote themselves and every
/// declared constant denotes its own name. `constants` also serves as the witness pool for
/// word generation.
struct Interpretation {
  std::map<std::string, Function, std::less<>> functions;
  std::map<std::string, Predicate, std::less<>> predicates;
  std::vector<std::string> constants;

  static Interpretation initial(std::vector<std::string> constants) {
    Interpretation i;
    i.constants = std::move(constants);
    return i;
  }

  /// Integer arithmetic: plus, minus, times, mod; predicates leq, lt, even.
  static Interpretation arithmetic(std::vector<std::string> constants = {}) {
    Interpretation i = initial(std::move(constants));
    auto ints = [](std::span<const Value> a, std::size_t k) {
      if (!std::holds_alternative<std::int64_t>(a[k])) throw ContractViolation("integer expected, got " + to_string(a[k]));
      return std::get<std::int64_t>(a[k]);
    };
    i.functions["plus"] = {2, [=](std::span<const Value> a) -> Value { return ints(a, 0) + ints(a, 1); }};
    i.functions["minus"] = {2, [=](std::span<const Value> a) -> Value { return ints(a, 0) - ints(a, 1); }};
    i.functions["times"] = {2, [=](std::span<const Value> a) -> Value { return ints(a, 0) * ints(a, 1); }};
    i.functions["mod"] = {2, [=](std::span<const Value> a) -> Value {
                            const auto d = ints(a, 1);
                            if (d == 0) throw ContractViolation("mod by zero");
                            return ints(a, 0) % d;
                          }};
    i.predicates["leq"] = {2, [=](std::span<const Value> a) { return ints(a, 0) <= ints(a, 1); }};
    i.predicates["lt"] = {2, [=](std::span<const Value> a) { return ints(a, 0) < ints(a, 1); }};
    i.predicates["even"] = {1, [=](std::span<const Value> a) { return ints(a, 0) % 2 == 0; }};
    return i;
  }

  bool is_constant(std::string_view name) const {
    return std::find(constants.begin(), constants.end(), name) != constants.end();
  }

  /// True when `name` with `arity` arguments denotes a function of this structure.
  bool interprets_function(std::string_view name, std::size_t arity) const {
    if (arity == 0 && (is_numeral(name) || is_constant(name))) return true;
    auto it = functions.find(name);
    return it != functions.end() && it->second.arity == arity;
  }

  bool interprets_predicate(std::string_view name, std::size_t arity) const {
    auto it = predicates.find(name);
    return it != predicates.end() && it->second.arity == arity;
  }

  /// ⟦t⟧ for a closed term.
  Value eval(const Term& t) const {
    if (t.is_var()) throw OpenFormula("free variable " + t.name + " in evaluated term");
    if (t.args.empty()) {
      if (is_numeral(t.name)) return static_cast<std::int64_t>(std::stoll(t.name));
      if (is_constant(t.name)) return t.name;
    }
    auto it = functions.find(t.name);
    if (it == functions.end() || it->second.arity != t.args.size()) throw UninterpretedSymbol(t.name);
    std::vector<Value> vals;
    vals.reserve(t.args.size());
    for (const auto& a : t.args) vals.push_back(eval(a));
    return it->second.apply(vals);
  }

  bool holds(const std::string& p, const std::vector<Term>& args) const {
    auto it = predicates.find(p);
    if (it == predicates.end() || it->second.arity != args.size()) throw UninterpretedSymbol(p);
    std::vector<Value> vals;
    vals.reserve(args.size());
    for (const auto& a : args) vals.push_back(eval(a));
    return it->second.holds(vals);
  }
};

}  // namespace streamtl::sym

#endif  // STREAMTL_SYMBOLIC_TERM_HPP_
