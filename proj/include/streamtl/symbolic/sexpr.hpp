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

#ifndef STREAMTL_SYMBOLIC_SEXPR_HPP_
#define STREAMTL_SYMBOLIC_SEXPR_HPP_

// Text syntax for symbolic formulas and words.
//
//   formula := true | false | (pred P term...) | (= term term) | (not f) | (or f f) | (and f f)
//            | (implies f f) | (next f) | (eventually T f) | (always T f) | (until T f f)
//            | (release T f f) | (consume X O f)
//   term    := SYMBOL | (F term...)        a symbol bound by an enclosing consume is a variable
//   word    := ((term time)...)
//
// Comments run from ';' to the end of the line.

#include <cctype>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "streamtl/errors.hpp"
#include "streamtl/symbolic/compile.hpp"
#include "streamtl/symbolic/formula.hpp"

namespace streamtl::sym {

/// Generic S-expression tree.
struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> items;
  bool is_list = false;
};

namespace detail {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  SExpr parse() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] == '(') {
      ++pos_;
      SExpr list;
      list.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) fail("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(parse());
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != ';')
      ++pos_;
    return SExpr{std::string(text_.substr(start, pos_ - start)), {}, false};
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string show(const SExpr& e) {
  if (!e.is_list) return e.atom;
  std::string out = "(";
  for (std::size_t k = 0; k < e.items.size(); ++k) out += (k ? " " : "") + show(e.items[k]);
  return out + ")";
}

inline Term to_term(const SExpr& e, const std::set<std::string>& bound) {
  if (!e.is_list) {
    if (e.atom == "{}") return Term::set({});
    return bound.count(e.atom) ? Term::var(e.atom) : Term::app(e.atom);
  }
  if (e.items.empty() || e.items[0].is_list) throw ParseError("bad term " + show(e));
  std::vector<Term> args;
  for (std::size_t k = 1; k < e.items.size(); ++k) args.push_back(to_term(e.items[k], bound));
  return Term::app(e.items[0].atom, std::move(args));
}

inline Sym to_formula(const SExpr& e, std::set<std::string>& bound) {
  if (!e.is_list) {
    if (e.atom == "true") return s_true();
    if (e.atom == "false") return s_false();
    throw ParseError("bad formula " + e.atom);
  }
  if (e.items.empty() || e.items[0].is_list) throw ParseError("bad formula " + show(e));
  const std::string& op = e.items[0].atom;
  const std::size_t n = e.items.size() - 1;
  auto arity = [&](std::size_t want) {
    if (n != want) throw ParseError(op + " expects " + std::to_string(want) + " arguments: " + show(e));
  };
  auto sub = [&](std::size_t k) { return to_formula(e.items[k], bound); };
  auto term = [&](std::size_t k) { return to_term(e.items[k], bound); };
  if (op == "pred") {
    if (n < 1 || e.items[1].is_list) throw ParseError("bad predicate " + show(e));
    std::vector<Term> args;
    for (std::size_t k = 2; k <= n; ++k) args.push_back(term(k));
    return s_pred(e.items[1].atom, std::move(args));
  }
  if (op == "=") return arity(2), s_eq(term(1), term(2));
  if (op == "not") return arity(1), s_not(sub(1));
  if (op == "or") return arity(2), s_or(sub(1), sub(2));
  if (op == "and") return arity(2), s_and(sub(1), sub(2));
  if (op == "implies") return arity(2), s_implies(sub(1), sub(2));
  if (op == "next") return arity(1), s_next(sub(1));
  if (op == "eventually") return arity(2), s_eventually(term(1), sub(2));
  if (op == "always") return arity(2), s_always(term(1), sub(2));
  if (op == "until") return arity(3), s_until(term(1), sub(2), sub(3));
  if (op == "release") return arity(3), s_release(term(1), sub(2), sub(3));
  if (op == "consume") {
    arity(3);
    if (e.items[1].is_list || e.items[2].is_list) throw ParseError("consume binders must be symbols: " + show(e));
    const std::string x = e.items[1].atom;
    const std::string o = e.items[2].atom;
    std::set<std::string> saved = bound;
    bound.insert(x);
    bound.insert(o);
    Sym body = sub(3);
    bound = std::move(saved);
    return s_consume(x, o, std::move(body));
  }
  throw ParseError("unknown operator " + op);
}

}  // namespace detail

inline SExpr parse_sexpr(std::string_view text) {
  detail::Lexer lex(text);
  SExpr e = lex.parse();
  if (!lex.at_end()) throw ParseError("trailing input");
  return e;
}

/// All top-level S-expressions in `text`.
inline std::vector<SExpr> parse_sexprs(std::string_view text) {
  detail::Lexer lex(text);
  std::vector<SExpr> out;
  while (!lex.at_end()) out.push_back(lex.parse());
  return out;
}

inline Sym formula_from_sexpr(const SExpr& e) {
  std::set<std::string> bound;
  return detail::to_formula(e, bound);
}

inline Sym parse_formula(std::string_view text) { return formula_from_sexpr(parse_sexpr(text)); }

inline Term parse_term(std::string_view text) { return detail::to_term(parse_sexpr(text), {}); }

inline Word word_from_sexpr(const SExpr& e) {
  if (!e.is_list) throw ParseError("word must be a list");
  Word u;
  for (const auto& item : e.items) {
    if (!item.is_list || item.items.size() != 2 || item.items[1].is_list)
      throw ParseError("letter must be (term time): " + detail::show(item));
    const std::string& t = item.items[1].atom;
    if (!is_numeral(t)) throw ParseError("bad timestamp " + t);
    u.push_back(Letter{detail::to_term(item.items[0], {}), std::stoll(t)});
  }
  return u;
}

inline Word parse_word(std::string_view text) { return word_from_sexpr(parse_sexpr(text)); }

inline std::string word_to_string(const Word& u) {
  std::string out = "(";
  for (std::size_t k = 0; k < u.size(); ++k)
    out += (k ? " (" : "(") + to_string(u[k].letter) + " " + std::to_string(u[k].time) + ")";
  return out + ")";
}

}  // namespace streamtl::sym

#endif  // STREAMTL_SYMBOLIC_SEXPR_HPP_
