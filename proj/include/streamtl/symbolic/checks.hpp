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

#ifndef STREAMTL_SYMBOLIC_CHECKS_HPP_
#define STREAMTL_SYMBOLIC_CHECKS_HPP_

// Check files: a sequence of
//   (interpretation initial C...)     constants only
//   (interpretation arithmetic C...)  integers with plus/minus/times/mod, leq/lt/even
//   (check EXPECTED FORMULA WORD)     EXPECTED is T, F or ?
// Each check uses the most recent interpretation directive.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "streamtl/errors.hpp"
#include "streamtl/symbolic/sexpr.hpp"

namespace streamtl::sym {

struct Check {
  Truth expected = Truth::Inconclusive;
  Sym formula;
  Word word;
  std::shared_ptr<const Interpretation> interpretation;
  std::string source;  // the formula as written
};

inline Interpretation interpretation_from_sexpr(const SExpr& e) {
  if (e.items.size() < 2 || e.items[1].is_list) throw ParseError("interpretation needs a kind");
  std::vector<std::string> constants;
  for (std::size_t k = 2; k < e.items.size(); ++k) {
    if (e.items[k].is_list) throw ParseError("constants must be symbols");
    constants.push_back(e.items[k].atom);
  }
  const std::string& kind = e.items[1].atom;
  if (kind == "initial") return Interpretation::initial(std::move(constants));
  if (kind == "arithmetic") return Interpretation::arithmetic(std::move(constants));
  throw ParseError("unknown interpretation kind " + kind);
}

inline std::vector<Check> parse_checks(std::string_view text) {
  std::vector<Check> out;
  auto interp = std::make_shared<const Interpretation>(Interpretation::initial({}));
  for (const SExpr& e : parse_sexprs(text)) {
    if (!e.is_list || e.items.empty() || e.items[0].is_list) throw ParseError("expected a directive");
    const std::string& head = e.items[0].atom;
    if (head == "interpretation") {
      interp = std::make_shared<const Interpretation>(interpretation_from_sexpr(e));
    } else if (head == "check") {
      if (e.items.size() != 4 || e.items[1].is_list) throw ParseError("check expects EXPECTED FORMULA WORD");
      Check c;
      auto expected = parse_truth(e.items[1].atom);
      if (!expected) throw ParseError("expected verdict must be T, F or ?: " + e.items[1].atom);
      c.expected = *expected;
      c.formula = formula_from_sexpr(e.items[2]);
      c.word = word_from_sexpr(e.items[3]);
      c.interpretation = interp;
      c.source = to_string(c.formula);
      out.push_back(std::move(c));
    } else {
      throw ParseError("unknown directive " + head);
    }
  }
  return out;
}

inline std::vector<Check> load_checks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checks(buf.str());
}

}  // namespace streamtl::sym

#endif  // STREAMTL_SYMBOLIC_CHECKS_HPP_
