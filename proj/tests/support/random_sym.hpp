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

#ifndef STREAMTL_TESTS_SUPPORT_RANDOM_SYM_HPP_
#define STREAMTL_TESTS_SUPPORT_RANDOM_SYM_HPP_

#include <string>
#include <vector>

#include "streamtl/rng.hpp"
#include "streamtl/symbolic/compile.hpp"
#include "streamtl/symbolic/formula.hpp"

namespace testsupport {

using namespace streamtl::sym;

inline const Interpretation& abc_interp() {
  static const Interpretation i = Interpretation::arithmetic({"a", "b", "c"});
  return i;
}

struct SymOptions {
  int depth = 5;
  std::int64_t max_timeout = 4;
  bool negation = true;       // Not and False allowed
  bool time_in_body = true;   // consume bodies may mention o
  bool variable_timeouts = true;
};

namespace detail {

inline Term random_operand(streamtl::Rng& rng, const std::vector<std::string>& vars) {
  static const char* constants[] = {"a", "b", "c"};
  if (!vars.empty() && rng.below(3) != 0) return Term::var(vars[rng.below(vars.size())]);
  return Term::app(constants[rng.below(3)]);
}

inline Sym random_sym(streamtl::Rng& rng, const SymOptions& opt, int depth, std::vector<std::string>& xs,
                      std::vector<std::string>& os, int& fresh) {
  auto leaf = [&]() -> Sym {
    switch (rng.below(opt.negation ? 5 : 4)) {
      case 0:
        return s_true();
      case 1:
        if (!os.empty() && opt.time_in_body && rng.coin())
          return s_pred("even", {Term::var(os[rng.below(os.size())])});
        [[fallthrough]];
      case 2:
      case 3:
        return s_eq(random_operand(rng, xs), random_operand(rng, xs));
      default:
        return s_false();
    }
  };
  if (depth <= 0 || rng.below(6) == 0) return leaf();
  auto sub = [&] { return random_sym(rng, opt, depth - 1, xs, os, fresh); };
  auto timeout = [&]() -> Term {
    if (opt.variable_timeouts && !os.empty() && rng.below(4) == 0)
      return Term::app("plus", {Term::app("mod", {Term::var(os[rng.below(os.size())]), Term::num(3)}), Term::num(1)});
    return Term::num(rng.uniform(1, opt.max_timeout));
  };
  const std::uint64_t kinds = opt.negation ? 11 : 10;
  switch (rng.below(kinds)) {
    case 0:
    case 1: {
      std::string x = "x" + std::to_string(fresh), o = "o" + std::to_string(fresh);
      ++fresh;
      xs.push_back(x);
      if (opt.time_in_body) os.push_back(o);
      Sym body = sub();
      xs.pop_back();
      if (opt.time_in_body) os.pop_back();
      return s_consume(x, o, body);
    }
    case 2:
      return s_and(sub(), sub());
    case 3:
      return s_or(sub(), sub());
    case 4:
      return s_implies(sub(), sub());
    case 5:
      return s_next(sub());
    case 6: {
      auto t = timeout();
      return s_eventually(t, sub());
    }
    case 7: {
      auto t = timeout();
      return s_always(t, sub());
    }
    case 8: {
      auto t = timeout();
      auto a = sub();
      return s_until(t, a, sub());
    }
    case 9: {
      auto t = timeout();
      auto a = sub();
      return s_release(t, a, sub());
    }
    default:
      return s_not(sub());
  }
}

}  // namespace detail

/// Random closed formula over constants a, b, c.
inline Sym random_sym(streamtl::Rng& rng, const SymOptions& opt = {}) {
  std::vector<std::string> xs, os;
  int fresh = 0;
  return detail::random_sym(rng, opt, opt.depth, xs, os, fresh);
}

/// Random word of constants with strictly increasing times.
inline Word random_term_word(streamtl::Rng& rng, std::size_t max_len) {
  static const char* constants[] = {"a", "b", "c"};
  Word u;
  const auto len = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(max_len)));
  streamtl::TimeMs t = 0;
  for (std::size_t k = 0; k < len; ++k) {
    u.push_back({Term::app(constants[rng.below(3)]), t});
    t += rng.uniform(1, 3);
  }
  return u;
}

}  // namespace testsupport

#endif  // STREAMTL_TESTS_SUPPORT_RANDOM_SYM_HPP_
