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

#ifndef STREAMTL_TRUTH_HPP_
#define STREAMTL_TRUTH_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace streamtl {

/// Three-valued verdict domain, ordered False < Inconclusive < True.
enum class Truth : std::uint8_t { False = 0, Inconclusive = 1, True = 2 };

inline constexpr std::array<Truth, 3> kAllTruths = {Truth::False, Truth::Inconclusive,
                                                   Truth::True};

enum class Connective : std::uint8_t { Not, And, Or, Implies };

constexpr Truth from_bool(bool b) noexcept { return b ? Truth::True : Truth::False; }

constexpr bool is_definite(Truth v) noexcept { return v != Truth::Inconclusive; }

constexpr Truth truth_not(Truth a) noexcept {
  // reflection through Inconclusive
  return static_cast<Truth>(2 - static_cast<std::uint8_t>(a));
}

constexpr Truth truth_and(Truth a, Truth b) noexcept { return std::min(a, b); }

constexpr Truth truth_or(Truth a, Truth b) noexcept { return std::max(a, b); }

constexpr Truth truth_implies(Truth a, Truth b) noexcept { return truth_or(truth_not(a), b); }

/// Applies a connective; `b` must be present exactly when the connective is binary.
inline Truth apply_connective(Connective op, Truth a, std::optional<Truth> b = std::nullopt) {
  if ((op == Connective::Not) == b.has_value()) {
    throw std::invalid_argument("apply_connective: operand count does not match connective arity");
  }
  switch (op) {
    case Connective::Not:
      return truth_not(a);
    case Connective::And:
      return truth_and(a, *b);
    case Connective::Or:
      return truth_or(a, *b);
    case Connective::Implies:
      return truth_implies(a, *b);
  }
  return Truth::Inconclusive;
}

/// "T", "F" or "?".
constexpr std::string_view to_symbol(Truth v) noexcept {
  switch (v) {
    case Truth::False:
      return "F";
    case Truth::Inconclusive:
      return "?";
    case Truth::True:
      return "T";
  }
  return "?";
}

inline std::optional<Truth> parse_truth(std::string_view s) noexcept {
  if (s == "T") return Truth::True;
  if (s == "F") return Truth::False;
  if (s == "?") return Truth::Inconclusive;
  return std::nullopt;
}

inline std::ostream& operator<<(std::ostream& os, Truth v) { return os << to_symbol(v); }

}  // namespace streamtl

#endif  // STREAMTL_TRUTH_HPP_
