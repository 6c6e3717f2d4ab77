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

#ifndef STREAMTL_ERRORS_HPP_
#define STREAMTL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace streamtl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Safe word length requested for a formula with a consumer of unknown depth.
class SwlUndefined : public Error {
 public:
  using Error::Error;
};

/// An API precondition was violated (e.g. stepping a decided machine).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class UninterpretedSymbol : public Error {
 public:
  explicit UninterpretedSymbol(const std::string& symbol)
      : Error("uninterpreted symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

class OpenFormula : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace streamtl

#endif  // STREAMTL_ERRORS_HPP_
