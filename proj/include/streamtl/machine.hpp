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

#ifndef STREAMTL_MACHINE_HPP_
#define STREAMTL_MACHINE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "streamtl/errors.hpp"
#include "streamtl/formula.hpp"
#include "streamtl/next_form.hpp"

namespace streamtl {

/// One line of a machine trace.
struct TraceStep {
  std::size_t step = 0;             // 1-based letter index; len+1 for the finish pass
  std::optional<TimeMs> time;       // absent for the finish pass
  std::size_t residual_size = 0;    // node count of the formula after the step
  std::optional<Truth> verdict;
  bool finish = false;

  bool operator==(const TraceStep&) const = default;
};

/// Stepwise evaluator: keeps the residual formula in (lazily unfolded) next form and discharges
/// one letter per step. Copies are independent.
template <class L>
class Machine {
 public:
  explicit Machine(Formula<L> f) : current_(fold_skeleton(nt_unfold(std::move(f)))) { capture(); }

  TraceStep step(const L& letter, TimeMs time) {
    if (verdict_) throw ContractViolation("machine already decided");
    current_ = fold_skeleton(nt_unfold(letter_simplify(current_, letter, time)));
    ++consumed_;
    capture();
    return TraceStep{consumed_, time, formula_size(current_), verdict_, false};
  }

  /// Evaluates the remainder against the end of the word. Idempotent once decided.
  Truth finish() {
    if (!verdict_) {
      current_ = letter_simplify_empty(current_);
      capture();
    }
    return *verdict_;
  }

  TraceStep finish_step() {
    finish();
    return TraceStep{consumed_ + 1, std::nullopt, formula_size(current_), verdict_, true};
  }

  const std::optional<Truth>& verdict() const noexcept { return verdict_; }
  bool decided() const noexcept { return verdict_.has_value(); }
  std::size_t consumed() const noexcept { return consumed_; }
  const Formula<L>& current() const noexcept { return current_; }

 private:
  void capture() {
    if (auto v = current_.solved_value()) verdict_ = *v;
  }

  Formula<L> current_;
  std::size_t consumed_ = 0;
  std::optional<Truth> verdict_;
};

/// Runs a machine over a whole word, stopping early when decided, then finishes.
template <class L>
Truth evaluate(std::span<const TimedLetter<L>> u, const Formula<L>& f,
               std::vector<TraceStep>* trace = nullptr) {
  Machine<L> m(f);
  for (const auto& letter : u) {
    if (m.decided()) break;
    auto s = m.step(letter.letter, letter.time);
    if (trace) trace->push_back(s);
  }
  if (!m.decided()) {
    auto s = m.finish_step();
    if (trace) trace->push_back(s);
  }
  return *m.verdict();
}

template <class L>
Truth evaluate(const std::vector<TimedLetter<L>>& u, const Formula<L>& f,
               std::vector<TraceStep>* trace = nullptr) {
  return evaluate(std::span<const TimedLetter<L>>(u), f, trace);
}

}  // namespace streamtl

#endif  // STREAMTL_MACHINE_HPP_
