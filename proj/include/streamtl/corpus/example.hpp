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

#ifndef STREAMTL_CORPUS_EXAMPLE_HPP_
#define STREAMTL_CORPUS_EXAMPLE_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "streamtl/gen/generators.hpp"
#include "streamtl/harness/harness.hpp"
#include "streamtl/harness/transformation.hpp"

namespace streamtl::corpus {

enum class Expected { Pass, Fail };

inline const char* to_string(Expected e) { return e == Expected::Pass ? "pass" : "fail"; }

/// A property ready for for_all_stream.
template <class I, class O>
struct Property {
  gen::GenFn<gen::StreamPrefix<I>> generator;
  harness::Transformation<I, O> subject;
  harness::IoFormula<I, O> formula;
};

/// Sees every executed case in order, with its prefix already serialized.
using TraceObserver = std::function<void(std::size_t, const harness::Json&, const harness::CaseResult&)>;

struct Example {
  std::string name;
  std::string description;
  Expected expected = Expected::Pass;
  std::size_t default_min_tests = 20;
  std::function<harness::PropertyReport(const harness::HarnessConfig&, const TraceObserver&)> run;
};

template <class I, class O>
Example make_example(std::string name, std::string description, Expected expected, std::size_t min_tests,
                     Property<I, O> p) {
  Example ex{name, std::move(description), expected, min_tests, {}};
  ex.run = [name, p = std::move(p)](const harness::HarnessConfig& cfg, const TraceObserver& obs) {
    harness::CaseObserver<I> inner;
    if (obs) {
      inner = [&obs](std::size_t k, const gen::StreamPrefix<I>& prefix, const harness::CaseResult& r) {
        obs(k, harness::prefix_to_json(prefix), r);
      };
    }
    return harness::for_all_stream(name, p.generator, p.subject, p.formula, cfg, inner);
  };
  return ex;
}

/// True iff the report shows the outcome the example is expected to have.
inline bool outcome_matches(const Example& ex, const harness::PropertyReport& r) {
  if (ex.expected == Expected::Pass) return r.ok();
  return r.failed > 0 && r.errors == 0;
}

}  // namespace streamtl::corpus

#endif  // STREAMTL_CORPUS_EXAMPLE_HPP_
