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

#ifndef STREAMTL_HARNESS_HARNESS_HPP_
#define STREAMTL_HARNESS_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "streamtl/errors.hpp"
#include "streamtl/formula.hpp"
#include "streamtl/gen/generators.hpp"
#include "streamtl/harness/transformation.hpp"
#include "streamtl/judge.hpp"
#include "streamtl/machine.hpp"
#include "streamtl/rng.hpp"

namespace streamtl::harness {

using gen::GenFn;
using gen::StreamPrefix;
using Json = nlohmann::ordered_json;

/// The letter observed at one instant: generated input, computed output, and time.
template <class I, class O>
struct IoLetter {
  Batch<I> input;
  Batch<O> output;
  TimeMs time = 0;
};

template <class I, class O>
using IoFormula = Formula<IoLetter<I, O>>;

struct HarnessConfig {
  std::int64_t batch_interval_ms = 100;
  std::int64_t start_time_ms = 0;
  std::size_t min_tests_ok = 100;
  std::uint64_t seed = 0;
  std::size_t parallelism = 1;
  bool oracle_crosscheck = false;
  bool wall_clock_start = false;  // take start_time_ms from the system clock
  std::size_t size_hint = gen::kDefaultSize;

  void validate() const {
    if (batch_interval_ms <= 0) throw ContractViolation("batch_interval_ms must be positive");
    if (start_time_ms < 0) throw ContractViolation("start_time_ms must be non-negative");
    if (min_tests_ok == 0) throw ContractViolation("min_tests_ok must be positive");
    if (parallelism == 0) throw ContractViolation("parallelism must be positive");
  }
};

/// Timestamp of the i-th instant (1-based).
inline TimeMs time_of(std::size_t i, const HarnessConfig& cfg) {
  if (i == 0) throw ContractViolation("instants are 1-based");
  return cfg.start_time_ms + static_cast<TimeMs>(i - 1) * cfg.batch_interval_ms;
}

/// Seed of the k-th test case.
inline std::uint64_t case_seed(std::uint64_t seed, std::size_t k) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k) + 1));
}

struct CaseResult {
  Truth verdict = Truth::Inconclusive;
  std::vector<TraceStep> trace;
  std::optional<std::string> error;  // transformation failure or oracle disagreement
};

/// Executes one test case: feeds the prefix through the transformation and the machine, stopping
/// as soon as the formula is solved.
template <class I, class O>
CaseResult run_test_case(const StreamPrefix<I>& prefix, const Transformation<I, O>& subject,
                         const IoFormula<I, O>& phi, const HarnessConfig& cfg) {
  CaseResult r;
  try {
    Machine<IoLetter<I, O>> m(phi);
    auto step = subject.start();
    for (std::size_t i = 1; i <= prefix.size() && !m.decided(); ++i) {
      const TimeMs t = time_of(i, cfg);
      IoLetter<I, O> letter{prefix[i - 1], step(prefix[i - 1], t), t};
      r.trace.push_back(m.step(letter, t));
    }
    if (!m.decided()) r.trace.push_back(m.finish_step());
    r.verdict = *m.verdict();

    if (cfg.oracle_crosscheck) {
      std::vector<TimedLetter<IoLetter<I, O>>> word;
      auto full = subject.start();
      for (std::size_t i = 1; i <= prefix.size(); ++i) {
        const TimeMs t = time_of(i, cfg);
        word.push_back({IoLetter<I, O>{prefix[i - 1], full(prefix[i - 1], t), t}, t});
      }
      const Truth reference = judge(word, 1, phi);
      if (reference != r.verdict)
        r.error = "oracle mismatch: machine " + std::string(to_symbol(r.verdict)) + ", reference " +
                  std::string(to_symbol(reference));
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Reports

struct Counterexample {
  std::size_t case_index = 0;
  Json prefix = Json::array();  // one array of elements per batch
  std::vector<TraceStep> trace;
  std::optional<std::size_t> failing_step;

  bool operator==(const Counterexample&) const = default;
};

struct CaseError {
  std::size_t case_index = 0;
  std::string message;
  Json prefix = Json::array();

  bool operator==(const CaseError&) const = default;
};

struct PropertyReport {
  std::string property;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t inconclusive = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
  std::optional<Counterexample> counterexample;
  std::optional<CaseError> first_error;

  bool ok() const noexcept { return failed == 0 && errors == 0; }
  double inconclusive_ratio() const noexcept {
    return cases == 0 ? 0.0 : static_cast<double>(inconclusive) / static_cast<double>(cases);
  }

  bool operator==(const PropertyReport&) const = default;
};

inline Json trace_to_json(const std::vector<TraceStep>& trace) {
  Json out = Json::array();
  for (const auto& s : trace) {
    Json j;
    j["step"] = s.step;
    if (s.finish) j["finish"] = true;
    if (s.time) j["time_ms"] = *s.time;
    if (s.verdict) j["verdict"] = std::string(to_symbol(*s.verdict));
    j["residual_size"] = s.residual_size;
    out.push_back(std::move(j));
  }
  return out;
}

inline std::vector<TraceStep> trace_from_json(const Json& j) {
  std::vector<TraceStep> out;
  for (const auto& e : j) {
    TraceStep s;
    s.step = e.at("step").get<std::size_t>();
    s.finish = e.value("finish", false);
    if (e.contains("time_ms")) s.time = e.at("time_ms").get<TimeMs>();
    s.residual_size = e.value("residual_size", std::size_t{0});
    if (e.contains("verdict")) {
      auto v = parse_truth(e.at("verdict").get<std::string>());
      if (!v) throw ParseError("bad verdict in trace");
      s.verdict = *v;
    }
    out.push_back(s);
  }
  return out;
}

inline Json to_json(const PropertyReport& r) {
  Json j;
  j["property"] = r.property;
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  j["passed"] = r.passed;
  j["inconclusive"] = r.inconclusive;
  j["failed"] = r.failed;
  j["errors"] = r.errors;
  if (r.counterexample) {
    Json c;
    c["case_index"] = r.counterexample->case_index;
    c["prefix"] = r.counterexample->prefix;
    c["trace"] = trace_to_json(r.counterexample->trace);
    if (r.counterexample->failing_step) c["failing_step"] = *r.counterexample->failing_step;
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  if (r.first_error) {
    Json e;
    e["case_index"] = r.first_error->case_index;
    e["message"] = r.first_error->message;
    e["prefix"] = r.first_error->prefix;
    j["first_error"] = std::move(e);
  }
  return j;
}

inline PropertyReport report_from_json(const Json& j) {
  PropertyReport r;
  r.property = j.at("property").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.cases = j.at("cases").get<std::size_t>();
  r.passed = j.at("passed").get<std::size_t>();
  r.inconclusive = j.at("inconclusive").get<std::size_t>();
  r.failed = j.at("failed").get<std::size_t>();
  r.errors = j.at("errors").get<std::size_t>();
  if (j.contains("counterexample") && !j.at("counterexample").is_null()) {
    const Json& c = j.at("counterexample");
    Counterexample cx;
    cx.case_index = c.at("case_index").get<std::size_t>();
    cx.prefix = c.at("prefix");
    cx.trace = trace_from_json(c.at("trace"));
    if (c.contains("failing_step")) cx.failing_step = c.at("failing_step").get<std::size_t>();
    r.counterexample = std::move(cx);
  }
  if (j.contains("first_error")) {
    const Json& e = j.at("first_error");
    r.first_error = CaseError{e.at("case_index").get<std::size_t>(), e.at("message").get<std::string>(),
                              e.value("prefix", Json::array())};
  }
  return r;
}

template <class E>
Json prefix_to_json(const StreamPrefix<E>& p) {
  Json out = Json::array();
  for (const auto& b : p.batches) {
    Json batch = Json::array();
    for (const auto& e : b) batch.push_back(e);
    out.push_back(std::move(batch));
  }
  return out;
}

/// Called once per executed case, in case order.
template <class I>
using CaseObserver = std::function<void(std::size_t, const StreamPrefix<I>&, const CaseResult&)>;

/// Tries to refute φ: generates prefixes until min_tests_ok cases end without refutation, or one
/// ends with verdict False or an error. The report depends only on the seed and configuration;
/// parallel runs evaluate cases concurrently but tally them in case order.
template <class I, class O>
PropertyReport for_all_stream(const std::string& property, const GenFn<StreamPrefix<I>>& generator,
                              const Transformation<I, O>& subject, const IoFormula<I, O>& phi,
                              HarnessConfig cfg, const CaseObserver<I>& observer = {}) {
  cfg.validate();
  if (cfg.wall_clock_start) {
    cfg.start_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count();
  }
  const std::size_t n = cfg.min_tests_ok;

  struct Slot {
    StreamPrefix<I> prefix;
    CaseResult result;
    bool done = false;
  };
  std::vector<Slot> slots(n);
  std::atomic<std::size_t> stop_at{n};  // lowest refuting case index seen so far
  std::atomic<std::size_t> next_case{0};

  auto run_case = [&](std::size_t k) {
    Slot& s = slots[k];
    try {
      Rng rng(case_seed(cfg.seed, k));
      s.prefix = generator(rng, cfg.size_hint);
      s.result = run_test_case(s.prefix, subject, phi, cfg);
    } catch (const std::exception& e) {
      s.result = CaseResult{Truth::Inconclusive, {}, std::string("generator: ") + e.what()};
    }
    s.done = true;
    if (s.result.error || s.result.verdict == Truth::False) {
      std::size_t cur = stop_at.load();
      while (k < cur && !stop_at.compare_exchange_weak(cur, k)) {
      }
    }
  };
  auto worker = [&] {
    for (std::size_t k = next_case++; k < n; k = next_case++) {
      if (k > stop_at.load()) break;  // cases follow a known refutation
      run_case(k);
    }
  };

  if (cfg.parallelism <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t workers = std::min(cfg.parallelism, n);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  PropertyReport report;
  report.property = property;
  report.seed = cfg.seed;
  for (std::size_t k = 0; k < n; ++k) {
    const Slot& s = slots[k];
    if (!s.done) break;
    ++report.cases;
    if (observer) observer(k, s.prefix, s.result);
    if (s.result.error) {
      ++report.errors;
      report.first_error = CaseError{k, *s.result.error, prefix_to_json(s.prefix)};
      break;
    }
    if (s.result.verdict == Truth::False) {
      ++report.failed;
      Counterexample cx;
      cx.case_index = k;
      cx.prefix = prefix_to_json(s.prefix);
      cx.trace = s.result.trace;
      if (!s.result.trace.empty()) cx.failing_step = s.result.trace.back().step;
      report.counterexample = std::move(cx);
      break;
    }
    if (s.result.verdict == Truth::True) {
      ++report.passed;
    } else {
      ++report.inconclusive;
    }
  }
  return report;
}

}  // namespace streamtl::harness

#endif  // STREAMTL_HARNESS_HARNESS_HPP_
