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

// streamtl: runs the bundled example properties and symbolic check files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "streamtl/corpus/registry.hpp"
#include "streamtl/machine.hpp"
#include "streamtl/symbolic/checks.hpp"
#include "streamtl/symbolic/compile.hpp"

namespace {

using namespace streamtl;
using harness::Json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct RunOptions {
  std::vector<std::string> targets;
  std::uint64_t seed = 0;
  std::optional<std::size_t> min_tests;
  std::int64_t batch_interval_ms = 100;
  std::size_t parallelism = 1;
  bool oracle = false;
  bool verbose = false;
  std::optional<double> inconclusive_warn;
  std::string json_path;
};

void print_trace(std::ostream& os, const std::vector<TraceStep>& trace) {
  for (const auto& s : trace) {
    os << "    step " << s.step;
    if (s.finish) {
      os << " (end of prefix)";
    } else {
      os << " t=" << *s.time << "ms";
    }
    os << " residual=" << s.residual_size;
    if (s.verdict) os << " verdict=" << *s.verdict;
    os << "\n";
  }
}

void print_summary(std::ostream& os, const corpus::Example& ex, const harness::PropertyReport& r, bool matched) {
  os << ex.name << ": expected " << corpus::to_string(ex.expected) << ", observed " << (r.ok() ? "pass" : "fail")
     << " [" << (matched ? "OK" : "MISMATCH") << "]\n"
     << "  cases=" << r.cases << " passed=" << r.passed << " inconclusive=" << r.inconclusive << " failed=" << r.failed
     << " errors=" << r.errors << "\n";
  if (r.counterexample) {
    os << "  counterexample: case " << r.counterexample->case_index << ", " << r.counterexample->prefix.size()
       << " batches";
    if (r.counterexample->failing_step) os << ", refuted at step " << *r.counterexample->failing_step;
    os << "\n";
  }
  if (r.first_error) os << "  error in case " << r.first_error->case_index << ": " << r.first_error->message << "\n";
}

int run_examples(const RunOptions& opt) {
  std::vector<const corpus::Example*> selected;
  for (const auto& t : opt.targets) {
    if (t == "all") {
      for (const auto& ex : corpus::examples()) selected.push_back(&ex);
      continue;
    }
    const corpus::Example* ex = corpus::find_example(t);
    if (!ex) {
      std::cerr << "unknown example: " << t << " (see `streamtl list`)\n";
      return kUsage;
    }
    selected.push_back(ex);
  }

  Json reports = Json::array();
  bool all_matched = true;
  for (const corpus::Example* ex : selected) {
    harness::HarnessConfig cfg;
    cfg.seed = opt.seed;
    cfg.min_tests_ok = opt.min_tests.value_or(ex->default_min_tests);
    cfg.batch_interval_ms = opt.batch_interval_ms;
    cfg.parallelism = opt.parallelism;
    cfg.oracle_crosscheck = opt.oracle;

    corpus::TraceObserver observer;
    if (opt.verbose) {
      observer = [](std::size_t k, const Json&, const harness::CaseResult& r) {
        std::cout << "  case " << k << ": " << r.verdict << (r.error ? " (error: " + *r.error + ")" : "") << "\n";
        print_trace(std::cout, r.trace);
      };
      std::cout << ex->name << ":\n";
    }
    harness::PropertyReport r;
    try {
      r = ex->run(cfg, observer);
    } catch (const ContractViolation& e) {
      std::cerr << "invalid configuration: " << e.what() << "\n";
      return kUsage;
    }
    const bool matched = corpus::outcome_matches(*ex, r);
    all_matched = all_matched && matched;
    print_summary(std::cout, *ex, r, matched);
    if (opt.inconclusive_warn && r.inconclusive_ratio() > *opt.inconclusive_warn) {
      std::cerr << "warning: " << ex->name << " inconclusive ratio " << r.inconclusive_ratio() << " exceeds "
                << *opt.inconclusive_warn << "\n";
    }
    reports.push_back(harness::to_json(r));
  }

  if (!opt.json_path.empty()) {
    const std::string text = reports.dump(2) + "\n";
    if (opt.json_path == "-") {
      std::cout << text;
    } else {
      std::ofstream out(opt.json_path);
      if (!out) {
        std::cerr << "cannot write " << opt.json_path << "\n";
        return kUsage;
      }
      out << text;
    }
  }
  return all_matched ? kOk : kMismatch;
}

int judge_file(const std::string& path, bool verbose) {
  std::vector<sym::Check> checks;
  try {
    checks = sym::load_checks(path);
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kUsage;
  }
  bool all = true;
  for (const auto& ck : checks) {
    Truth got = Truth::Inconclusive;
    std::string problem;
    try {
      const auto compiled = sym::compile(ck.formula, *ck.interpretation);
      got = judge(ck.word, 1, compiled);
      const Truth stepwise = evaluate(ck.word, compiled);
      if (stepwise != got) problem = "machine gives " + std::string(to_symbol(stepwise));
    } catch (const std::exception& e) {
      problem = e.what();
    }
    const bool ok = problem.empty() && got == ck.expected;
    all = all && ok;
    std::cout << (ok ? "ok    " : "FAIL  ") << to_symbol(got) << " (expected " << to_symbol(ck.expected) << ")  "
              << ck.source;
    if (verbose) std::cout << "  on " << sym::word_to_string(ck.word);
    if (!problem.empty()) std::cout << "  [" << problem << "]";
    std::cout << "\n";
  }
  std::cout << checks.size() << " checks, " << (all ? "all" : "not all") << " as expected\n";
  return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streamtl: bounded temporal properties over simulated micro-batch streams"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the bundled examples");

  RunOptions opt;
  auto* run = app.add_subcommand("run", "Run bundled examples (a name, several names, or `all`)");
  run->add_option("example", opt.targets, "example name or `all`")->required();
  run->add_option("--seed", opt.seed, "base seed");
  run->add_option("--min-tests", opt.min_tests, "cases per property (default: per example)")
      ->check(CLI::PositiveNumber);
  run->add_option("--batch-interval-ms", opt.batch_interval_ms, "batch interval")->check(CLI::PositiveNumber);
  run->add_option("--parallelism", opt.parallelism, "worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--oracle", opt.oracle, "cross-check every case against the reference judge");
  run->add_flag("--verbose", opt.verbose, "print per-step traces");
  run->add_option("--inconclusive-warn", opt.inconclusive_warn, "warn when the inconclusive ratio exceeds R")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--json", opt.json_path, "write the reports as JSON (`-` for stdout)");

  std::string check_path;
  bool judge_verbose = false;
  auto* jdg = app.add_subcommand("judge", "Evaluate a file of (check EXPECTED FORMULA WORD) directives");
  jdg->add_option("file", check_path, "check file")->required();
  jdg->add_flag("--verbose", judge_verbose, "also print the words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*list) {
    for (const auto& ex : corpus::examples())
      std::cout << ex.name << "  (" << corpus::to_string(ex.expected) << ", " << ex.default_min_tests << " cases)  "
                << ex.description << "\n";
    return kOk;
  }
  if (*run) return run_examples(opt);
  return judge_file(check_path, judge_verbose);
}
