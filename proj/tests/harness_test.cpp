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

#include <gtest/gtest.h>

#include <atomic>
#include <string>

#include "streamtl/corpus/banning.hpp"
#include "streamtl/harness/harness.hpp"
#include "streamtl/harness/transformation.hpp"
#include "streamtl/judge.hpp"

using namespace streamtl;
using namespace streamtl::harness;
using gen::GenFn;

namespace {

using CB = Batch<char>;
using CL = IoLetter<char, char>;
using CIF = IoFormula<char, char>;

HarnessConfig config(std::size_t n, std::uint64_t seed = 0) {
  HarnessConfig c;
  c.min_tests_ok = n;
  c.seed = seed;
  return c;
}

// A timeless atom that always holds; unlike a constant it needs a letter.
CIF yes() { return now<CL>([](const CL&) { return true; }); }

bool contains(const CB& b, char c) { return std::find(b.begin(), b.end(), c) != b.end(); }

// Small random formulas over input/output batches of a..c.
CIF random_io_formula(Rng& rng, int depth) {
  if (depth == 0 || rng.below(4) == 0) {
    const char c = static_cast<char>('a' + rng.below(3));
    switch (rng.below(4)) {
      case 0:
        return now<CL>([c](const CL& l) { return contains(l.input, c); });
      case 1:
        return now<CL>([c](const CL& l) { return contains(l.output, c); });
      case 2:
        return consume<CL>([](const CL& l) {
          const std::uint32_t n = 1 + static_cast<std::uint32_t>(l.input.size());
          return eventually(n, now<CL>([l](const CL& m) { return m.output == l.input; }));
        });
      default:
        return CIF::truth(rng.coin());
    }
  }
  auto sub = [&] { return random_io_formula(rng, depth - 1); };
  const auto t = static_cast<std::uint32_t>(rng.uniform(1, 3));
  switch (rng.below(8)) {
    case 0:
      return !sub();
    case 1:
      return sub() && sub();
    case 2:
      return sub() || sub();
    case 3:
      return next(sub());
    case 4:
      return eventually(t, sub());
    case 5:
      return always(t, sub());
    case 6: {
      auto a = sub();
      return until(t, a, sub());
    }
    default: {
      auto a = sub();
      return release(t, a, sub());
    }
  }
}

GenFn<gen::StreamPrefix<char>> random_chars_prefix() {
  auto letter = gen::map(gen::choose(0, 2), [](std::int64_t v) { return static_cast<char>('a' + v); });
  return [letter](Rng& rng, std::size_t size) {
    return gen::gen_always(gen::batch_of_n_to_m(0, 2, letter), static_cast<std::uint32_t>(rng.uniform(1, 8)))(rng, size);
  };
}

// Output of instant i is the input of instant i-1.
Transformation<char, char> delay() {
  return stateful<char, char>(CB{}, [](CB& last, const CB& b, TimeMs) { return std::exchange(last, b); });
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// time_of

TEST(TimeOf, Examples) {
  HarnessConfig c;
  EXPECT_EQ(time_of(1, c), 0);
  EXPECT_EQ(time_of(4, c), 300);
  c.start_time_ms = 1000;
  c.batch_interval_ms = 250;
  EXPECT_EQ(time_of(3, c), 1500);
  EXPECT_THROW(time_of(0, c), ContractViolation);
}

TEST(TimeOf, ConsecutiveTimesDifferByTheInterval) {
  HarnessConfig c;
  c.batch_interval_ms = 37;
  for (std::size_t i = 1; i < 50; ++i) EXPECT_EQ(time_of(i + 1, c) - time_of(i, c), 37);
}

TEST(Config, ValidateRejectsBadValues) {
  HarnessConfig c;
  EXPECT_NO_THROW(c.validate());
  c.batch_interval_ms = 0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = HarnessConfig{};
  c.min_tests_ok = 0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = HarnessConfig{};
  c.parallelism = 0;
  EXPECT_THROW(c.validate(), ContractViolation);
}

// ---------------------------------------------------------------------------------------------
// Transformations

TEST(Transformations, WindowThreeCountsSixSparks) {
  auto t = window<std::string>(3) | count_by_value<std::string>();
  std::vector<Batch<std::string>> in(5, Batch<std::string>{"#spark", "#spark"});
  auto out = t.run(in);
  ASSERT_EQ(out.size(), 5u);
  const std::vector<std::int64_t> expected{2, 4, 6, 6, 6};
  for (std::size_t k = 0; k < 5; ++k) {
    ASSERT_EQ(out[k].size(), 1u);
    EXPECT_EQ(out[k].elements[0], (std::pair<std::string, std::int64_t>{"#spark", expected[k]}));
  }
}

TEST(Transformations, WindowOneIsIdentity) {
  std::vector<CB> in{CB{'a'}, CB{}, CB{'b', 'c'}};
  EXPECT_EQ(window<char>(1).run(in), in);
  EXPECT_EQ(identity<char>().run(in), in);
  EXPECT_THROW(window<char>(0), ContractViolation);
}

TEST(Transformations, WindowConcatenatesTheLastNBatches) {
  std::vector<CB> in{CB{'a'}, CB{'b'}, CB{'c'}, CB{'a'}};
  auto out = window<char>(2).run(in);
  EXPECT_EQ(out, (std::vector<CB>{CB{'a'}, CB{'a', 'b'}, CB{'b', 'c'}, CB{'c', 'a'}}));
}

TEST(Transformations, StatefulBanningKeepsBannedIds) {
  using corpus::banning::UserRecord;
  std::vector<Batch<UserRecord>> in{{{1, true}, {15, true}}, {{15, false}, {2, true}}, {{3, true}}, {{15, true}}, {}};
  auto out = corpus::banning::stateful_subject().run(in);
  ASSERT_EQ(out.size(), in.size());
  EXPECT_TRUE(out[0].empty());
  for (std::size_t k = 1; k < out.size(); ++k) EXPECT_EQ(out[k], (Batch<std::int64_t>{15}));
}

TEST(Transformations, ElementwiseOperationsArePerBatch) {
  std::vector<Batch<int>> in{{1, 2, 3}, {}, {4}};
  auto doubled = map_elements<int>([](int x) { return 2 * x; }).run(in);
  EXPECT_EQ(doubled, (std::vector<Batch<int>>{{2, 4, 6}, {}, {8}}));
  auto odd = filter_elements<int>([](int x) { return x % 2 == 1; }).run(in);
  EXPECT_EQ(odd, (std::vector<Batch<int>>{{1, 3}, {}, {}}));
  auto twice = flat_map<int>([](int x) { return std::vector<int>{x, x}; }).run(in);
  EXPECT_EQ(twice, (std::vector<Batch<int>>{{1, 1, 2, 2, 3, 3}, {}, {4, 4}}));
}

TEST(Transformations, ReduceByKeySumsWithinTheBatch) {
  using KV = std::pair<char, int>;
  std::vector<Batch<KV>> in{{{'b', 1}, {'a', 2}, {'b', 5}}, {{'a', 1}}};
  auto out = reduce_by_key<char, int>([](int x, int y) { return x + y; }).run(in);
  EXPECT_EQ(out, (std::vector<Batch<KV>>{{{'a', 2}, {'b', 6}}, {{'a', 1}}}));
}

TEST(Transformations, StatefulByKeyDropsKeysOnNullopt) {
  using KV = std::pair<char, int>;
  // running sum, key dropped once it reaches 3 or more
  auto t = stateful_by_key<char, int, int>([](const std::vector<int>& vs, std::optional<int> s) -> std::optional<int> {
    int acc = s.value_or(0);
    for (int v : vs) acc += v;
    if (acc >= 3) return std::nullopt;
    return acc;
  });
  std::vector<Batch<KV>> in{{{'a', 1}, {'b', 2}}, {{'a', 1}}, {{'b', 1}}, {}};
  auto out = t.run(in);
  EXPECT_EQ(out, (std::vector<Batch<KV>>{{{'a', 1}, {'b', 2}}, {{'a', 2}, {'b', 2}}, {{'a', 2}}, {{'a', 2}}}));
}

TEST(Transformations, CountByValueAndWindowKeepsZeroCounts) {
  auto t = count_by_value_and_window<char>(2);
  auto out = t.run(std::vector<CB>{CB{'a', 'a'}, CB{'b'}, CB{}, CB{}});
  using C = std::pair<char, std::int64_t>;
  EXPECT_EQ(out, (std::vector<Batch<C>>{{{'a', 2}}, {{'a', 2}, {'b', 1}}, {{'a', 0}, {'b', 1}}, {{'a', 0}, {'b', 0}}}));
}

TEST(Transformations, CompositionIsStepComposition) {
  auto f = map_elements<int>([](int x) { return x + 1; });
  auto g = window<int>(2);
  std::vector<Batch<int>> in{{1}, {2}, {3}};
  EXPECT_EQ((f | g).run(in), g.run(f.run(in)));
}

TEST(Transformations, EachStartIsFresh) {
  auto t = delay();
  std::vector<CB> in{CB{'a'}, CB{'b'}};
  EXPECT_EQ(t.run(in), t.run(in));
}

TEST(Transformations, SynchronyOverRandomCompositions) {
  Rng rng(41);
  auto prefixes = random_chars_prefix();
  for (int k = 0; k < 200; ++k) {
    Transformation<char, char> t = identity<char>();
    const auto stages = rng.uniform(1, 4);
    for (int s = 0; s < stages; ++s) {
      switch (rng.below(5)) {
        case 0:
          t = t | window<char>(static_cast<std::size_t>(rng.uniform(1, 3)));
          break;
        case 1:
          t = t | filter_elements<char>([](char c) { return c != 'b'; });
          break;
        case 2:
          t = t | flat_map<char>([](char c) { return std::string(static_cast<std::size_t>(c - 'a'), c); });
          break;
        case 3:
          t = t | delay();
          break;
        default:
          t = t | map_elements<char>([](char c) { return c == 'a' ? 'c' : c; });
      }
    }
    auto p = prefixes(rng, 10);
    EXPECT_EQ(t.run(p.batches).size(), p.size());
  }
}

// ---------------------------------------------------------------------------------------------
// run_test_case

TEST(RunTestCase, StopsAsSoonAsTheFormulaIsSolved) {
  gen::StreamPrefix<char> p{{CB{'a'}, CB{'b'}, CB{'c'}}};
  auto phi = now<CL>([](const CL& l) { return contains(l.input, 'a'); });
  auto r = run_test_case(p, identity<char>(), phi, config(1));
  EXPECT_EQ(r.verdict, Truth::True);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].time, 0);
  EXPECT_FALSE(r.error);
}

TEST(RunTestCase, FinishStepWhenPrefixRunsOut) {
  gen::StreamPrefix<char> p{{CB{'a'}}};
  auto phi = always(3, now<CL>([](const CL& l) { return contains(l.input, 'a'); }));
  auto r = run_test_case(p, identity<char>(), phi, config(1));
  EXPECT_EQ(r.verdict, Truth::Inconclusive);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_TRUE(r.trace[1].finish);
}

TEST(RunTestCase, TimesFollowTheConfig) {
  gen::StreamPrefix<char> p{{CB{}, CB{}, CB{}}};
  std::vector<TimeMs> seen;
  auto record = stateless<char, char>([&seen](const CB& b, TimeMs t) {
    seen.push_back(t);
    return b;
  });
  HarnessConfig c = config(1);
  c.start_time_ms = 500;
  c.batch_interval_ms = 20;
  auto phi = always(3, yes());
  auto r = run_test_case(p, record, phi, c);
  EXPECT_EQ(seen, (std::vector<TimeMs>{500, 520, 540}));
  ASSERT_EQ(r.trace.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.trace[k].time, 500 + 20 * static_cast<TimeMs>(k));
}

TEST(RunTestCase, EarlyStopMatchesTheFullPrefix) {
  Rng rng(2026);
  auto prefixes = random_chars_prefix();
  HarnessConfig c = config(1);
  int early = 0;
  for (int k = 0; k < 300; ++k) {
    auto phi = random_io_formula(rng, 4);
    auto p = prefixes(rng, 10);
    auto r = run_test_case(p, delay(), phi, c);
    std::vector<TimedLetter<CL>> word;
    auto outs = delay().run(p.batches, c.start_time_ms, c.batch_interval_ms);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const TimeMs t = time_of(i + 1, c);
      word.push_back({CL{p[i], outs[i], t}, t});
    }
    ASSERT_FALSE(r.error) << *r.error;
    EXPECT_EQ(r.verdict, judge(word, 1, phi)) << "case " << k;
    if (!r.trace.empty() && !r.trace.back().finish && r.trace.size() < p.size()) ++early;
  }
  EXPECT_GT(early, 0);
}

TEST(RunTestCase, OracleAgreesOnEveryCase) {
  HarnessConfig c = config(300, 5);
  c.oracle_crosscheck = true;
  Rng rng(77);
  for (int k = 0; k < 20; ++k) {
    auto phi = random_io_formula(rng, 3);
    std::size_t observed = 0;
    auto rep = for_all_stream<char, char>("oracle", random_chars_prefix(), delay(), phi, c,
                                          [&](std::size_t, const gen::StreamPrefix<char>&, const CaseResult& r) {
                                            ++observed;
                                            EXPECT_FALSE(r.error) << *r.error;
                                          });
    EXPECT_EQ(rep.errors, 0u);
    EXPECT_EQ(observed, rep.cases);
  }
}

TEST(RunTestCase, OracleFlagsASubjectThatIsNotReproducible) {
  // leaks state across start() calls, so the oracle's rerun sees different outputs
  auto counter = std::make_shared<std::atomic<int>>(0);
  Transformation<char, char> leaky([counter] {
    return Stepper<char, char>([counter](const CB&, TimeMs) { return CB{static_cast<char>('a' + (++*counter % 2))}; });
  });
  gen::StreamPrefix<char> p{{CB{}}};
  auto phi = now<CL>([](const CL& l) { return contains(l.output, 'b'); });
  HarnessConfig c = config(1);
  c.oracle_crosscheck = true;
  auto r = run_test_case(p, leaky, phi, c);
  ASSERT_TRUE(r.error);
  EXPECT_NE(r.error->find("oracle mismatch"), std::string::npos);
}

TEST(RunTestCase, SubjectExceptionsBecomeErrors) {
  auto boom = stateless<char, char>([](const CB&, TimeMs) -> CB { throw std::runtime_error("boom"); });
  auto r = run_test_case(gen::StreamPrefix<char>{{CB{}}}, boom, yes(), config(1));
  ASSERT_TRUE(r.error);
  EXPECT_EQ(*r.error, "boom");
}

// ---------------------------------------------------------------------------------------------
// for_all_stream

TEST(ForAllStream, EmptyPrefixesAreInconclusive) {
  auto empty = gen::prefix_of(gen::StreamPrefix<char>{});
  auto phi = always(2, now<CL>([](const CL&) { return true; }));
  auto rep = for_all_stream<char, char>("empty", empty, identity<char>(), phi, config(25));
  EXPECT_EQ(rep.cases, 25u);
  EXPECT_EQ(rep.inconclusive, 25u);
  EXPECT_EQ(rep.passed, 0u);
  EXPECT_TRUE(rep.ok());
  EXPECT_DOUBLE_EQ(rep.inconclusive_ratio(), 1.0);
}

TEST(ForAllStream, HandSimulatedStatelessBanning) {
  using corpus::banning::UserRecord;
  gen::StreamPrefix<UserRecord> p{{{{1, true}}, {{2, true}, {15, false}}, {{3, true}}}};
  const auto phi = corpus::banning::formula({});
  // outputs {}, {15}, {}: the until holds at 2, the nested always fails at 3
  auto bad = run_test_case(p, corpus::banning::stateless_subject(), phi, config(1));
  EXPECT_EQ(bad.verdict, Truth::False);
  ASSERT_EQ(bad.trace.size(), 3u);
  EXPECT_EQ(bad.trace.back().verdict, Truth::False);
  // outputs {}, {15}, {15}: too short to decide
  auto good = run_test_case(p, corpus::banning::stateful_subject(), phi, config(1));
  EXPECT_EQ(good.verdict, Truth::Inconclusive);

  auto rep = for_all_stream("hand", gen::prefix_of(p), corpus::banning::stateless_subject(), phi, config(5));
  EXPECT_EQ(rep.cases, 1u);
  EXPECT_EQ(rep.failed, 1u);
  ASSERT_TRUE(rep.counterexample);
  EXPECT_EQ(rep.counterexample->case_index, 0u);
  EXPECT_EQ(rep.counterexample->failing_step, 3u);
  EXPECT_EQ(rep.counterexample->prefix.dump(), R"([[[1,true]],[[2,true],[15,false]],[[3,true]]])");
}

TEST(ForAllStream, StopsAtTheFirstRefutation) {
  // case k gets a prefix of length 1 + (k mod 3); fails on the first length-3 prefix
  GenFn<gen::StreamPrefix<char>> g = [](Rng& rng, std::size_t) {
    gen::StreamPrefix<char> p;
    p.batches.resize(1 + rng.below(3));
    return p;
  };
  auto phi = !next(next(yes()));
  for (std::size_t par : {1u, 3u}) {
    HarnessConfig c = config(100, 9);
    c.parallelism = par;
    std::vector<std::size_t> seen;
    auto rep = for_all_stream<char, char>("stop", g, identity<char>(), phi, c,
                                          [&](std::size_t k, const gen::StreamPrefix<char>&, const CaseResult&) { seen.push_back(k); });
    ASSERT_EQ(rep.failed, 1u);
    ASSERT_TRUE(rep.counterexample);
    EXPECT_EQ(rep.cases, rep.counterexample->case_index + 1);
    EXPECT_EQ(rep.passed + rep.inconclusive + 1, rep.cases);
    EXPECT_EQ(rep.counterexample->prefix.size(), 3u);
    ASSERT_EQ(seen.size(), rep.cases);
    for (std::size_t k = 0; k < seen.size(); ++k) EXPECT_EQ(seen[k], k);
  }
}

TEST(ForAllStream, ErrorsAreAFourthBucket) {
  auto boom = stateless<char, char>([](const CB& b, TimeMs) -> CB {
    if (contains(b, 'c')) throw std::runtime_error("saw c");
    return b;
  });
  auto rep = for_all_stream<char, char>("err", random_chars_prefix(), boom, always(8, yes()), config(200, 3));
  EXPECT_EQ(rep.errors, 1u);
  EXPECT_EQ(rep.failed, 0u);
  EXPECT_FALSE(rep.counterexample);
  ASSERT_TRUE(rep.first_error);
  EXPECT_EQ(rep.first_error->message, "saw c");
  EXPECT_EQ(rep.first_error->case_index + 1, rep.cases);
  EXPECT_FALSE(rep.ok());
}

TEST(ForAllStream, GeneratorExceptionsAreErrors) {
  GenFn<gen::StreamPrefix<char>> g = [](Rng&, std::size_t) -> gen::StreamPrefix<char> { throw ContractViolation("nope"); };
  auto rep = for_all_stream<char, char>("gen", g, identity<char>(), CIF::truth(true), config(3));
  EXPECT_EQ(rep.errors, 1u);
  ASSERT_TRUE(rep.first_error);
  EXPECT_NE(rep.first_error->message.find("nope"), std::string::npos);
}

TEST(ForAllStream, SequentialAndParallelReportsAgree) {
  Rng rng(8);
  for (int k = 0; k < 25; ++k) {
    auto phi = random_io_formula(rng, 3);
    const std::uint64_t seed = rng.next_u64();
    HarnessConfig c = config(150, seed);
    const auto seq = for_all_stream<char, char>("det", random_chars_prefix(), delay(), phi, c);
    for (std::size_t par : {2u, 4u, 7u}) {
      c.parallelism = par;
      const auto rep = for_all_stream<char, char>("det", random_chars_prefix(), delay(), phi, c);
      EXPECT_EQ(rep, seq);
      EXPECT_EQ(to_json(rep).dump(), to_json(seq).dump());
    }
  }
}

TEST(ForAllStream, WallClockStartMovesTheEpoch) {
  HarnessConfig c = config(1);
  c.wall_clock_start = true;
  TimeMs first = -1;
  auto record = stateless<char, char>([&first](const CB& b, TimeMs t) {
    if (first < 0) first = t;
    return b;
  });
  for_all_stream<char, char>("clock", gen::prefix_of(gen::StreamPrefix<char>{{CB{}}}), record, yes(), c);
  EXPECT_GT(first, 1'600'000'000'000);
}

// ---------------------------------------------------------------------------------------------
// JSON

TEST(Json, ReportRoundTrips) {
  using corpus::banning::UserRecord;
  gen::StreamPrefix<UserRecord> p{{{{1, true}}, {{2, true}, {15, false}}, {{3, true}}}};
  auto failing = for_all_stream("banning", gen::prefix_of(p), corpus::banning::stateless_subject(),
                                corpus::banning::formula({}), config(5, 42));
  ASSERT_TRUE(failing.counterexample);
  auto boom = stateless<char, char>([](const CB&, TimeMs) -> CB { throw std::runtime_error("x"); });
  auto erroring = for_all_stream<char, char>("boom", random_chars_prefix(), boom, yes(), config(5));
  auto passing = for_all_stream<char, char>("empty", gen::prefix_of(gen::StreamPrefix<char>{}), identity<char>(),
                                            always(2, yes()), config(4));
  for (const auto& r : {failing, erroring, passing}) {
    const Json j = to_json(r);
    EXPECT_EQ(report_from_json(j), r);
    EXPECT_EQ(report_from_json(Json::parse(j.dump())), r);
  }
}

TEST(Json, SchemaFields) {
  using corpus::banning::UserRecord;
  gen::StreamPrefix<UserRecord> p{{{{1, true}}, {{2, true}, {15, false}}, {{3, true}}}};
  auto r = for_all_stream("banning", gen::prefix_of(p), corpus::banning::stateless_subject(), corpus::banning::formula({}),
                          config(5, 42));
  const Json j = to_json(r);
  for (const char* k : {"property", "seed", "cases", "passed", "inconclusive", "failed", "errors", "counterexample"})
    EXPECT_TRUE(j.contains(k)) << k;
  const Json& trace = j["counterexample"]["trace"];
  ASSERT_EQ(trace.size(), 3u);
  EXPECT_EQ(trace[0]["step"], 1);
  EXPECT_EQ(trace[0]["time_ms"], 0);
  EXPECT_EQ(trace[2]["time_ms"], 200);
  EXPECT_EQ(trace[2]["verdict"], "F");
  EXPECT_FALSE(trace[0].contains("verdict"));
  EXPECT_TRUE(to_json(PropertyReport{})["counterexample"].is_null());
}
