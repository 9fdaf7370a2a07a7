// Copyright 2026 The eprb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "eprb/engine.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

namespace eprb {
namespace {

using J = JointOutcome;

TEST(Policies, Validation) {
  EXPECT_THROW(validate_policy(DeltaScan{{}}), std::invalid_argument);
  EXPECT_THROW(validate_policy(DeltaScan{{0.0, std::nan("")}}), std::invalid_argument);
  EXPECT_NO_THROW(validate_policy(DeltaScan{{0.0, 30.0}}));
  EXPECT_NO_THROW(validate_policy(UniformLabelPairs{LabelBinding{}}));
}

TEST(Policies, SupportSizes) {
  EXPECT_EQ(policy_support(FixedPair{SettingPair::of_degrees(1, 2)}).size(), 1u);
  EXPECT_EQ(policy_support(UniformLabelPairs{LabelBinding{}}).size(), 9u);
  EXPECT_EQ(policy_support(IndependentUniformLabels{LabelBinding{}}).size(), 9u);
  EXPECT_EQ(policy_support(DeltaScan{{0, 30, 60}}).size(), 3u);
}

TEST(Policies, UniformLabelPairsCoverAllNine) {
  const UniformLabelPairs policy{LabelBinding{}};
  std::array<std::uint64_t, 9> counts{};
  const std::uint64_t n = 90000;
  for (std::uint64_t t = 0; t < n; ++t) {
    RandomStream rng(1, t);
    const SettingPair p = draw_settings(policy, rng, t);
    ASSERT_TRUE(p.labeled());
    ++counts[3 * static_cast<int>(*p.theta_label) + static_cast<int>(*p.phi_label)];
  }
  for (auto c : counts) EXPECT_NEAR(c / double(n), 1.0 / 9.0, binomial_band(1.0 / 9.0, n));
}

TEST(Policies, DeltaScanIsRoundRobinAndDrawsNothing) {
  const DeltaScan policy{{0, 90, 120}};
  RandomStream rng(1, 0);
  for (std::uint64_t t = 0; t < 9; ++t) {
    const SettingPair p = draw_settings(policy, rng, t);
    EXPECT_EQ(p.theta.deg(), policy.deltas[t % 3]);
    EXPECT_EQ(p.phi.deg(), 0.0);
  }
  EXPECT_EQ(rng.position(), 0u);
}

TEST(RunExperiment, ReproducibleAndIndexed) {
  const GrandmaModel model;
  const UniformLabelPairs policy{LabelBinding{}};
  const auto a = run_experiment(model, policy, 2000, 42);
  const auto b = run_experiment(model, policy, 2000, 42);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i].trial_index, i);
  const auto c = run_experiment(model, policy, 2000, 43);
  EXPECT_NE(a, c);
}

TEST(RunExperiment, ShardsAndOrderDoNotMatter) {
  const MerminModel mermin;
  const GrandmaModel continuous = GrandmaModel::continuous();
  const QuantumModel quantum;
  const std::vector<std::pair<const Model*, SettingPolicy>> cases = {
      {&mermin, UniformLabelPairs{LabelBinding{}}},
      {&continuous, DeltaScan{{0, 45, 120, 300}}},
      {&quantum, IndependentUniformLabels{LabelBinding{}}},
  };
  std::mt19937_64 gen(3);
  for (const auto& [model, policy] : cases) {
    const std::uint64_t n = 3001;
    const auto seq = run_experiment(*model, policy, n, 7);
    for (unsigned shards : {2U, 3U, 8U, 5000U}) {
      RunOptions opts;
      opts.shards = shards;
      ASSERT_EQ(run_experiment(*model, policy, n, 7, opts), seq) << shards;
    }
    // Any evaluation order gives the same record per index.
    std::vector<std::uint64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen);
    for (std::uint64_t i : order) ASSERT_EQ(run_trial(*model, policy, 7, i), seq[i]);
    // Streaming sink sees the same sequence.
    std::vector<RunRecord> streamed;
    run_experiment(*model, policy, n, 7, [&](const RunRecord& r) { streamed.push_back(r); });
    ASSERT_EQ(streamed, seq);
    // Counts agree with the records.
    const auto counts = run_counts(*model, policy, n, 7);
    ASSERT_EQ(counts.counts, estimate(seq).counts);
  }
}

TEST(RunExperiment, ZeroTrials) {
  EXPECT_TRUE(run_experiment(QuantumModel(), FixedPair{SettingPair::of_degrees(0, 0)}, 0, 1)
                  .empty());
}

TEST(RunExperiment, DomainMismatchFailsBeforeRunning) {
  int calls = 0;
  EXPECT_THROW(run_experiment(MerminModel(), FixedPair{SettingPair::of_degrees(0, 90)}, 10, 1,
                              [&](const RunRecord&) { ++calls; }),
               DomainError);
  EXPECT_EQ(calls, 0);
  EXPECT_THROW(run_experiment(GrandmaModel(), DeltaScan{{0, 30}}, 10, 1), DomainError);
  EXPECT_NO_THROW(run_experiment(GrandmaModel(), DeltaScan{{0, 120, 240}}, 10, 1));
}

TEST(RunExperiment, EqualSettingsNeverAgree) {
  const MerminModel mermin;
  const GrandmaModel grandma;
  const QuantumModel quantum;
  for (const Model* m : std::initializer_list<const Model*>{&mermin, &grandma, &quantum}) {
    for (double angle : {0.0, 120.0, 240.0}) {
      const auto e = run_counts(*m, FixedPair{SettingPair::of_degrees(angle, angle)}, 20000, 5);
      EXPECT_EQ(e.opposite_count(), e.n) << m->id();
    }
  }
}

TEST(RunExperiment, HiddenSummaryIsOptional) {
  const auto with = run_trial(MerminModel(), UniformLabelPairs{LabelBinding{}}, 1, 0, true);
  const auto without = run_trial(MerminModel(), UniformLabelPairs{LabelBinding{}}, 1, 0, false);
  EXPECT_TRUE(with.hidden_summary.has_value());
  EXPECT_FALSE(without.hidden_summary.has_value());
  EXPECT_EQ(with.outcome, without.outcome);
}

RunRecord make_record(std::uint64_t i, double t, double p, J o,
                      std::optional<std::string> h = std::nullopt) {
  RunRecord r;
  r.trial_index = i;
  r.theta = Angle::degrees(t);
  r.phi = Angle::degrees(p);
  r.outcome = o;
  r.model_id = "grandma";
  r.hidden_summary = std::move(h);
  return r;
}

TEST(Estimate, Examples) {
  std::vector<RunRecord> recs;
  for (int i = 0; i < 3; ++i) recs.push_back(make_record(i, 0, 0, J::UpDown));
  recs.push_back(make_record(3, 0, 0, J::DownUp));
  recs.push_back(make_record(4, 120, 0, J::UpUp));
  const auto all = estimate(recs);
  EXPECT_EQ(all.n, 5u);
  EXPECT_EQ(all.counts, (std::array<std::uint64_t, 4>{1, 0, 3, 1}));
  const auto eq = estimate(recs, SettingPair::of_degrees(0, 0));
  EXPECT_EQ(eq.n, 4u);
  EXPECT_DOUBLE_EQ(eq.frequency(J::UpDown), 0.75);
  EXPECT_THROW(estimate(recs, SettingPair::of_degrees(0, 90)), NoDataError);
  EXPECT_THROW(estimate(std::vector<RunRecord>{}), NoDataError);
}

TEST(Estimate, CountsSumAndIntervalsContainEstimates) {
  const auto recs = run_experiment(QuantumModel(), IndependentUniformLabels{LabelBinding{}},
                                   5000, 9);
  for (const SettingPair& p : policy_support(IndependentUniformLabels{LabelBinding{}})) {
    const auto e = estimate(recs, p);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      sum += e.counts[i];
      EXPECT_TRUE(e.ci[i].contains(e.p_hat[i]));
      EXPECT_GE(e.ci[i].lo, 0.0);
      EXPECT_LE(e.ci[i].hi, 1.0);
    }
    EXPECT_EQ(sum, e.n);
  }
}

TEST(Jsonl, ExactLayout) {
  const auto r = make_record(0, 120, 0, J::DownUp, "state=-+");
  EXPECT_EQ(to_jsonl(r),
            R"({"trial":0,"theta_deg":120.0,"phi_deg":0.0,"a":"-","b":"+",)"
            R"("model":"grandma","hidden":"state=-+"})");
  EXPECT_EQ(to_jsonl(make_record(1, 0.5, 0, J::UpUp)).find("\"hidden\":null") !=
                std::string::npos,
            true);
}

TEST(Jsonl, RoundTripProperty) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> deg(-1000, 1000);
  std::uniform_int_distribution<int> outcome(0, 3);
  std::uniform_int_distribution<std::uint64_t> index;
  std::bernoulli_distribution has_hidden(0.5);
  std::vector<RunRecord> recs;
  for (int i = 0; i < 2000; ++i) {
    std::optional<std::string> h;
    if (has_hidden(gen)) h = "set=" + std::to_string(i % 8) + ":+-+/-+-";
    recs.push_back(make_record(index(gen), deg(gen), deg(gen), kAllJointOutcomes[outcome(gen)],
                               h));
    ASSERT_EQ(record_from_jsonl(to_jsonl(recs.back())), recs.back());
  }
  std::stringstream ss;
  write_records(ss, recs);
  EXPECT_EQ(read_records(ss), recs);
}

TEST(Jsonl, RejectsMalformedLines) {
  EXPECT_THROW(record_from_jsonl("not json"), std::invalid_argument);
  EXPECT_THROW(record_from_jsonl(R"({"trial":0})"), std::invalid_argument);
  EXPECT_THROW(record_from_jsonl(R"({"trial":0,"theta_deg":0,"phi_deg":0,"a":"x","b":"+",)"
                                 R"("model":"q","hidden":null})"),
               std::invalid_argument);
  EXPECT_THROW(record_from_jsonl(R"({"trial":0,"theta_deg":0,"phi_deg":0,"a":"+","b":"+",)"
                                 R"("model":"q","hidden":null,"extra":1})"),
               std::invalid_argument);
}

TEST(SummaryCsv, Layout) {
  std::ostringstream os;
  write_summary_csv(os, EmpiricalDistribution::from_counts({1, 1, 1, 1}));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "outcome,count,p_hat,ci_lo,ci_hi");
  int rows = 0;
  while (std::getline(in, line)) {
    const std::string prefix = std::string(to_string(kAllJointOutcomes[rows])) + ",1,0.25,";
    EXPECT_EQ(line.rfind(prefix, 0), 0u) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(120.0), "120");
  EXPECT_EQ(format_double(0.1), "0.1");
}

}  // namespace
}  // namespace eprb
