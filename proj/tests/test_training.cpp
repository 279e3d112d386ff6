#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "synthetic.hpp"
#include "somguard/training.hpp"

using namespace somguard;

TEST(SelectStimulus, SingletonAlwaysReturned) {
  const std::vector<FeatureVector> one{{1.5, -2.0}};
  Rng rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(&select_stimulus(one, rng), &one[0]);
}

TEST(SelectStimulus, EmptySetRejected) {
  Rng rng(1);
  EXPECT_THROW(select_stimulus(std::vector<FeatureVector>{}, rng), domain_error);
}

TEST(SelectStimulus, ReproducibleSequence) {
  const std::vector<FeatureVector> set{{0}, {1}, {2}};
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(&select_stimulus(set, a), &select_stimulus(set, b));
}

TEST(SelectStimulus, RoughlyUniform) {
  const std::vector<FeatureVector> set{{0}, {1}, {2}, {3}};
  Rng rng(2024);
  std::array<int, 4> counts{};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[&select_stimulus(set, rng) - set.data()];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / draws, 0.25, 0.015);
}

TEST(Train, ZeroStepsIsNoOp) {
  Rng rng(4);
  SomMap m = oracle::random_map(rng, 3, 3, 2);
  const SomMap before = m;
  TrainingSchedule s;
  s.total_steps = 0;
  s.ordering_steps = 0;
  const auto report = train(m, std::vector<FeatureVector>{{0.1, 0.2}, {0.3, 0.4}}, s);
  EXPECT_EQ(m, before);
  EXPECT_EQ(report.steps, 0u);
  EXPECT_EQ(report.initial_qe, report.final_qe);
  EXPECT_EQ(report.qe_history.size(), 1u);
}

TEST(Train, SingleTargetContractsEveryNode) {
  // With sigma >= 3 on a 4x4 grid every node gets h >= alpha * exp(-18/18);
  // repeated contraction drives all weights onto the single datum.
  const FeatureVector x0{0.25, -0.75, 2.0};
  const std::vector<Bounds> b{{-5, 5}, {-5, 5}, {-5, 5}};
  SomMap m = initialize(GridShape(4, 4), 3, b, 3);
  TrainingSchedule s;
  s.total_steps = 3000;
  s.ordering_steps = 1000;
  s.sigma_start = 6.0;
  s.sigma_end = 3.0;
  const auto report = train(m, std::vector<FeatureVector>{x0}, s);
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(m.weight(i)[k], x0[k], 1e-6);
  }
  EXPECT_LT(report.final_qe, 1e-6);
  EXPECT_EQ(m.steps_trained(), 3000u);
}

TEST(Train, ReportSamplesAndDeterminism) {
  const auto data = fixtures::four_clusters(8);
  const GridShape shape(5, 5);
  auto s = default_schedule(shape);
  TrainOptions opts;
  opts.qe_sample_every = 1000;
  SomMap a = initialize(shape, 2, fixtures::bounds_of(data), 5);
  SomMap b = initialize(shape, 2, fixtures::bounds_of(data), 5);
  const auto ra = train(a, data, s, opts);
  const auto rb = train(b, data, s, opts);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ra.steps, 12500u);
  // start, every 1000 steps, and the final partial interval
  ASSERT_EQ(ra.qe_history.size(), 1u + 12u + 1u);
  EXPECT_EQ(ra.qe_history.front().step, 0u);
  EXPECT_EQ(ra.qe_history.back().step, 12500u);
  EXPECT_EQ(ra.qe_history.back().qe, ra.final_qe);
  EXPECT_NEAR(ra.final_qe, quantization_error(a, data), 0.0);
  for (const auto& q : ra.qe_history) EXPECT_GE(q.qe, 0.0);
  EXPECT_LT(ra.final_qe, ra.initial_qe);
}

TEST(Train, EarlyStopBelowThreshold) {
  const auto data = fixtures::four_clusters(2);
  const GridShape shape(6, 6);
  SomMap m = initialize(shape, 2, fixtures::bounds_of(data), 2);
  TrainOptions opts;
  opts.qe_sample_every = 500;
  opts.stop_below_qe = 1.0;
  const auto r = train(m, data, default_schedule(shape), opts);
  EXPECT_TRUE(r.stopped_early);
  EXPECT_LT(r.steps, default_schedule(shape).total_steps);
  EXPECT_EQ(r.steps % 500, 0u);
  EXPECT_LT(r.final_qe, 1.0);
  EXPECT_EQ(m.steps_trained(), r.steps);
}

TEST(Train, RejectsBadInput) {
  SomMap m(GridShape(1, 1), 2, {0, 0});
  const auto s = default_schedule(m.shape());
  EXPECT_THROW(train(m, std::vector<FeatureVector>{}, s), domain_error);
  EXPECT_THROW(train(m, std::vector<FeatureVector>{{1, 2, 3}}, s), domain_error);
}

TEST(Train, ExactCutoffMatchesFullUpdate) {
  const auto data = fixtures::four_clusters(1);
  const GridShape shape(10, 10);
  SomMap full = initialize(shape, 2, fixtures::bounds_of(data), 1);
  SomMap cut = full;
  const auto rf = train(full, data, default_schedule(shape));
  TrainOptions opts;
  opts.adapt.cutoff_sigmas = 9.0;
  const auto rc = train(cut, data, default_schedule(shape), opts);
  EXPECT_LT(std::abs(rf.final_qe - rc.final_qe), 1e-9);
}
