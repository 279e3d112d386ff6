#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "somguard/som_map.hpp"

using namespace somguard;

TEST(Initialize, DegenerateBoundsForceValue) {
  const std::vector<Bounds> b{{0, 0}, {0, 0}};
  const SomMap m = initialize(GridShape(1, 1), 2, b, 99);
  EXPECT_EQ(m.weight(0)[0], 0.0);
  EXPECT_EQ(m.weight(0)[1], 0.0);
  EXPECT_EQ(m.steps_trained(), 0u);
}

TEST(Initialize, ShapeAndBounds) {
  const std::vector<Bounds> b{{-1, 1}, {0, 10}, {5, 5}, {-3, -2}, {100, 200}};
  const SomMap m = initialize(GridShape(3, 4), 5, b, 42);
  ASSERT_EQ(m.node_count(), 12u);
  EXPECT_EQ(m.seed(), 42u);
  for (std::size_t i = 0; i < 12; ++i) {
    const auto w = m.weight(i);
    ASSERT_EQ(w.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_GE(w[k], b[k].min);
      EXPECT_LE(w[k], b[k].max);
    }
  }
}

TEST(Initialize, Deterministic) {
  const std::vector<Bounds> b{{0, 1}};
  EXPECT_EQ(initialize(GridShape(2, 2), 1, b, 7), initialize(GridShape(2, 2), 1, b, 7));
  EXPECT_NE(initialize(GridShape(2, 2), 1, b, 7), initialize(GridShape(2, 2), 1, b, 8));
}

TEST(Initialize, RejectsInvertedBounds) {
  const std::vector<Bounds> b{{1, 0}};
  EXPECT_THROW(initialize(GridShape(2, 2), 1, b, 1), domain_error);
  const std::vector<Bounds> two{{0, 1}, {0, 1}};
  EXPECT_THROW(initialize(GridShape(2, 2), 1, two, 1), domain_error);
}

TEST(SomMap, RejectsNonFiniteAndMisSizedWeights) {
  EXPECT_THROW(SomMap(GridShape(1, 2), 2, {0, 0, 0}), domain_error);
  EXPECT_THROW(SomMap(GridShape(1, 1), 1, {NAN}), domain_error);
  EXPECT_THROW(SomMap(GridShape(1, 1), 0, {}), domain_error);
}

TEST(FindBmu, Examples) {
  const SomMap two(GridShape(1, 2), 2, {0, 0, 1, 1});
  const auto r = find_bmu(two, std::vector<double>{0.1, 0.1});
  EXPECT_EQ(r.node, 0u);
  EXPECT_DOUBLE_EQ(r.distance, std::sqrt(0.02));

  Rng rng(3);
  const SomMap m = oracle::random_map(rng, 2, 3, 4);
  const std::vector<double> x(m.weight(3).begin(), m.weight(3).end());
  const auto exact = find_bmu(m, x);
  EXPECT_EQ(exact.node, 3u);
  EXPECT_EQ(exact.distance, 0.0);
}

TEST(FindBmu, TiesGoToLowestIndex) {
  const SomMap m(GridShape(2, 2), 1, {1, -1, 1, -1});
  const auto r = find_bmu(m, std::vector<double>{0.0});
  EXPECT_EQ(r.node, 0u);
  EXPECT_EQ(r.distance, 1.0);
}

TEST(FindBmu, MatchesExhaustiveScan) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const SomMap m = oracle::random_map(rng, 6, 6, 3);
    const auto x = oracle::random_vector(rng, 3);
    const auto [idx, dist] = oracle::bmu(m, x);
    const auto got = find_bmu(m, x);
    EXPECT_EQ(got.node, idx);
    EXPECT_EQ(got.distance, dist);
  }
}

TEST(FindBmu, DimensionMismatch) {
  const SomMap m(GridShape(1, 1), 2, {0, 0});
  EXPECT_THROW(find_bmu(m, std::vector<double>{1.0}), domain_error);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel({2, 3}, {2, 3}, 0.8, 1.7), 0.8);
  EXPECT_NEAR(kernel({0, 0}, {0, 1}, 0.5, 1.0), 0.5 * std::exp(-0.5), 1e-16);
  EXPECT_NEAR(kernel({0, 0}, {0, 1}, 0.5, 1.0), 0.30326532985631671, 1e-15);
  const double far = kernel({0, 0}, {0, 10}, 0.5, 1.0);
  EXPECT_GT(far, 0.0);
  EXPECT_NEAR(far, 0.5 * std::exp(-50.0), 1e-30);
  EXPECT_LT(far, 1e-22);
}

TEST(Kernel, RejectsBadParameters) {
  EXPECT_THROW(kernel({0, 0}, {0, 0}, 0.5, 0.0), domain_error);
  EXPECT_THROW(kernel({0, 0}, {0, 0}, 0.5, -1.0), domain_error);
  EXPECT_THROW(kernel({0, 0}, {0, 0}, 0.0, 1.0), domain_error);
  EXPECT_THROW(kernel({0, 0}, {0, 0}, 1.5, 1.0), domain_error);
}

TEST(Kernel, BoundedByAlpha) {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const GridPosition c{uniform_index(rng, 12), uniform_index(rng, 12)};
    const GridPosition i{uniform_index(rng, 12), uniform_index(rng, 12)};
    const double alpha = 1.0 - uniform_unit(rng);
    const double sigma = 0.1 + 6.0 * uniform_unit(rng);
    const double h = kernel(c, i, alpha, sigma);
    EXPECT_LE(h, alpha);
    EXPECT_GE(h, 0.0);
    EXPECT_EQ(h == alpha, c == i);
  }
}

TEST(Adapt, UnitKernelCopiesInput) {
  SomMap m(GridShape(1, 1), 3, {5, -2, 7});
  adapt(m, std::vector<double>{1, 2, 3}, 0, 1.0, 1.0);
  EXPECT_EQ(m.weight(0)[0], 1.0);
  EXPECT_EQ(m.weight(0)[1], 2.0);
  EXPECT_EQ(m.weight(0)[2], 3.0);
  EXPECT_EQ(m.steps_trained(), 1u);
}

TEST(Adapt, TinyRateLeavesWeights) {
  Rng rng(9);
  SomMap m = oracle::random_map(rng, 3, 3, 2);
  const SomMap before = m;
  adapt(m, std::vector<double>{0.5, 0.5}, 4, 1e-300, 1.0);
  for (std::size_t k = 0; k < m.weights().size(); ++k) {
    EXPECT_NEAR(m.weights()[k], before.weights()[k], 1e-15);
  }
}

TEST(Adapt, HalfwayStep) {
  // Winner at distance 0 with alpha 0.5 gives h = 0.5.
  SomMap m(GridShape(1, 1), 2, {0, 0});
  adapt(m, std::vector<double>{1, 1}, 0, 0.5, 1.0);
  EXPECT_EQ(m.weight(0)[0], 0.0 + 0.5 * (1.0 - 0.0));
  EXPECT_EQ(m.weight(0)[1], 0.5);
}

TEST(Adapt, MatchesDirectUpdateAndContractsWinner) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    SomMap m = oracle::random_map(rng, 4, 5, 3);
    const SomMap before = m;
    const auto x = oracle::random_vector(rng, 3);
    const std::size_t c = uniform_index(rng, m.node_count());
    const double alpha = 1.0 - uniform_unit(rng);
    const double sigma = 0.2 + 3.0 * uniform_unit(rng);
    adapt(m, x, c, alpha, sigma);
    for (std::size_t i = 0; i < m.node_count(); ++i) {
      const double h = oracle::kernel(c / 5, c % 5, i / 5, i % 5, alpha, sigma);
      for (std::size_t k = 0; k < 3; ++k) {
        const double expect = before.weight(i)[k] + h * (x[k] - before.weight(i)[k]);
        EXPECT_NEAR(m.weight(i)[k], expect, 1e-12);
      }
    }
    EXPECT_LE(euclidean_distance(m.weight(c), x), euclidean_distance(before.weight(c), x));
  }
}

TEST(Adapt, InvalidWinner) {
  SomMap m(GridShape(1, 2), 1, {0, 1});
  EXPECT_THROW(adapt(m, std::vector<double>{0.0}, 2, 0.5, 1.0), domain_error);
  EXPECT_THROW(adapt(m, std::vector<double>{0.0, 1.0}, 0, 0.5, 1.0), domain_error);
}

TEST(QuantizationError, Examples) {
  const SomMap origin(GridShape(1, 1), 2, {0, 0});
  EXPECT_EQ(quantization_error(origin, std::vector<FeatureVector>{{3, 4}}), 5.0);

  const SomMap m(GridShape(1, 3), 2, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(quantization_error(m, std::vector<FeatureVector>{{5, 6}, {1, 2}, {3, 4}}), 0.0);
  EXPECT_THROW(quantization_error(m, std::vector<FeatureVector>{}), domain_error);
}

TEST(QuantizationError, MatchesDoubleLoop) {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const SomMap m = oracle::random_map(rng, 5, 4, 3);
    std::vector<FeatureVector> data;
    for (int i = 0; i < 40; ++i) data.push_back(oracle::random_vector(rng, 3, -2, 2));
    EXPECT_NEAR(quantization_error(m, data), oracle::quantization_error(m, data), 1e-12);
  }
}
