#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "somguard/random.hpp"
#include "somguard/som_map.hpp"

namespace somguard::fixtures {

// Box-Muller on the library's uniform stream; deterministic per seed.
inline double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform_unit(rng);  // (0, 1]
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline std::vector<FeatureVector> gaussian_cluster(Rng& rng, const FeatureVector& center,
                                                   double stddev, std::size_t count) {
  std::vector<FeatureVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    FeatureVector v(center.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = center[k] + stddev * standard_normal(rng);
    out.push_back(std::move(v));
  }
  return out;
}

// 4 clusters of 100 points at the corners of a square of side 10, stddev 0.125.
inline std::vector<FeatureVector> four_clusters(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FeatureVector> out;
  for (const FeatureVector& c : {FeatureVector{0, 0}, FeatureVector{10, 0}, FeatureVector{0, 10},
                                 FeatureVector{10, 10}}) {
    auto part = gaussian_cluster(rng, c, 0.125, 100);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::vector<Bounds> bounds_of(const std::vector<FeatureVector>& data) {
  std::vector<Bounds> b(data.front().size());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = {data[0][k], data[0][k]};
  for (const auto& v : data) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      b[k].min = std::min(b[k].min, v[k]);
      b[k].max = std::max(b[k].max, v[k]);
    }
  }
  return b;
}

}  // namespace somguard::fixtures
