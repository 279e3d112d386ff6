#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "somguard/error.hpp"
#include "somguard/grid.hpp"
#include "somguard/random.hpp"

namespace somguard {

using FeatureVector = std::vector<double>;

struct Bounds {
  double min = 0.0;
  double max = 0.0;
};

// Lattice of nodes, each holding a weight vector of length dim. Weights are
// stored contiguously in row-major node order.
class SomMap {
public:
  SomMap(GridShape shape, std::size_t dim, std::vector<double> weights, std::uint64_t seed = 0,
         std::uint64_t steps_trained = 0)
      : shape_(shape), dim_(dim), weights_(std::move(weights)), seed_(seed),
        steps_trained_(steps_trained) {
    if (dim_ == 0) {
      throw domain_error("map dimension must be at least 1");
    }
    if (weights_.size() != shape_.node_count() * dim_) {
      throw domain_error("expected " + std::to_string(shape_.node_count() * dim_) +
                         " weight components, got " + std::to_string(weights_.size()));
    }
    for (double w : weights_) {
      if (!std::isfinite(w)) throw domain_error("map weights must be finite");
    }
  }

  const GridShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t node_count() const noexcept { return shape_.node_count(); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t steps_trained() const noexcept { return steps_trained_; }

  std::span<const double> weight(std::size_t node) const {
    check_node(node);
    return {weights_.data() + node * dim_, dim_};
  }
  std::span<double> weight(std::size_t node) {
    check_node(node);
    return {weights_.data() + node * dim_, dim_};
  }

  std::span<const double> weights() const noexcept { return weights_; }

  void count_step() noexcept { ++steps_trained_; }

  friend bool operator==(const SomMap&, const SomMap&) = default;

private:
  void check_node(std::size_t node) const {
    if (node >= shape_.node_count()) {
      throw domain_error("node index " + std::to_string(node) + " out of range (" +
                         std::to_string(shape_.node_count()) + " nodes)");
    }
  }

  GridShape shape_;
  std::size_t dim_;
  std::vector<double> weights_;
  std::uint64_t seed_;
  std::uint64_t steps_trained_;
};

inline void check_dimension(const SomMap& map, std::span<const double> x) {
  if (x.size() != map.dim()) {
    throw domain_error("dimension mismatch: map expects " + std::to_string(map.dim()) +
                       ", input has " + std::to_string(x.size()));
  }
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Every component drawn uniformly from its dimension's [min, max].
inline SomMap initialize(GridShape shape, std::size_t dim, std::span<const Bounds> bounds,
                         std::uint64_t seed) {
  if (dim == 0) throw domain_error("map dimension must be at least 1");
  if (bounds.size() != dim) {
    throw domain_error("expected " + std::to_string(dim) + " bounds, got " +
                       std::to_string(bounds.size()));
  }
  for (std::size_t k = 0; k < dim; ++k) {
    if (!(bounds[k].min <= bounds[k].max) || !std::isfinite(bounds[k].min) ||
        !std::isfinite(bounds[k].max)) {
      throw domain_error("invalid bounds in dimension " + std::to_string(k));
    }
  }
  Rng rng(seed);
  std::vector<double> weights(shape.node_count() * dim);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const Bounds& b = bounds[i % dim];
    weights[i] = uniform_between(rng, b.min, b.max);
  }
  return SomMap(shape, dim, std::move(weights), seed, 0);
}

struct BestMatch {
  std::size_t node = 0;
  double distance = 0.0;
};

// Winner node minimizing ||x - w_i||. Ties go to the lowest node index.
inline BestMatch find_bmu(const SomMap& map, std::span<const double> x) {
  check_dimension(map, x);
  const std::size_t dim = map.dim();
  const auto w = map.weights();
  std::size_t best = 0;
  double best_sq = 0.0;
  for (std::size_t i = 0; i < map.node_count(); ++i) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = x[k] - w[i * dim + k];
      sq += d * d;
    }
    if (i == 0 || sq < best_sq) {
      best = i;
      best_sq = sq;
    }
  }
  return {best, std::sqrt(best_sq)};
}

// Gaussian neighborhood factor alpha * exp(-||r_c - r_i||^2 / (2 sigma^2)).
inline double kernel(const GridPosition& c, const GridPosition& i, double alpha, double sigma) {
  if (!(sigma > 0.0)) throw domain_error("neighborhood width must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw domain_error("learning rate must lie in (0, 1]");
  return alpha * std::exp(-grid_distance_squared(c, i) / (2.0 * sigma * sigma));
}

struct AdaptOptions {
  // Skip nodes farther than cutoff_sigmas * sigma from the winner; 0 disables.
  double cutoff_sigmas = 0.0;
};

// One adaptation step: w_i += h_ci * (x - w_i) for every node i.
inline void adapt(SomMap& map, std::span<const double> x, std::size_t winner, double alpha,
                  double sigma, const AdaptOptions& options = {}) {
  check_dimension(map, x);
  const GridShape& shape = map.shape();
  const GridPosition c = position_of(winner, shape);
  const double cutoff_sq = options.cutoff_sigmas > 0.0
                               ? (options.cutoff_sigmas * sigma) * (options.cutoff_sigmas * sigma)
                               : 0.0;
  // Validates alpha and sigma even when every node is cut off.
  (void)kernel(c, c, alpha, sigma);
  for (std::size_t i = 0; i < map.node_count(); ++i) {
    const GridPosition r = position_of(i, shape);
    if (cutoff_sq > 0.0 && grid_distance_squared(c, r) > cutoff_sq) continue;
    const double h = kernel(c, r, alpha, sigma);
    auto w = map.weight(i);
    for (std::size_t k = 0; k < w.size(); ++k) {
      w[k] += h * (x[k] - w[k]);
    }
  }
  map.count_step();
}

// Mean BMU distance over data.
inline double quantization_error(const SomMap& map, std::span<const FeatureVector> data) {
  if (data.empty()) throw domain_error("quantization error needs at least one vector");
  double sum = 0.0;
  for (const auto& x : data) {
    sum += find_bmu(map, x).distance;
  }
  return sum / static_cast<double>(data.size());
}

}  // namespace somguard
