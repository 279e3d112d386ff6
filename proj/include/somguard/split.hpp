#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "somguard/dataset.hpp"
#include "somguard/error.hpp"
#include "somguard/random.hpp"

namespace somguard {

struct SplitFractions {
  double train = 1.0;
  double calibrate = 0.0;
  double test = 0.0;
};

struct DatasetSplit {
  Dataset train;
  Dataset calibrate;
  Dataset test;
};

namespace detail {
inline Dataset take_rows(const Dataset& src, const std::vector<std::size_t>& order,
                         std::size_t begin, std::size_t end) {
  Dataset out;
  out.column_names = src.column_names;
  if (src.labels) out.labels.emplace();
  for (std::size_t i = begin; i < end; ++i) {
    out.vectors.push_back(src.vectors[order[i]]);
    if (src.labels) out.labels->push_back((*src.labels)[order[i]]);
  }
  return out;
}
}  // namespace detail

/// Seeded Fisher-Yates shuffle followed by a contiguous partition. The
/// calibration and test counts are round(N * fraction); train takes the rest.
inline DatasetSplit split(const Dataset& data, const SplitFractions& f, std::uint64_t seed) {
  if (data.empty()) throw domain_error("cannot split an empty dataset");
  if (!(f.train >= 0.0 && f.calibrate >= 0.0 && f.test >= 0.0) ||
      std::abs(f.train + f.calibrate + f.test - 1.0) > 1e-9) {
    throw domain_error("split fractions must be non-negative and sum to 1");
  }
  const std::size_t n = data.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[uniform_index(rng, i + 1)]);
  }

  const auto rounded = [n](double frac) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) * frac));
  };
  const std::size_t n_cal = std::min(rounded(f.calibrate), n);
  const std::size_t n_test = std::min(rounded(f.test), n - n_cal);
  const std::size_t n_train = n - n_cal - n_test;

  return {detail::take_rows(data, order, 0, n_train),
          detail::take_rows(data, order, n_train, n_train + n_cal),
          detail::take_rows(data, order, n_train + n_cal, n)};
}

}  // namespace somguard
