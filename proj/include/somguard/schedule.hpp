#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "somguard/error.hpp"
#include "somguard/grid.hpp"

namespace somguard {

struct ScheduleValue {
  double alpha = 0.0;
  double sigma = 0.0;
};

/// Piecewise-linear learning-rate and neighborhood-width decay.
///
/// Steps [0, ordering_steps) form the global ordering stage: alpha falls
/// linearly from alpha_start toward alpha_mid while sigma falls from
/// sigma_start toward sigma_end. The remaining steps are the fine-tuning
/// stage: alpha falls from alpha_mid toward alpha_end and sigma stays at
/// sigma_end. A "step" is one stimulus/response/adaptation cycle.
struct TrainingSchedule {
  std::uint64_t ordering_steps = 1000;
  std::uint64_t total_steps = 0;
  double alpha_start = 0.9;
  double alpha_mid = 0.2;
  double alpha_end = 0.01;
  double sigma_start = 1.0;
  double sigma_end = 1.0;

  void validate() const {
    if (!(alpha_end > 0.0 && alpha_end <= alpha_mid && alpha_mid <= alpha_start &&
          alpha_start <= 1.0)) {
      throw domain_error("schedule requires 0 < alpha_end <= alpha_mid <= alpha_start <= 1");
    }
    if (!(sigma_end > 0.0 && sigma_end <= sigma_start)) {
      throw domain_error("schedule requires 0 < sigma_end <= sigma_start");
    }
    if (ordering_steps > total_steps) {
      throw domain_error("ordering_steps (" + std::to_string(ordering_steps) +
                         ") exceeds total_steps (" + std::to_string(total_steps) + ")");
    }
  }
};

// 500 steps per map unit; ordering stage of 1000 steps, shortened for tiny maps.
inline TrainingSchedule default_schedule(const GridShape& shape) {
  TrainingSchedule s;
  s.total_steps = 500 * static_cast<std::uint64_t>(shape.node_count());
  s.ordering_steps = std::min<std::uint64_t>(1000, s.total_steps);
  s.sigma_end = 1.0;
  s.sigma_start = std::max(static_cast<double>(std::max(shape.rows(), shape.cols())) / 2.0,
                           s.sigma_end);
  return s;
}

namespace detail {
// Linear interpolation from `from` down to `to`, clamped so rounding can
// never step outside [to, from].
inline double decay(double from, double to, double fraction) {
  const double v = from + (to - from) * fraction;
  return std::clamp(v, to, from);
}
}  // namespace detail

inline ScheduleValue schedule_at(const TrainingSchedule& s, std::uint64_t t) {
  if (t >= s.total_steps) {
    throw domain_error("step " + std::to_string(t) + " outside schedule of " +
                       std::to_string(s.total_steps) + " steps");
  }
  if (t < s.ordering_steps) {
    const double f = static_cast<double>(t) / static_cast<double>(s.ordering_steps);
    return {detail::decay(s.alpha_start, s.alpha_mid, f),
            detail::decay(s.sigma_start, s.sigma_end, f)};
  }
  const double f = static_cast<double>(t - s.ordering_steps) /
                   static_cast<double>(s.total_steps - s.ordering_steps);
  return {detail::decay(s.alpha_mid, s.alpha_end, f), s.sigma_end};
}

}  // namespace somguard
