#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "somguard/error.hpp"
#include "somguard/random.hpp"
#include "somguard/schedule.hpp"
#include "somguard/som_map.hpp"

namespace somguard {

// Uniform draw with replacement.
inline const FeatureVector& select_stimulus(std::span<const FeatureVector> training_set,
                                            Rng& rng) {
  if (training_set.empty()) throw domain_error("cannot select a stimulus from an empty set");
  return training_set[uniform_index(rng, training_set.size())];
}

struct QeSample {
  std::uint64_t step = 0;
  double qe = 0.0;
};

struct TrainingReport {
  std::uint64_t steps = 0;
  double initial_qe = 0.0;
  double final_qe = 0.0;
  std::vector<QeSample> qe_history;
  bool stopped_early = false;
};

struct TrainOptions {
  // Record the quantization error every this many steps (plus start and end).
  std::uint64_t qe_sample_every = 1000;
  // Stop as soon as a sampled quantization error falls below this value.
  std::optional<double> stop_below_qe;
  AdaptOptions adapt;
};

/// Runs schedule.total_steps cycles of stimulus selection, BMU search and
/// adaptation. The stimulus stream is seeded from the map's seed, so a map
/// initialized and trained with identical inputs is bit-identical.
inline TrainingReport train(SomMap& map, std::span<const FeatureVector> training_set,
                            const TrainingSchedule& schedule, const TrainOptions& options = {}) {
  if (training_set.empty()) throw domain_error("training set is empty");
  for (const auto& x : training_set) check_dimension(map, x);
  schedule.validate();

  // Separate stream from the one used by initialize().
  Rng rng(map.seed() ^ 0x9e3779b97f4a7c15ULL);

  TrainingReport report;
  report.initial_qe = quantization_error(map, training_set);
  report.qe_history.push_back({0, report.initial_qe});
  double last_qe = report.initial_qe;
  std::uint64_t last_sampled = 0;

  auto below_threshold = [&](double qe) {
    return options.stop_below_qe && qe < *options.stop_below_qe;
  };

  if (!below_threshold(last_qe)) {
    for (std::uint64_t t = 0; t < schedule.total_steps; ++t) {
      const FeatureVector& x = select_stimulus(training_set, rng);
      const BestMatch bmu = find_bmu(map, x);
      const ScheduleValue v = schedule_at(schedule, t);
      adapt(map, x, bmu.node, v.alpha, v.sigma, options.adapt);
      report.steps = t + 1;

      if (options.qe_sample_every > 0 && report.steps % options.qe_sample_every == 0) {
        last_qe = quantization_error(map, training_set);
        last_sampled = report.steps;
        report.qe_history.push_back({report.steps, last_qe});
        if (below_threshold(last_qe)) {
          report.stopped_early = report.steps < schedule.total_steps;
          break;
        }
      }
    }
  } else {
    report.stopped_early = schedule.total_steps > 0;
  }

  if (last_sampled != report.steps) {
    last_qe = quantization_error(map, training_set);
    report.qe_history.push_back({report.steps, last_qe});
  }
  report.final_qe = last_qe;
  return report;
}

}  // namespace somguard
