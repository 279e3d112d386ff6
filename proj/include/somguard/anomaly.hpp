#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "somguard/error.hpp"
#include "somguard/format.hpp"
#include "somguard/label.hpp"
#include "somguard/som_map.hpp"

namespace somguard {

/// A trained map plus the residual threshold that separates normal inputs
/// from deviations. The residual of an input is its BMU distance.
struct AnomalyBaseline {
  SomMap map;
  double threshold = 0.0;
  double threshold_percentile = 100.0;
  std::size_t calibration_size = 0;
};

struct Verdict {
  std::size_t input_index = 0;
  std::size_t bmu = 0;
  double residual = 0.0;
  bool is_anomalous = false;
};

struct EvalSummary {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_negatives = 0;
  double detection_rate = 0.0;
  double false_positive_rate = 0.0;
  // Set when the class is absent and the corresponding rate is reported as 0.
  bool no_anomalous_labels = false;
  bool no_normal_labels = false;
};

// Nearest-rank percentile: the ceil(p/100 * N)-th smallest value (1-based).
inline double nearest_rank_percentile(std::vector<double> values, double percentile) {
  if (values.empty()) throw domain_error("percentile of an empty set");
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw domain_error("percentile must lie in (0, 100], got " + format_double(percentile));
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

inline AnomalyBaseline calibrate(SomMap map, std::span<const FeatureVector> normal_data,
                                 double percentile) {
  if (normal_data.empty()) throw domain_error("calibration set is empty");
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw domain_error("percentile must lie in (0, 100], got " + format_double(percentile));
  }
  std::vector<double> residuals;
  residuals.reserve(normal_data.size());
  for (const auto& x : normal_data) residuals.push_back(find_bmu(map, x).distance);
  const double threshold = nearest_rank_percentile(std::move(residuals), percentile);
  return AnomalyBaseline{std::move(map), threshold, percentile, normal_data.size()};
}

// Strictly above the threshold is anomalous; the boundary counts as normal.
inline Verdict score(const AnomalyBaseline& baseline, std::span<const double> x,
                     std::size_t input_index = 0) {
  const BestMatch bmu = find_bmu(baseline.map, x);
  return {input_index, bmu.node, bmu.distance, bmu.distance > baseline.threshold};
}

inline std::vector<Verdict> score_all(const AnomalyBaseline& baseline,
                                      std::span<const FeatureVector> data) {
  std::vector<Verdict> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out.push_back(score(baseline, data[i], i));
  return out;
}

inline EvalSummary summarize(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
  EvalSummary s;
  s.true_positives = tp;
  s.false_positives = fp;
  s.true_negatives = tn;
  s.false_negatives = fn;
  s.no_anomalous_labels = tp + fn == 0;
  s.no_normal_labels = fp + tn == 0;
  s.detection_rate = s.no_anomalous_labels ? 0.0 : static_cast<double>(tp) / (tp + fn);
  s.false_positive_rate = s.no_normal_labels ? 0.0 : static_cast<double>(fp) / (fp + tn);
  return s;
}

inline EvalSummary evaluate(const AnomalyBaseline& baseline, std::span<const FeatureVector> data,
                            std::span<const Label> labels) {
  if (data.empty()) throw domain_error("nothing to evaluate");
  if (labels.size() != data.size()) {
    throw domain_error("expected one label per vector (" + std::to_string(data.size()) +
                       " vectors, " + std::to_string(labels.size()) + " labels)");
  }
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool flagged = score(baseline, data[i], i).is_anomalous;
    if (labels[i] == Label::Anomalous) {
      (flagged ? tp : fn)++;
    } else {
      (flagged ? fp : tn)++;
    }
  }
  return summarize(tp, fp, tn, fn);
}

// TP,FP,TN,FN,detection_rate,false_positive_rate
inline std::string summary_line(const EvalSummary& s) {
  std::ostringstream os;
  os << s.true_positives << ',' << s.false_positives << ',' << s.true_negatives << ','
     << s.false_negatives << ',' << format_fixed4(s.detection_rate) << ','
     << format_fixed4(s.false_positive_rate);
  return os.str();
}

inline void write_verdicts_csv(std::span<const Verdict> verdicts, std::ostream& out) {
  out << "index,bmu,residual,is_anomalous\n";
  for (const auto& v : verdicts) {
    out << v.input_index << ',' << v.bmu << ',' << format_double(v.residual) << ','
        << (v.is_anomalous ? 1 : 0) << '\n';
  }
}

inline constexpr int kBaselineFormatVersion = 1;

// Threshold record only; the map is stored in its own file.
inline void save_baseline(const AnomalyBaseline& b, std::ostream& out) {
  out << "SOMGUARD-BASELINE " << kBaselineFormatVersion << '\n'
      << "threshold " << format_double(b.threshold) << '\n'
      << "percentile " << format_double(b.threshold_percentile) << '\n'
      << "calibration_size " << b.calibration_size << '\n';
}

inline AnomalyBaseline load_baseline(SomMap map, std::istream& in) {
  std::string magic, key;
  int version = 0;
  if (!(in >> magic >> version) || magic != "SOMGUARD-BASELINE") {
    throw format_error("not a somguard baseline file");
  }
  if (version != kBaselineFormatVersion) {
    throw format_error("unsupported baseline format version " + std::to_string(version));
  }
  std::string threshold, percentile;
  std::size_t size = 0;
  if (!(in >> key) || key != "threshold" || !(in >> threshold) || !(in >> key) ||
      key != "percentile" || !(in >> percentile) || !(in >> key) || key != "calibration_size" ||
      !(in >> size)) {
    throw format_error("unexpected end of baseline file");
  }
  const auto t = parse_double(threshold);
  const auto p = parse_double(percentile);
  if (!t || !(*t >= 0.0) || !p || !(*p > 0.0 && *p <= 100.0) || size == 0) {
    throw format_error("malformed baseline values");
  }
  return AnomalyBaseline{std::move(map), *t, *p, size};
}

}  // namespace somguard
