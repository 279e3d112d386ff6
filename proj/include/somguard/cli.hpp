#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "somguard/anomaly.hpp"
#include "somguard/dataset.hpp"
#include "somguard/error.hpp"
#include "somguard/format.hpp"
#include "somguard/map_io.hpp"
#include "somguard/normalize.hpp"
#include "somguard/schedule.hpp"
#include "somguard/split.hpp"
#include "somguard/training.hpp"
#include "somguard/umatrix.hpp"

namespace somguard::cli {

namespace fs = std::filesystem;

struct ScheduleOverrides {
  std::optional<std::uint64_t> total_steps;
  std::optional<std::uint64_t> ordering_steps;
  std::optional<double> alpha_start;
  std::optional<double> alpha_mid;
  std::optional<double> alpha_end;
  std::optional<double> sigma_start;
  std::optional<double> sigma_end;
};

struct RunConfig {
  std::string command;

  fs::path input;
  fs::path map;
  std::vector<fs::path> out;
  std::optional<fs::path> normalizer;  // default: <map>.norm
  std::optional<fs::path> calibrate;   // default: <map>.calibrate.csv when present
  std::optional<fs::path> baseline;    // load a saved threshold instead of calibrating
  std::optional<fs::path> save_baseline;
  std::optional<fs::path> report;

  std::size_t rows = 10;
  std::size_t cols = 10;
  std::uint64_t seed = 1;
  ScheduleOverrides schedule;
  std::uint64_t qe_sample_every = 1000;
  std::optional<double> stop_below_qe;
  double kernel_cutoff = 0.0;
  std::optional<SplitFractions> split;

  std::string normalization = "minmax";
  double percentile = 99.0;
  bool has_header = true;
  std::optional<std::string> label_column;
  std::vector<std::string> formats;
};

inline fs::path normalizer_path_for(const fs::path& map) { return fs::path(map.string() + ".norm"); }
inline fs::path calibration_path_for(const fs::path& map) {
  return fs::path(map.string() + ".calibrate.csv");
}
inline fs::path test_path_for(const fs::path& map) { return fs::path(map.string() + ".test.csv"); }

namespace detail {

class command_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::ifstream open_input(const fs::path& path, std::string_view role) {
  if (!fs::is_regular_file(path)) {
    throw command_error(std::string(role) + " file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw command_error("cannot read " + std::string(role) + " file: " + path.string());
  return in;
}

inline Dataset read_dataset(const fs::path& path, std::string_view role, const CsvOptions& opts) {
  auto in = open_input(path, role);
  try {
    return load_csv(in, opts);
  } catch (const parse_error& e) {
    throw command_error(path.string() + ": " + e.what());
  }
}

inline SomMap read_map(const fs::path& path) {
  auto in = open_input(path, "map");
  try {
    return load_map(in);
  } catch (const format_error& e) {
    throw command_error(path.string() + ": " + e.what());
  }
}

inline NormalizationModel read_normalizer(const RunConfig& cfg, std::size_t map_dim) {
  const fs::path path = cfg.normalizer.value_or(normalizer_path_for(cfg.map));
  if (!fs::is_regular_file(path)) {
    throw command_error("normalizer not found: " + path.string() +
                        " (it is written by 'train' next to the map)");
  }
  auto in = open_input(path, "normalizer");
  NormalizationModel m;
  try {
    m = load_normalizer(in);
  } catch (const format_error& e) {
    throw command_error(path.string() + ": " + e.what());
  }
  if (m.dim() != map_dim) {
    throw command_error("dimension mismatch: map expects " + std::to_string(map_dim) +
                        ", normalizer has " + std::to_string(m.dim()));
  }
  return m;
}

inline void require_dim(const Dataset& ds, std::size_t expected, const fs::path& path) {
  if (ds.dim() != expected) {
    throw command_error("dimension mismatch: map expects " + std::to_string(expected) +
                        ", " + path.string() + " has " + std::to_string(ds.dim()));
  }
}

// Collects files written to temporaries and renames them into place only once
// every artifact has been produced.
class ArtifactWriter {
public:
  ArtifactWriter() = default;
  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;
  ~ArtifactWriter() {
    std::error_code ec;
    for (const auto& [tmp, dst] : pending_) fs::remove(tmp, ec);
  }

  void add(const fs::path& dst, const std::function<void(std::ostream&)>& body) {
    const fs::path tmp = fs::path(dst.string() + ".partial");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw command_error("cannot write " + dst.string());
      pending_.emplace_back(tmp, dst);
      body(out);
      out.flush();
      if (!out) throw command_error("failed while writing " + dst.string());
    }
  }

  void commit() {
    for (const auto& [tmp, dst] : pending_) fs::rename(tmp, dst);
    pending_.clear();
  }

private:
  std::vector<std::pair<fs::path, fs::path>> pending_;
};

inline TrainingSchedule build_schedule(const RunConfig& cfg, const GridShape& shape) {
  TrainingSchedule s = default_schedule(shape);
  const auto& o = cfg.schedule;
  if (o.total_steps) {
    s.total_steps = *o.total_steps;
    if (!o.ordering_steps) s.ordering_steps = std::min(s.ordering_steps, s.total_steps);
  }
  if (o.ordering_steps) s.ordering_steps = *o.ordering_steps;
  if (o.alpha_start) s.alpha_start = *o.alpha_start;
  if (o.alpha_mid) s.alpha_mid = *o.alpha_mid;
  if (o.alpha_end) s.alpha_end = *o.alpha_end;
  if (o.sigma_start) s.sigma_start = *o.sigma_start;
  if (o.sigma_end) s.sigma_end = *o.sigma_end;
  s.validate();
  return s;
}

inline void print_report(const TrainingReport& r, std::ostream& out) {
  out << "steps " << r.steps << '\n'
      << "initial_qe " << format_double(r.initial_qe) << '\n'
      << "final_qe " << format_double(r.final_qe) << '\n';
  if (r.stopped_early) out << "stopped_early 1\n";
  for (const auto& s : r.qe_history) out << "qe " << s.step << ' ' << format_double(s.qe) << '\n';
}

inline int guarded(const std::string& command, std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    err << "somguard " << command << ": error: " << e.what() << '\n';
    return 1;
  }
}

// Calibrated (or loaded) baseline plus the normalizer that goes with it.
struct DetectionContext {
  AnomalyBaseline baseline;
  NormalizationModel normalizer;
};

inline DetectionContext prepare_detection(const RunConfig& cfg) {
  SomMap map = read_map(cfg.map);
  NormalizationModel norm = read_normalizer(cfg, map.dim());
  if (cfg.baseline) {
    auto in = open_input(*cfg.baseline, "baseline");
    try {
      return {load_baseline(std::move(map), in), std::move(norm)};
    } catch (const format_error& e) {
      throw command_error(cfg.baseline->string() + ": " + e.what());
    }
  }
  fs::path cal_path;
  if (cfg.calibrate) {
    cal_path = *cfg.calibrate;
  } else if (fs::is_regular_file(calibration_path_for(cfg.map))) {
    cal_path = calibration_path_for(cfg.map);
  } else {
    throw command_error("no calibration data: pass --calibrate or --baseline");
  }
  Dataset cal = read_dataset(cal_path, "calibration", {cfg.has_header, std::nullopt});
  require_dim(cal, map.dim(), cal_path);
  cal = apply_normalizer(norm, cal);
  return {calibrate(std::move(map), cal.vectors, cfg.percentile), std::move(norm)};
}

}  // namespace detail

inline int run_train(const RunConfig& cfg, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
  return detail::guarded("train", err, [&] {
    if (cfg.out.size() != 1) throw detail::command_error("train needs exactly one --out map path");
    const fs::path& map_path = cfg.out.front();
    const GridShape shape(cfg.rows, cfg.cols);
    const auto method = parse_normalization(cfg.normalization);
    const TrainingSchedule schedule = detail::build_schedule(cfg, shape);

    Dataset all = detail::read_dataset(cfg.input, "input", {cfg.has_header, cfg.label_column});
    Dataset training = all;
    std::optional<DatasetSplit> parts;
    if (cfg.split) {
      parts = split(all, *cfg.split, cfg.seed);
      training = parts->train;
      if (training.empty()) throw detail::command_error("split leaves no training rows");
    }

    const NormalizationModel norm = fit_normalizer(training, method);
    const Dataset scaled = apply_normalizer(norm, training);

    SomMap map = initialize(shape, scaled.dim(), data_bounds(scaled), cfg.seed);
    TrainOptions opts;
    opts.qe_sample_every = cfg.qe_sample_every;
    opts.stop_below_qe = cfg.stop_below_qe;
    opts.adapt.cutoff_sigmas = cfg.kernel_cutoff;
    const TrainingReport report = train(map, scaled.vectors, schedule, opts);

    detail::ArtifactWriter writer;
    writer.add(map_path, [&](std::ostream& os) { save_map(map, os); });
    writer.add(normalizer_path_for(map_path), [&](std::ostream& os) { save_normalizer(norm, os); });
    if (parts) {
      const std::string label_name = cfg.label_column.value_or("label");
      // Calibration data is treated as normal, so its labels are dropped.
      Dataset cal = parts->calibrate;
      cal.labels.reset();
      writer.add(calibration_path_for(map_path), [&](std::ostream& os) { write_csv(cal, os); });
      writer.add(test_path_for(map_path),
                 [&](std::ostream& os) { write_csv(parts->test, os, true, label_name); });
    }
    if (cfg.report) writer.add(*cfg.report, [&](std::ostream& os) { detail::print_report(report, os); });
    writer.commit();

    detail::print_report(report, out);
  });
}

inline int run_umatrix(const RunConfig& cfg, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  return detail::guarded("umatrix", err, [&] {
    std::vector<UMatrixFormat> formats;
    for (const auto& tag : cfg.formats) formats.push_back(parse_umatrix_format(tag));
    if (formats.empty()) formats.push_back(UMatrixFormat::GridCsv);
    if (!cfg.out.empty() && cfg.out.size() != formats.size()) {
      throw usage_error("give one --out per --format");
    }
    if (cfg.out.empty() && formats.size() > 1) {
      throw usage_error("several formats need one --out each");
    }

    const UMatrix u = compute_umatrix(detail::read_map(cfg.map));
    if (cfg.out.empty()) {
      export_umatrix(u, formats.front(), out);
      return;
    }
    detail::ArtifactWriter writer;
    for (std::size_t i = 0; i < formats.size(); ++i) {
      writer.add(cfg.out[i], [&](std::ostream& os) { export_umatrix(u, formats[i], os); });
    }
    writer.commit();
  });
}

inline int run_detect(const RunConfig& cfg, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  return detail::guarded("detect", err, [&] {
    if (cfg.out.size() > 1) throw usage_error("detect takes at most one --out path");
    const auto ctx = detail::prepare_detection(cfg);
    Dataset data = detail::read_dataset(cfg.input, "input", {cfg.has_header, cfg.label_column});
    detail::require_dim(data, ctx.baseline.map.dim(), cfg.input);
    data = apply_normalizer(ctx.normalizer, data);

    const auto verdicts = score_all(ctx.baseline, data.vectors);
    std::size_t flagged = 0;
    for (const auto& v : verdicts) flagged += v.is_anomalous ? 1 : 0;

    detail::ArtifactWriter writer;
    if (cfg.save_baseline) {
      writer.add(*cfg.save_baseline, [&](std::ostream& os) { save_baseline(ctx.baseline, os); });
    }
    if (!cfg.out.empty()) {
      writer.add(cfg.out.front(), [&](std::ostream& os) { write_verdicts_csv(verdicts, os); });
    }
    writer.commit();
    if (cfg.out.empty()) write_verdicts_csv(verdicts, out);

    const double rate = static_cast<double>(flagged) / static_cast<double>(verdicts.size());
    std::ostream& summary = cfg.out.empty() ? err : out;
    summary << "threshold " << format_double(ctx.baseline.threshold) << " (percentile "
            << format_double(ctx.baseline.threshold_percentile) << ", "
            << ctx.baseline.calibration_size << " calibration vectors)\n"
            << "total " << verdicts.size() << '\n'
            << "anomalous " << flagged << '\n'
            << "rate " << format_fixed4(rate) << '\n';
  });
}

inline int run_eval(const RunConfig& cfg, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  return detail::guarded("eval", err, [&] {
    const std::string label = cfg.label_column.value_or("label");
    if (!cfg.has_header) throw usage_error("eval needs a header to locate the label column");
    const auto ctx = detail::prepare_detection(cfg);

    auto in = detail::open_input(cfg.input, "input");
    Dataset data;
    try {
      data = load_csv(in, {true, label});
    } catch (const parse_error& e) {
      throw detail::command_error(cfg.input.string() + ": " + e.what());
    }
    detail::require_dim(data, ctx.baseline.map.dim(), cfg.input);
    data = apply_normalizer(ctx.normalizer, data);

    const EvalSummary s = evaluate(ctx.baseline, data.vectors, *data.labels);
    out << "true positives  " << s.true_positives << '\n'
        << "false positives " << s.false_positives << '\n'
        << "true negatives  " << s.true_negatives << '\n'
        << "false negatives " << s.false_negatives << '\n'
        << "detection rate  " << format_fixed4(s.detection_rate)
        << (s.no_anomalous_labels ? " (undefined: no anomalous labels)" : "") << '\n'
        << "false positive rate " << format_fixed4(s.false_positive_rate)
        << (s.no_normal_labels ? " (undefined: no normal labels)" : "") << '\n'
        << summary_line(s) << '\n';
  });
}

inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  if (cfg.command == "train") return run_train(cfg, out, err);
  if (cfg.command == "umatrix") return run_umatrix(cfg, out, err);
  if (cfg.command == "detect") return run_detect(cfg, out, err);
  if (cfg.command == "eval") return run_eval(cfg, out, err);
  err << "somguard: unknown command '" << cfg.command << "'\n";
  return 2;
}

}  // namespace somguard::cli
