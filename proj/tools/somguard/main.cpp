#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "somguard/cli.hpp"

namespace {

void add_data_flags(CLI::App* cmd, somguard::cli::RunConfig& cfg) {
  cmd->add_flag("!--no-header", cfg.has_header, "CSV files have no header line");
  cmd->add_option("--label-column", cfg.label_column, "Name of the label column (normal/anomalous)");
}

void add_detection_flags(CLI::App* cmd, somguard::cli::RunConfig& cfg) {
  cmd->add_option("--map", cfg.map, "Trained map file")->required();
  cmd->add_option("--normalizer", cfg.normalizer, "Normalizer file (default: <map>.norm)");
  cmd->add_option("--calibrate", cfg.calibrate,
                  "Normal data for threshold calibration (default: <map>.calibrate.csv)");
  cmd->add_option("--baseline", cfg.baseline, "Load a saved threshold instead of calibrating");
  cmd->add_option("--percentile", cfg.percentile, "Residual percentile used as threshold")
      ->check(CLI::Range(0.0, 100.0));
  cmd->add_option("--input", cfg.input, "CSV data to score")->required();
  add_data_flags(cmd, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  using somguard::cli::RunConfig;
  RunConfig cfg;

  CLI::App app{"Self-organising map training, U-Matrix export and anomaly detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       "somguard 1.0.0\nmap format " + std::to_string(somguard::kMapFormatVersion) +
                           "\nnormalizer format " +
                           std::to_string(somguard::kNormalizerFormatVersion) +
                           "\nbaseline format " +
                           std::to_string(somguard::kBaselineFormatVersion) + "\nverdict csv 1");

  auto* train = app.add_subcommand("train", "Train a map on CSV feature data");
  train->add_option("--input", cfg.input, "Training CSV")->required();
  train->add_option("--out", cfg.out, "Output map file")->required()->expected(1);
  train->add_option("--rows", cfg.rows, "Map rows")->check(CLI::PositiveNumber);
  train->add_option("--cols", cfg.cols, "Map columns")->check(CLI::PositiveNumber);
  train->add_option("--seed", cfg.seed, "Seed for every random choice");
  train->add_option("--normalize", cfg.normalization, "minmax, zscore or none");
  train->add_option("--steps", cfg.schedule.total_steps, "Total steps (default 500 x map units)");
  train->add_option("--ordering-steps", cfg.schedule.ordering_steps, "Global ordering steps");
  train->add_option("--alpha-start", cfg.schedule.alpha_start);
  train->add_option("--alpha-mid", cfg.schedule.alpha_mid);
  train->add_option("--alpha-end", cfg.schedule.alpha_end);
  train->add_option("--sigma-start", cfg.schedule.sigma_start);
  train->add_option("--sigma-end", cfg.schedule.sigma_end);
  train->add_option("--qe-every", cfg.qe_sample_every, "Quantization error sampling interval");
  train->add_option("--stop-below-qe", cfg.stop_below_qe, "Stop once a sampled QE is below this");
  train->add_option("--kernel-cutoff", cfg.kernel_cutoff,
                    "Skip nodes beyond this many sigmas from the winner (0 = off)");
  train->add_option("--report", cfg.report, "Also write the training report here");
  std::vector<double> fractions;
  train->add_option("--split", fractions, "train,calibrate,test fractions")
      ->delimiter(',')
      ->expected(3);
  add_data_flags(train, cfg);

  auto* umatrix = app.add_subcommand("umatrix", "Compute and export a U-Matrix");
  umatrix->add_option("--map", cfg.map, "Trained map file")->required();
  umatrix->add_option("--format", cfg.formats, "grid-csv or grayscale-image (repeatable)");
  umatrix->add_option("--out", cfg.out, "Output file, one per --format (default: stdout)");

  auto* detect = app.add_subcommand("detect", "Score data against a calibrated baseline");
  add_detection_flags(detect, cfg);
  detect->add_option("--out", cfg.out, "Verdict CSV (default: stdout)")->expected(1);
  detect->add_option("--save-baseline", cfg.save_baseline, "Write the calibrated threshold here");

  auto* eval = app.add_subcommand("eval", "Evaluate detection against labeled data");
  add_detection_flags(eval, cfg);

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  if (fractions.size() == 3) cfg.split = somguard::SplitFractions{fractions[0], fractions[1], fractions[2]};
  return somguard::cli::run(cfg);
}
