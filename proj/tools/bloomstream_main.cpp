// bloomstream: parameter reports, synthetic stream generation and stream
// clustering runs over CSV input.
//
// Exit status: 0 success, 1 usage error, 2 I/O error, 3 configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bloomstream/cli.hpp"
#include "bloomstream/errors.hpp"

namespace cli = bloomstream::cli;

namespace {

std::ostream* open_or(std::optional<std::ofstream>& file, const std::string& path,
                      std::ostream& fallback) {
  if (path.empty() || path == "-") return &fallback;
  file.emplace(path, std::ios::binary | std::ios::trunc);
  if (!*file) throw bloomstream::IoError("cannot open '" + path + "' for writing");
  return &*file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BloomStream: sketch-based density-grid stream clustering"};
  app.require_subcommand(1);

  // params
  cli::ParamsRequest params_req;
  bool params_json = false;
  auto* params = app.add_subcommand("params", "Derive sketch geometry and guarantees");
  params->add_option("-n,--capacity", params_req.n, "Bloom filter capacity (elements)")
      ->capture_default_str();
  params->add_option("--fp", params_req.fp, "Target false-positive probability")
      ->capture_default_str();
  params->add_option("--lambda", params_req.lambda, "Decay rate")->capture_default_str();
  params->add_option("--dth", params_req.density_threshold, "Density threshold")
      ->capture_default_str();
  params->add_option("-d,--dims", params_req.dims, "Stream dimensionality")
      ->capture_default_str();
  params->add_flag("--json", params_json, "Print a single JSON object");

  // gen
  bloomstream::SyntheticStreamConfig gen_cfg;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic Gaussian-cluster stream as CSV");
  gen->add_option("-o,--out", gen_out, "Output CSV path")->required();
  gen->add_option("-d,--dims", gen_cfg.dims, "Dimensionality")->capture_default_str();
  gen->add_option("-c,--clusters", gen_cfg.clusters, "Number of clusters")->capture_default_str();
  gen->add_option("--noise", gen_cfg.noise_fraction, "Noise fraction in [0,1)")
      ->capture_default_str();
  gen->add_option("--separation", gen_cfg.min_center_separation, "Minimum center distance")
      ->capture_default_str();
  gen->add_option("--sd", gen_cfg.cluster_sd, "Per-dimension cluster standard deviation")
      ->capture_default_str();
  gen->add_option("--center-box", gen_cfg.center_box, "Side of the center placement box")
      ->capture_default_str();
  gen->add_option("--window", gen_cfg.window_length, "Window length")->capture_default_str();
  gen->add_option("-N,--instances", gen_cfg.total_instances, "Total instances")
      ->capture_default_str();
  gen->add_option("--seed", gen_cfg.seed, "RNG seed")->capture_default_str();

  // run
  cli::RunConfig run_cfg;
  std::string run_input;
  std::string assignments_path;
  std::string metrics_path;
  std::string features;
  std::string truth_col;
  std::string time_col;
  bool no_header = false;
  std::size_t dims = 0;
  auto* run = app.add_subcommand("run", "Cluster a CSV stream and emit per-window metrics");
  run->add_option("input", run_input, "Input CSV path")->required();
  run->add_option("-a,--assignments", assignments_path, "Assignments CSV output (default: none)");
  run->add_option("-m,--metrics", metrics_path, "Metrics JSON-lines output (default: stdout)");
  run->add_flag("--no-header", no_header, "Input has no header row");
  run->add_option("--features", features, "Comma-separated feature columns (names or indices)");
  run->add_option("--label-col", truth_col, "Ground-truth label column");
  run->add_option("--time-col", time_col, "Timestamp column");
  run->add_option("-d,--dims", dims, "Expected dimensionality (checked)");
  run->add_option("-n,--capacity", run_cfg.n, "Bloom filter capacity")->capture_default_str();
  run->add_option("--fp", run_cfg.fp, "Target false-positive probability")->capture_default_str();
  run->add_option("--lambda", run_cfg.lambda, "Decay rate")->capture_default_str();
  run->add_option("--dth", run_cfg.density_threshold, "Density threshold")->capture_default_str();
  run->add_option("-r,--resolution", run_cfg.resolution, "Grid cell side")->capture_default_str();
  run->add_option("--origin", run_cfg.origin, "Grid origin (d values)")->delimiter(',');
  run->add_option("--horizon", run_cfg.horizon, "Evaluation horizon (instances)")
      ->capture_default_str();
  run->add_option("--seed1", run_cfg.seed1, "First base hash seed");
  run->add_option("--seed2", run_cfg.seed2, "Second base hash seed");
  run->add_option("--normalize-warmup", run_cfg.normalize_warmup,
                  "Min-max normalize using ranges from the first N rows (0 = off)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    if (*params) {
      cli::ParamsReport report;
      try {
        report = cli::cmd_params(params_req);
      } catch (const bloomstream::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return cli::kUsage;
      }
      std::cout << (params_json ? cli::format_params_json(report) + "\n"
                                : cli::format_params_text(report));
      return cli::kOk;
    }

    if (*gen) {
      cli::cmd_gen(gen_cfg, gen_out);
      return cli::kOk;
    }

    if (*run) {
      run_cfg.input = run_input;
      run_cfg.columns.header = !no_header;
      if (!features.empty()) {
        std::string item;
        std::istringstream in(features);
        while (std::getline(in, item, ',')) run_cfg.columns.features.push_back(item);
      }
      if (!truth_col.empty()) run_cfg.columns.truth = truth_col;
      if (!time_col.empty()) run_cfg.columns.time = time_col;
      if (dims > 0) run_cfg.dims = dims;

      std::ostream discard(nullptr);
      std::optional<std::ofstream> assignments_file;
      std::optional<std::ofstream> metrics_file;
      std::ostream* assignments =
          assignments_path.empty() ? &discard : open_or(assignments_file, assignments_path, std::cout);
      std::ostream* metrics = open_or(metrics_file, metrics_path, std::cout);

      const cli::RunSummary summary = cli::cmd_run(run_cfg, *assignments, *metrics);
      std::cerr << cli::format_summary_json(summary) << '\n';
      return cli::kOk;
    }
  } catch (const bloomstream::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return cli::kIo;
  } catch (const bloomstream::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return cli::kConfig;
  }
  return cli::kUsage;
}
