#pragma once

// Command implementations behind the `bloomstream` tool. Errors surface as
// ConfigError (exit 3, or 1 for `params` arguments), IoError (exit 2).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bloomstream/bench.hpp"
#include "bloomstream/hashcore.hpp"
#include "bloomstream/params.hpp"

namespace bloomstream::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kConfig = 3 };

// ---------------------------------------------------------------- params

struct ParamsRequest {
  std::uint64_t n = 6935;
  double fp = 0.0078;
  double lambda = 0.001;
  double density_threshold = 3.0;
  std::size_t dims = 5;
};

struct ParamsReport {
  ParamsRequest request;
  Geometry geometry;
  CountMinGuarantees cm;
  // Absent when the guarantees are vacuous (delta >= 1).
  std::optional<std::uint64_t> base_hash_count;
  std::uint64_t fragment_capacity = 0;
  double predicted_fp = 0.0;
  double predicted_fp_asymptotic = 0.0;
  std::uint64_t signature_bytes = 0;  // one m-bit cluster signature
  std::uint64_t countmin_bytes = 0;   // k*p counters plus timestamps
};

ParamsReport cmd_params(const ParamsRequest& request);
std::string format_params_text(const ParamsReport& report);
std::string format_params_json(const ParamsReport& report);

// ------------------------------------------------------------------- gen

void write_stream_csv(std::ostream& out, std::span<const LabeledPoint> points, std::size_t dims);
void cmd_gen(const SyntheticStreamConfig& cfg, const std::filesystem::path& out_path);

// ------------------------------------------------------------------- run

struct ColumnSpec {
  bool header = true;
  // Names (with a header) or zero-based indices. Empty: every column other
  // than the truth and timestamp columns.
  std::vector<std::string> features;
  // Defaults to "label" / "t" when a header is present and has them.
  std::optional<std::string> truth;
  std::optional<std::string> time;
};

struct RunConfig {
  std::filesystem::path input;
  ColumnSpec columns;
  std::optional<std::size_t> dims;  // must match the feature column count
  std::uint64_t n = 6935;
  double fp = 0.0078;
  double lambda = 0.001;
  double density_threshold = 3.0;
  double resolution = 1.5;
  std::vector<double> origin;
  std::size_t horizon = 2000;
  std::uint64_t seed1 = HashFamily::kDefaultSeed1;
  std::uint64_t seed2 = HashFamily::kDefaultSeed2;
  // Streaming min-max normalization to [0, 1]: the first `normalize_warmup`
  // rows fix per-feature ranges and are then replayed. 0 disables it.
  std::size_t normalize_warmup = 0;
};

struct RunSummary {
  std::size_t rows = 0;       // data rows read
  std::size_t malformed = 0;  // skipped rows
  std::size_t rejected = 0;   // parsed but rejected by the model
  std::size_t windows = 0;
  bool has_truth = false;
  ModelStats stats;
};

// Writes `row_id,predicted_label` to assignments and one JSON object per
// window to metrics.
RunSummary cmd_run(const RunConfig& cfg, std::ostream& assignments, std::ostream& metrics);
RunSummary cmd_run(const RunConfig& cfg, std::istream& input, std::ostream& assignments,
                   std::ostream& metrics);

std::string format_window_json(const WindowMetrics& metrics);
std::string format_summary_json(const RunSummary& summary);

}  // namespace bloomstream::cli
