#include "bloomstream/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bloomstream/engine.hpp"
#include "bloomstream/errors.hpp"

namespace bloomstream::cli {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::size_t resolve_column(const std::string& ref, const std::vector<std::string>& names,
                           std::size_t width) {
  if (const auto it = std::find(names.begin(), names.end(), ref); it != names.end()) {
    return static_cast<std::size_t>(it - names.begin());
  }
  if (const auto idx = parse_index(ref); idx && *idx < width) return *idx;
  throw ConfigError("unknown column '" + ref + "'");
}

std::string label_token(const std::optional<Label>& label) {
  return label ? std::to_string(value(*label)) : std::string("OUTLIER");
}

struct Layout {
  std::size_t width = 0;
  std::vector<std::size_t> features;
  std::optional<std::size_t> truth;
  std::optional<std::size_t> time;
};

Layout resolve_layout(const ColumnSpec& spec, const std::vector<std::string>& names,
                      std::size_t width) {
  Layout layout;
  layout.width = width;
  if (spec.truth) {
    layout.truth = resolve_column(*spec.truth, names, width);
  } else if (const auto it = std::find(names.begin(), names.end(), "label"); it != names.end()) {
    layout.truth = static_cast<std::size_t>(it - names.begin());
  }
  if (spec.time) {
    layout.time = resolve_column(*spec.time, names, width);
  } else if (const auto it = std::find(names.begin(), names.end(), "t"); it != names.end()) {
    layout.time = static_cast<std::size_t>(it - names.begin());
  }
  if (spec.features.empty()) {
    for (std::size_t i = 0; i < width; ++i) {
      if (i != layout.truth && i != layout.time) layout.features.push_back(i);
    }
  } else {
    for (const std::string& f : spec.features) {
      layout.features.push_back(resolve_column(f, names, width));
    }
  }
  if (layout.features.empty()) throw ConfigError("no feature columns selected");
  for (std::size_t f : layout.features) {
    if (f == layout.truth || f == layout.time) {
      throw ConfigError("a feature column cannot also be the truth or timestamp column");
    }
  }
  return layout;
}

struct ParsedRow {
  std::size_t row_id = 0;
  std::vector<double> x;
  std::optional<std::string> truth;
  std::optional<Timestamp> t;
};

std::optional<ParsedRow> parse_row(std::string_view line, std::size_t row_id,
                                   const Layout& layout) {
  const auto fields = split_csv(line);
  if (fields.size() != layout.width) return std::nullopt;
  ParsedRow row;
  row.row_id = row_id;
  row.x.reserve(layout.features.size());
  for (std::size_t f : layout.features) {
    const auto v = parse_double(fields[f]);
    if (!v) return std::nullopt;
    row.x.push_back(*v);
  }
  if (layout.truth) row.truth = std::string(fields[*layout.truth]);
  if (layout.time) {
    const auto t = parse_double(fields[*layout.time]);
    if (!t || !std::isfinite(*t) || *t < 0.0) return std::nullopt;
    row.t = *t;
  }
  return row;
}

double ceil_to_hundredths(double v) { return std::ceil(v * 100.0 - 1e-9) / 100.0; }

}  // namespace

// ---------------------------------------------------------------- params

ParamsReport cmd_params(const ParamsRequest& request) {
  ParamsReport r;
  r.request = request;
  r.geometry = derive_geometry(request.n, request.fp);
  r.cm = derive_cm_guarantees(request.n, request.fp);
  if (r.cm.delta < 1.0) r.base_hash_count = base_hash_count(r.cm.epsilon, r.cm.delta);
  r.fragment_capacity = fragment_capacity(request.lambda, request.density_threshold, request.dims);
  r.predicted_fp = predicted_fp(r.geometry.m(), r.geometry.k, request.n);
  r.predicted_fp_asymptotic = predicted_fp_asymptotic(r.geometry.m(), r.geometry.k, request.n);
  r.signature_bytes = (r.geometry.m() + 7) / 8;
  r.countmin_bytes = r.geometry.m() * (sizeof(double) + sizeof(Timestamp));
  return r;
}

std::string format_params_text(const ParamsReport& r) {
  std::ostringstream out;
  const auto row = [&](std::string_view key) -> std::ostream& {
    return out << std::left << std::setw(26) << key;
  };
  row("capacity n") << r.request.n << '\n';
  row("target fp") << r.request.fp << '\n';
  row("hash functions k") << r.geometry.k << '\n';
  row("partition width p") << r.geometry.p << '\n';
  row("table length m") << r.geometry.m() << '\n';
  row("predicted fp") << std::setprecision(6) << r.predicted_fp << '\n';
  row("predicted fp (asymptotic)") << r.predicted_fp_asymptotic << '\n';
  row("count-min epsilon") << std::scientific << std::setprecision(4) << r.cm.epsilon << '\n';
  row("count-min delta") << r.cm.delta << '\n';
  row("delta from fp") << r.cm.delta_from_fp << std::defaultfloat << '\n';
  row("pairwise hashes required");
  if (r.base_hash_count) {
    out << *r.base_hash_count << '\n';
  } else {
    out << "n/a (delta >= 1)\n";
  }
  row("fragment capacity") << r.fragment_capacity << '\n';
  row("signature bytes") << r.signature_bytes << " (" << std::fixed << std::setprecision(2)
                         << ceil_to_hundredths(static_cast<double>(r.signature_bytes) / 1024.0)
                         << " KB)" << std::defaultfloat << '\n';
  row("count-min bytes") << r.countmin_bytes << '\n';
  return out.str();
}

std::string format_params_json(const ParamsReport& r) {
  const json j = {
      {"n", r.request.n},
      {"fp", r.request.fp},
      {"lambda", r.request.lambda},
      {"density_threshold", r.request.density_threshold},
      {"dims", r.request.dims},
      {"k", r.geometry.k},
      {"p", r.geometry.p},
      {"m", r.geometry.m()},
      {"epsilon", r.cm.epsilon},
      {"delta", r.cm.delta},
      {"delta_from_fp", r.cm.delta_from_fp},
      {"base_hash_count", r.base_hash_count ? json(*r.base_hash_count) : json(nullptr)},
      {"fragment_capacity", r.fragment_capacity},
      {"predicted_fp", r.predicted_fp},
      {"predicted_fp_asymptotic", r.predicted_fp_asymptotic},
      {"signature_bytes", r.signature_bytes},
      {"countmin_bytes", r.countmin_bytes},
  };
  return j.dump();
}

// ------------------------------------------------------------------- gen

void write_stream_csv(std::ostream& out, std::span<const LabeledPoint> points, std::size_t dims) {
  for (std::size_t i = 0; i < dims; ++i) out << 'f' << (i + 1) << ',';
  out << "label\n";
  for (const LabeledPoint& p : points) {
    for (double v : p.x) out << std::setprecision(std::numeric_limits<double>::max_digits10) << v << ',';
    out << p.truth << '\n';
  }
}

void cmd_gen(const SyntheticStreamConfig& cfg, const std::filesystem::path& out_path) {
  const SyntheticStream stream = generate_stream(cfg);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + out_path.string() + "' for writing");
  write_stream_csv(out, stream.points, cfg.dims);
  out.flush();
  if (!out) throw IoError("failed writing '" + out_path.string() + "'");
}

// ------------------------------------------------------------------- run

std::string format_window_json(const WindowMetrics& m) {
  json j = {
      {"window", m.window},
      {"instances", m.instances},
  };
  if (m.has_truth) {
    j["purity"] = m.purity.purity ? json(*m.purity.purity) : json(nullptr);
    j["clusters"] = m.purity.clusters;
    j["clustered"] = m.purity.clustered;
  }
  j["clusters_dynamic"] = m.clusters_dynamic;
  j["clusters_stable"] = m.clusters_stable;
  j["dense_events"] = m.dense_events;
  j["outlier_fraction"] = m.outlier_fraction;
  return j.dump();
}

std::string format_summary_json(const RunSummary& s) {
  const json j = {
      {"rows", s.rows},
      {"malformed", s.malformed},
      {"rejected", s.rejected},
      {"windows", s.windows},
      {"has_truth", s.has_truth},
      {"instances_seen", s.stats.instances_seen},
      {"dense_events", s.stats.dense_events},
      {"clusters_created", s.stats.clusters_created},
      {"clusters_expanded", s.stats.clusters_expanded},
      {"clusters_merged", s.stats.clusters_merged},
      {"clusters_expired", s.stats.clusters_expired},
      {"live_dynamic", s.stats.live.dynamic},
      {"live_stable", s.stats.live.stable},
      {"countmin_fill_ratio", s.stats.countmin_fill_ratio},
  };
  return j.dump();
}

RunSummary cmd_run(const RunConfig& cfg, std::ostream& assignments, std::ostream& metrics) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw IoError("cannot open '" + cfg.input.string() + "' for reading");
  return cmd_run(cfg, in, assignments, metrics);
}

RunSummary cmd_run(const RunConfig& cfg, std::istream& input, std::ostream& assignments,
                   std::ostream& metrics) {
  RunSummary summary;
  std::string line;
  std::vector<std::string> names;
  std::optional<Layout> layout;

  if (cfg.columns.header) {
    if (!std::getline(input, line)) return summary;
    for (std::string_view f : split_csv(line)) names.emplace_back(f);
    layout = resolve_layout(cfg.columns, names, names.size());
  }

  std::optional<BloomStream> model;
  std::optional<HorizonEvaluator> evaluator;
  std::vector<ParsedRow> warmup;
  std::vector<double> lo;
  std::vector<double> hi;
  bool ranges_fixed = cfg.normalize_warmup == 0;

  const auto start_model = [&]() {
    const std::size_t d = layout->features.size();
    if (cfg.dims && *cfg.dims != d) {
      throw ConfigError("explicit dimensionality " + std::to_string(*cfg.dims) +
                        " does not match " + std::to_string(d) + " feature columns");
    }
    model.emplace(SketchParams::make(cfg.n, cfg.fp, cfg.lambda, cfg.density_threshold, d,
                                     cfg.resolution, cfg.origin),
                  cfg.seed1, cfg.seed2);
    evaluator.emplace(cfg.horizon);
    summary.has_truth = layout->truth.has_value();
  };

  const auto process = [&](ParsedRow& row) {
    if (cfg.normalize_warmup > 0) {
      for (std::size_t i = 0; i < row.x.size(); ++i) {
        const double span = hi[i] - lo[i];
        row.x[i] = span > 0.0 ? (row.x[i] - lo[i]) / span : row.x[i] - lo[i];
      }
    }
    const Timestamp t = row.t.value_or(static_cast<Timestamp>(row.row_id));
    if (t < model->clock()) {
      ++summary.malformed;
      return;
    }
    const IngestOutcome outcome = model->ingest(row.x, t);
    if (outcome.rejected) ++summary.rejected;
    const std::optional<Label> predicted = model->classify(row.x, t);
    assignments << row.row_id << ',' << label_token(predicted) << '\n';
    evaluator->observe(predicted, std::move(row.truth), outcome.dense);
    if (evaluator->window_full()) {
      metrics << format_window_json(evaluator->close_window(*model)) << '\n';
      ++summary.windows;
    }
  };

  const auto fix_ranges = [&]() {
    const std::size_t d = layout->features.size();
    lo.assign(d, 0.0);
    hi.assign(d, 0.0);
    std::vector<bool> seen(d, false);
    for (const ParsedRow& r : warmup) {
      for (std::size_t i = 0; i < d; ++i) {
        if (!std::isfinite(r.x[i])) continue;
        lo[i] = seen[i] ? std::min(lo[i], r.x[i]) : r.x[i];
        hi[i] = seen[i] ? std::max(hi[i], r.x[i]) : r.x[i];
        seen[i] = true;
      }
    }
    ranges_fixed = true;
    for (ParsedRow& r : warmup) process(r);
    warmup.clear();
  };

  std::size_t row_id = 0;
  while (std::getline(input, line)) {
    if (trim(line).empty()) continue;
    const std::size_t id = row_id++;
    ++summary.rows;
    if (!layout) {
      layout = resolve_layout(cfg.columns, names, split_csv(line).size());
    }
    if (!model) start_model();
    auto row = parse_row(line, id, *layout);
    if (!row) {
      ++summary.malformed;
      continue;
    }
    if (!ranges_fixed) {
      warmup.push_back(std::move(*row));
      if (warmup.size() >= cfg.normalize_warmup) fix_ranges();
      continue;
    }
    process(*row);
  }
  if (model && !ranges_fixed) fix_ranges();
  if (evaluator && !evaluator->window_empty()) {
    metrics << format_window_json(evaluator->close_window(*model)) << '\n';
    ++summary.windows;
  }
  if (model) summary.stats = model->snapshot_stats();
  return summary;
}

}  // namespace bloomstream::cli
