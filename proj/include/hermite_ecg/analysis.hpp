#pragma once

// The per-peak analysis payload: everything the explorer plots for one
// record/peak, produced identically by `hermite_ecg analyze` and by
// POST /api/analyze.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "hermite_ecg/ht_optimizer.hpp"
#include "hermite_ecg/json_io.hpp"
#include "hermite_ecg/signal_model.hpp"
#include "hermite_ecg/spectral_compare.hpp"

namespace hermite_ecg {

struct AnalysisConfig {
  int window = 31;
  SearchSpec spec;
  PadPolicy pad = PadPolicy::error;
  bool demean = false;
  bool full_grid = false;

  bool operator==(const AnalysisConfig&) const = default;
};

inline void validate_config(const AnalysisConfig& config) {
  validate_window(config.window);
  validate_search_spec(config.spec);
}

inline nlohmann::json to_json(const AnalysisConfig& c) {
  return {{"window", c.window},
          {"search", to_json(c.spec)},
          {"pad", to_string(c.pad)},
          {"demean", c.demean},
          {"full_grid", c.full_grid}};
}

inline constexpr int kPayloadTopK = 2;

/// PRD of the k-strongest reconstruction, or nullopt for an all-zero
/// reference where PRD is undefined.
inline std::optional<QualityMetrics> try_top_k_quality(const PeakSegment& segment,
                                                       const HtResult& result, int k) {
  try {
    return top_k_quality(segment, result, k);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

inline nlohmann::json quality_json(const std::optional<QualityMetrics>& q) {
  return q ? to_json(*q) : nlohmann::json();
}

inline nlohmann::json build_analysis_payload(const EcgRecord& record, int peak_index,
                                             const AnalysisConfig& config) {
  validate_config(config);
  const SegmentSource source{&record, peak_index, config.window, config.pad, config.demean};
  const auto segment = source.extract(0);
  const auto report = optimize(source, config.spec);
  const auto best_segment = source.extract(report.best.tau);

  nlohmann::json nodes;
  if (report.baseline) {
    const auto basis = build_basis(config.window, 1.0);
    nodes = {{"positions", basis.node_positions}, {"values", resample_to_nodes(segment, basis)}};
  }
  const auto best_basis = build_basis(config.window, report.best.delta);
  const nlohmann::json best_nodes{{"positions", best_basis.node_positions},
                                  {"values", resample_to_nodes(best_segment, best_basis)}};

  const auto spectrum = dft_spectrum(segment);
  const auto concentration = concentration_report(best_segment, report.best, dft_spectrum(best_segment));

  return nlohmann::json{
      {"record",
       {{"id", record.id},
        {"label", to_string(record.label)},
        {"fs_hz", record.fs_hz},
        {"peak_index", peak_index},
        {"r_peak", record.r_peaks[static_cast<std::size_t>(peak_index)]}}},
      {"parameters", to_json(config)},
      {"segment", segment.values},
      {"standard_ht", report.baseline ? to_json(*report.baseline) : nlohmann::json()},
      {"standard_nodes", std::move(nodes)},
      {"optimized_nodes", best_nodes},
      {"optimization", to_json(report, config.full_grid)},
      {"spectrum", to_json(spectrum)},
      {"concentration", to_json(concentration)},
      {"reconstruction",
       {{"M", kPayloadTopK},
        {"optimized", quality_json(try_top_k_quality(best_segment, report.best, kPayloadTopK))},
        {"standard", report.baseline ? quality_json(try_top_k_quality(segment, *report.baseline,
                                                                      kPayloadTopK))
                                     : nlohmann::json()}}},
  };
}

/// One line of the batch summary.
struct BatchRow {
  std::string record_id;
  Label label = Label::healthy;
  int peak_index = 0;
  double delta_star = 0.0;
  int tau_star = 0;
  std::optional<double> baseline_l1;
  double optimized_l1 = 0.0;
  std::optional<double> prd_m2;
  std::optional<double> prd_m5;
};

inline BatchRow analyze_peak_summary(const EcgRecord& record, int peak_index,
                                     const AnalysisConfig& config) {
  const SegmentSource source{&record, peak_index, config.window, config.pad, config.demean};
  const auto report = optimize(source, config.spec);
  const auto best_segment = source.extract(report.best.tau);
  BatchRow row;
  row.record_id = record.id;
  row.label = record.label;
  row.peak_index = peak_index;
  row.delta_star = report.best.delta;
  row.tau_star = report.best.tau;
  if (report.baseline) row.baseline_l1 = report.baseline->l1;
  row.optimized_l1 = report.best.l1;
  if (auto q = try_top_k_quality(best_segment, report.best, 2)) row.prd_m2 = q->prd_percent;
  if (auto q = try_top_k_quality(best_segment, report.best, std::min(5, config.window))) {
    row.prd_m5 = q->prd_percent;
  }
  return row;
}

inline constexpr const char* kBatchHeader =
    "record_id,label,peak_index,delta_star,tau_star,baseline_l1,optimized_l1,prd_m2,prd_m5";

inline std::string format_batch_row(const BatchRow& row) {
  auto opt = [](const std::optional<double>& v) { return v ? detail::format_double(*v) : std::string(); };
  return row.record_id + "," + to_string(row.label) + "," + std::to_string(row.peak_index) + "," +
         detail::format_double(row.delta_star) + "," + std::to_string(row.tau_star) + "," +
         opt(row.baseline_l1) + "," + detail::format_double(row.optimized_l1) + "," +
         opt(row.prd_m2) + "," + opt(row.prd_m5);
}

}  // namespace hermite_ecg
