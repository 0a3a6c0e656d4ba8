#pragma once

// JSON encodings shared by the CLI and the HTTP service.

#include <json.hpp>

#include "hermite_ecg/ht_optimizer.hpp"
#include "hermite_ecg/spectral_compare.hpp"

namespace hermite_ecg {

inline nlohmann::json to_json(const HtResult& r) {
  return {{"delta", r.delta}, {"tau", r.tau}, {"l1", r.l1}, {"coeffs", r.coeffs}};
}

inline HtResult ht_result_from_json(const nlohmann::json& j) {
  HtResult r;
  r.delta = j.at("delta").get<double>();
  r.tau = j.at("tau").get<int>();
  r.l1 = j.at("l1").get<double>();
  r.coeffs = j.at("coeffs").get<std::vector<double>>();
  r.segment_ref.window = static_cast<int>(r.coeffs.size());
  return r;
}

inline nlohmann::json to_json(const SearchSpec& s) {
  return {{"delta0", s.delta0},   {"delta_max", s.delta_max}, {"delta_step", s.delta_step},
          {"tau_min", s.tau_min}, {"tau_max", s.tau_max}};
}

inline nlohmann::json to_json(const OptimizationReport& report, bool include_full_grid) {
  nlohmann::json measure = nlohmann::json::array();
  for (const auto& m : report.measure_vector) {
    measure.push_back({{"tau", m.tau}, {"best_delta", m.best_delta}, {"min_l1", m.min_l1}});
  }
  nlohmann::json j{{"spec", to_json(report.spec)},
                   {"L", std::move(measure)},
                   {"best", to_json(report.best)},
                   {"baseline", report.baseline ? to_json(*report.baseline) : nlohmann::json()}};
  if (include_full_grid) {
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& c : report.full_grid) {
      grid.push_back({{"tau", c.tau},
                      {"delta", c.delta},
                      {"l1", c.admissible ? nlohmann::json(c.l1) : nlohmann::json()},
                      {"admissible", c.admissible}});
    }
    j["full_grid"] = std::move(grid);
  }
  return j;
}

inline nlohmann::json to_json(const SpectrumResult& s) {
  return {{"magnitudes", s.magnitudes}, {"l1", s.l1}, {"l1_over_l2", s.l1_over_l2}};
}

inline nlohmann::json to_json(const QualityMetrics& q) {
  return {{"prd_percent", q.prd_percent}, {"max_abs_err", q.max_abs_err}, {"retained_m", q.retained_m}};
}

inline nlohmann::json to_json(const ConcentrationReport& c) {
  nlohmann::json j{
      {"ht", {{"l1", c.ht.l1}, {"l1_over_l2", c.ht.l1_over_l2}}},
      {"ft", {{"l1", c.ft.l1}, {"l1_over_l2", c.ft.l1_over_l2}}},
      {"top_k", {{"ht", c.ht.top_k_energy}, {"ft", c.ft.top_k_energy}}},
  };
  if (c.degenerate) {
    j["degenerate"] = *c.degenerate;
    j["top_k"] = nullptr;
  }
  return j;
}

}  // namespace hermite_ecg
