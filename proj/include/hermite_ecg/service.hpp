#pragma once

// HTTP facade over the analysis core, serving the explorer UI.
//
//   GET  /api/records                      record summaries
//   GET  /api/records/{id}/peaks?window=W  tau = 0 previews of every peak
//   POST /api/analyze                      analysis payload + shifted overlay
//
// The dataset is loaded once and never mutated; handlers are pure functions
// of the request, so any number may run concurrently. Error bodies are
// {"error": str, "field": str?}.

// Eigen must be seen before httplib: <resolv.h> defines a `_res` macro that
// collides with Eigen parameter names.
#include "hermite_ecg/analysis.hpp"
#include "hermite_ecg/signal_model.hpp"

#include <httplib.h>
#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

namespace hermite_ecg {

struct HttpReply {
  int status = 200;
  nlohmann::json body;
  std::optional<std::string> warning;  // emitted as an HTTP Warning header
};

struct AnalyzeRequest {
  std::string record_id;
  int peak_index = 0;
  AnalysisConfig config;
  int tau_display = 0;
};

struct ServiceOptions {
  AnalysisConfig defaults;
  std::optional<std::filesystem::path> ui_dir;
  std::string cors_origin = "*";
};

namespace detail {

inline HttpReply error_reply(int status, const std::string& message, const std::string& field = {}) {
  nlohmann::json body{{"error", message}};
  if (!field.empty()) body["field"] = field;
  return {status, std::move(body), std::nullopt};
}

inline int status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::parse:
    case ErrorKind::validation:
    case ErrorKind::window_out_of_bounds: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::inadmissible_delta:
    case ErrorKind::no_admissible_delta: return 422;
    case ErrorKind::numerical: return 500;
  }
  return 500;
}

inline HttpReply reply_for(const Error& e) {
  auto reply = error_reply(status_for(e), e.what(), e.field());
  if (const auto* na = dynamic_cast<const NoAdmissibleDelta*>(&e)) {
    reply.body["max_admissible_delta"] = na->max_admissible();
  } else if (const auto* ia = dynamic_cast<const InadmissibleDelta*>(&e)) {
    reply.body["max_admissible_delta"] = ia->max_admissible();
  }
  return reply;
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& target) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    const auto& v = j.at(key);
    if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw ValidationError(std::string(key) + " must be an integer", key);
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ValidationError(std::string(key) + " must be a number", key);
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ValidationError(std::string(key) + " must be a boolean", key);
    }
    target = v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string(key) + " has the wrong type", key);
  }
}

}  // namespace detail

/// Decodes and validates an AnalyzeRequest body. Missing optional fields
/// take the service defaults.
inline AnalyzeRequest parse_analyze_request(const nlohmann::json& j, const AnalysisConfig& defaults) {
  if (!j.is_object()) throw ValidationError("request body must be a JSON object");
  AnalyzeRequest req;
  req.config = defaults;
  if (!j.contains("record_id") || !j.at("record_id").is_string()) {
    throw ValidationError("record_id (string) is required", "record_id");
  }
  req.record_id = j.at("record_id").get<std::string>();
  if (!j.contains("peak_index")) throw ValidationError("peak_index is required", "peak_index");
  detail::read_field(j, "peak_index", req.peak_index);
  auto& c = req.config;
  detail::read_field(j, "W", c.window);
  detail::read_field(j, "window", c.window);
  detail::read_field(j, "delta0", c.spec.delta0);
  detail::read_field(j, "delta_max", c.spec.delta_max);
  detail::read_field(j, "delta_step", c.spec.delta_step);
  detail::read_field(j, "tau_min", c.spec.tau_min);
  detail::read_field(j, "tau_max", c.spec.tau_max);
  detail::read_field(j, "tau_display", req.tau_display);
  detail::read_field(j, "demean", c.demean);
  detail::read_field(j, "full_grid", c.full_grid);
  if (j.contains("pad_policy")) {
    if (!j.at("pad_policy").is_string()) throw ValidationError("pad_policy must be a string", "pad_policy");
    c.pad = parse_pad_policy(j.at("pad_policy").get<std::string>());
  }
  validate_config(c);
  if (req.tau_display < -c.window || req.tau_display > c.window) {
    throw ValidationError("tau_display must lie in [-W, W]", "tau_display");
  }
  return req;
}

class AnalysisService {
 public:
  AnalysisService(Dataset dataset, ServiceOptions options)
      : dataset_(std::move(dataset)), options_(std::move(options)) {
    if (!dataset_.failures.empty()) {
      std::string msg = "skipped " + std::to_string(dataset_.failures.size()) + " unreadable record file(s):";
      for (const auto& f : dataset_.failures) msg += " " + f.path.filename().string();
      warning_ = msg;
    }
  }

  const Dataset& dataset() const { return dataset_; }
  const ServiceOptions& options() const { return options_; }

  HttpReply list_records() const {
    nlohmann::json out = nlohmann::json::array();
    for (Label label : {Label::healthy, Label::diseased}) {
      for (const auto& r : dataset_.records) {
        if (r.label != label) continue;
        out.push_back({{"id", r.id},
                       {"label", to_string(r.label)},
                       {"n_samples", r.samples.size()},
                       {"n_peaks", r.r_peaks.size()},
                       {"fs_hz", r.fs_hz}});
      }
    }
    return {200, std::move(out), warning_};
  }

  HttpReply peak_previews(const std::string& record_id, std::optional<std::string> window_param,
                          std::optional<std::string> pad_param) const {
    int window = options_.defaults.window;
    PadPolicy pad = options_.defaults.pad;
    try {
      if (window_param) window = detail::parse_number<int>(*window_param, "window");
      if (pad_param) pad = parse_pad_policy(*pad_param);
      validate_window(window);
    } catch (const Error& e) {
      return detail::error_reply(400, e.what(), "window");
    }
    const auto* record = dataset_.find(record_id);
    if (!record) return detail::error_reply(404, "unknown record \"" + record_id + "\"", "record_id");

    nlohmann::json out = nlohmann::json::array();
    for (int p = 0; p < static_cast<int>(record->r_peaks.size()); ++p) {
      nlohmann::json item{{"peak_index", p}, {"r_peak", record->r_peaks[static_cast<std::size_t>(p)]}};
      try {
        item["values"] = extract_segment(*record, p, window, 0, pad, options_.defaults.demean).values;
        item["out_of_bounds"] = false;
      } catch (const WindowOutOfBounds&) {
        item["out_of_bounds"] = true;
      }
      out.push_back(std::move(item));
    }
    return {200, std::move(out), std::nullopt};
  }

  HttpReply analyze(const std::string& body) const {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      return detail::error_reply(400, std::string("malformed JSON: ") + e.what());
    }
    try {
      return analyze(parse_analyze_request(j, options_.defaults));
    } catch (const Error& e) {
      return detail::reply_for(e);
    }
  }

  HttpReply analyze(const AnalyzeRequest& req) const {
    try {
      const auto& record = dataset_.at(req.record_id);
      auto payload = build_analysis_payload(record, req.peak_index, req.config);
      payload["display"] = display_overlay(record, req);
      payload["display_shifted_segment"] = payload["display"].value("segment", nlohmann::json());
      return {200, std::move(payload), std::nullopt};
    } catch (const Error& e) {
      return detail::reply_for(e);
    }
  }

  /// Registers the API routes, CORS handling and, when configured, the
  /// static UI bundle at "/".
  void register_routes(httplib::Server& server) const {
    const std::string origin = options_.cors_origin;
    server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/records", [this](const httplib::Request&, httplib::Response& res) {
      write(res, list_records());
    });
    server.Get(R"(/api/records/([^/]+)/peaks)", [this](const httplib::Request& req, httplib::Response& res) {
      std::optional<std::string> window;
      std::optional<std::string> pad;
      if (req.has_param("window")) window = req.get_param_value("window");
      if (req.has_param("pad")) pad = req.get_param_value("pad");
      write(res, peak_previews(req.matches[1].str(), window, pad));
    });
    server.Post("/api/analyze", [this](const httplib::Request& req, httplib::Response& res) {
      write(res, analyze(req.body));
    });
    if (options_.ui_dir && std::filesystem::is_directory(*options_.ui_dir)) {
      server.set_mount_point("/", options_.ui_dir->string());
    }
  }

 private:
  static void write(httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    if (reply.warning) res.set_header("Warning", "199 hermite_ecg \"" + *reply.warning + "\"");
    res.set_content(reply.body.dump(), "application/json");
  }

  nlohmann::json display_overlay(const EcgRecord& record, const AnalyzeRequest& req) const {
    const auto& c = req.config;
    nlohmann::json d{{"tau", req.tau_display}};
    PeakSegment segment;
    try {
      segment = extract_segment(record, req.peak_index, c.window, req.tau_display, c.pad, c.demean);
    } catch (const WindowOutOfBounds&) {
      d["out_of_bounds"] = true;
      return d;
    }
    const auto search = optimize_delta(segment, c.spec);
    const auto ht = forward_ht(segment, search.delta_star);
    const auto basis = build_basis(c.window, ht.delta);
    d["out_of_bounds"] = false;
    d["segment"] = segment.values;
    d["nodes"] = {{"positions", basis.node_positions}, {"values", resample_to_nodes(segment, basis)}};
    d["ht"] = to_json(ht);
    d["reconstruction"] = {{"M", kPayloadTopK},
                           {"optimized", quality_json(try_top_k_quality(segment, ht, kPayloadTopK))}};
    return d;
  }

  Dataset dataset_;
  ServiceOptions options_;
  std::optional<std::string> warning_;
};

}  // namespace hermite_ecg
