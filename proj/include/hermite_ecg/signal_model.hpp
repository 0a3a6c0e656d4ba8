#pragma once

// ECG records, their on-disk formats, synthetic QRS generation and
// R-peak-centred window extraction.
//
// Record JSON:
//   {"id": str, "label": "healthy"|"diseased", "fs_hz": number,
//    "samples": [number...], "r_peaks": [int...]}
// Record CSV (<name>.csv):
//   index,sample            one row per sample, index = 0, 1, 2, ...
//   <name>.peaks.csv        header r_peak, one index per row
//   <name>.meta.json        {"label": ..., "fs_hz": ...}; the id is <name>
// Dataset: a directory with healthy/ and diseased/ subdirectories.

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hermite_ecg/error.hpp"
#include "hermite_ecg/hermite_functions.hpp"
#include "hermite_ecg/quadrature.hpp"

namespace hermite_ecg {

enum class Label { healthy, diseased };

inline const char* to_string(Label label) {
  return label == Label::healthy ? "healthy" : "diseased";
}

inline Label parse_label(std::string_view text) {
  if (text == "healthy") return Label::healthy;
  if (text == "diseased") return Label::diseased;
  throw ValidationError("label must be \"healthy\" or \"diseased\", got \"" + std::string(text) +
                            "\"",
                        "label");
}

struct EcgRecord {
  std::string id;
  Label label = Label::healthy;
  double fs_hz = 1.0;
  std::vector<double> samples;
  std::vector<std::int64_t> r_peaks;

  bool operator==(const EcgRecord&) const = default;
};

/// Throws ValidationError naming the first offending field and index.
inline void validate_record(const EcgRecord& record) {
  if (record.id.empty()) throw ValidationError("record id must not be empty", "id");
  if (!(record.fs_hz > 0.0) || !std::isfinite(record.fs_hz)) {
    throw ValidationError("fs_hz must be positive and finite", "fs_hz");
  }
  if (record.samples.size() < 3) {
    throw ValidationError("record needs at least 3 samples, got " +
                              std::to_string(record.samples.size()),
                          "samples");
  }
  for (std::size_t i = 0; i < record.samples.size(); ++i) {
    if (!std::isfinite(record.samples[i])) {
      throw ValidationError("sample " + std::to_string(i) + " is not finite",
                            "samples[" + std::to_string(i) + "]");
    }
  }
  const auto n = static_cast<std::int64_t>(record.samples.size());
  for (std::size_t i = 0; i < record.r_peaks.size(); ++i) {
    const auto p = record.r_peaks[i];
    const std::string field = "r_peaks[" + std::to_string(i) + "]";
    if (p < 0 || p >= n) {
      throw ValidationError("r_peak " + std::to_string(p) + " out of range [0, " +
                                std::to_string(n) + ")",
                            field);
    }
    if (i > 0 && p <= record.r_peaks[i - 1]) {
      throw ValidationError("r_peaks must be strictly increasing: r_peak " + std::to_string(p) +
                                " follows " + std::to_string(record.r_peaks[i - 1]),
                            field);
    }
  }
}

enum class RecordFormat { json, csv };

inline const char* to_string(RecordFormat format) {
  return format == RecordFormat::json ? "json" : "csv";
}

namespace detail {

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), "path");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string(), "path");
  out << text;
  if (!out) throw ParseError("failed writing " + path.string(), "path");
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, const std::string& where) {
  text = trim(text);
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("malformed number \"" + std::string(text) + "\" at " + where, where);
  }
  return value;
}

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

inline std::filesystem::path csv_stem_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  return p.replace_extension();
}

}  // namespace detail

inline EcgRecord record_from_json(const nlohmann::json& j) {
  EcgRecord r;
  try {
    if (!j.is_object()) throw ParseError("record JSON must be an object");
    for (const char* key : {"id", "label", "fs_hz", "samples", "r_peaks"}) {
      if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"", key);
    }
    r.id = j.at("id").get<std::string>();
    r.label = parse_label(j.at("label").get<std::string>());
    r.fs_hz = j.at("fs_hz").get<double>();
    const auto& samples = j.at("samples");
    if (!samples.is_array()) throw ParseError("samples must be an array", "samples");
    r.samples.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!samples[i].is_number()) {
        throw ParseError("samples[" + std::to_string(i) + "] is not a number",
                         "samples[" + std::to_string(i) + "]");
      }
      r.samples.push_back(samples[i].get<double>());
    }
    const auto& peaks = j.at("r_peaks");
    if (!peaks.is_array()) throw ParseError("r_peaks must be an array", "r_peaks");
    for (std::size_t i = 0; i < peaks.size(); ++i) {
      if (!peaks[i].is_number_integer()) {
        throw ParseError("r_peaks[" + std::to_string(i) + "] is not an integer",
                         "r_peaks[" + std::to_string(i) + "]");
      }
      r.r_peaks.push_back(peaks[i].get<std::int64_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("record JSON: ") + e.what());
  }
  validate_record(r);
  return r;
}

inline nlohmann::json record_to_json(const EcgRecord& r) {
  return nlohmann::json{{"id", r.id},
                        {"label", to_string(r.label)},
                        {"fs_hz", r.fs_hz},
                        {"samples", r.samples},
                        {"r_peaks", r.r_peaks}};
}

/// Loads and validates a record. For csv, `path` is the <name>.csv sample
/// file; its .peaks.csv and .meta.json companions are read from alongside.
inline EcgRecord load_record(const std::filesystem::path& path, RecordFormat format) {
  if (format == RecordFormat::json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(detail::read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    return record_from_json(j);
  }

  const auto stem = detail::csv_stem_path(path);
  EcgRecord r;
  r.id = stem.filename().string();

  const auto sample_text = detail::read_text(path);
  const auto sample_lines = detail::split_lines(sample_text);
  if (sample_lines.empty() || detail::trim(sample_lines[0]) != "index,sample") {
    throw ParseError(path.string() + ": expected header \"index,sample\"", "header");
  }
  for (std::size_t row = 1; row < sample_lines.size(); ++row) {
    const auto line = sample_lines[row];
    const auto comma = line.find(',');
    const std::string where = "row " + std::to_string(row);
    if (comma == std::string_view::npos) {
      throw ParseError(path.string() + ": " + where + " has no comma", where);
    }
    const auto index = detail::parse_number<std::int64_t>(line.substr(0, comma), where);
    if (index != static_cast<std::int64_t>(row - 1)) {
      throw ParseError(path.string() + ": " + where + " has index " + std::to_string(index) +
                           ", expected " + std::to_string(row - 1),
                       where);
    }
    r.samples.push_back(detail::parse_number<double>(line.substr(comma + 1), where));
  }

  auto peaks_path = stem;
  peaks_path += ".peaks.csv";
  const auto peak_text = detail::read_text(peaks_path);
  const auto peak_lines = detail::split_lines(peak_text);
  if (peak_lines.empty() || detail::trim(peak_lines[0]) != "r_peak") {
    throw ParseError(peaks_path.string() + ": expected header \"r_peak\"", "header");
  }
  for (std::size_t row = 1; row < peak_lines.size(); ++row) {
    r.r_peaks.push_back(
        detail::parse_number<std::int64_t>(peak_lines[row], "r_peaks row " + std::to_string(row)));
  }

  auto meta_path = stem;
  meta_path += ".meta.json";
  try {
    const auto meta = nlohmann::json::parse(detail::read_text(meta_path));
    if (!meta.contains("label") || !meta.contains("fs_hz")) {
      throw ParseError(meta_path.string() + ": needs \"label\" and \"fs_hz\"");
    }
    r.label = parse_label(meta.at("label").get<std::string>());
    r.fs_hz = meta.at("fs_hz").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(meta_path.string() + ": " + e.what());
  }

  validate_record(r);
  return r;
}

/// Inverse of load_record. For csv the three companion files are written
/// next to `path`.
inline void save_record(const EcgRecord& record, const std::filesystem::path& path,
                        RecordFormat format) {
  validate_record(record);
  if (format == RecordFormat::json) {
    detail::write_text(path, record_to_json(record).dump() + "\n");
    return;
  }
  std::string samples = "index,sample\n";
  for (std::size_t i = 0; i < record.samples.size(); ++i) {
    samples += std::to_string(i);
    samples += ',';
    samples += detail::format_double(record.samples[i]);
    samples += '\n';
  }
  detail::write_text(path, samples);

  std::string peaks = "r_peak\n";
  for (auto p : record.r_peaks) peaks += std::to_string(p) + "\n";
  const auto stem = detail::csv_stem_path(path);
  auto peaks_path = stem;
  peaks_path += ".peaks.csv";
  detail::write_text(peaks_path, peaks);

  auto meta_path = stem;
  meta_path += ".meta.json";
  const nlohmann::json meta{{"label", to_string(record.label)}, {"fs_hz", record.fs_hz}};
  detail::write_text(meta_path, meta.dump() + "\n");
}

/// Which loader a dataset file belongs to; companions and unrelated files
/// yield nullopt.
inline std::optional<RecordFormat> record_format_for(const std::filesystem::path& path) {
  const auto name = path.filename().string();
  if (detail::ends_with(name, ".meta.json") || detail::ends_with(name, ".peaks.csv")) {
    return std::nullopt;
  }
  if (detail::ends_with(name, ".json")) return RecordFormat::json;
  if (detail::ends_with(name, ".csv")) return RecordFormat::csv;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Segments

enum class PadPolicy { error, zero_pad };

inline const char* to_string(PadPolicy p) { return p == PadPolicy::error ? "error" : "zero"; }

inline PadPolicy parse_pad_policy(std::string_view text) {
  if (text == "error") return PadPolicy::error;
  if (text == "zero" || text == "zero_pad") return PadPolicy::zero_pad;
  throw ValidationError("pad policy must be \"error\" or \"zero\"", "pad");
}

/// Odd-length window centred on r_peaks[peak_index] + tau. values[C] is the
/// centre sample, C = (W - 1) / 2, and the time axis is n = -C .. C samples.
struct PeakSegment {
  std::string record_id;
  int peak_index = 0;
  int tau = 0;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  int half_width() const { return (size() - 1) / 2; }
};

inline void validate_window(int window) {
  if (window < 3) {
    throw ValidationError("window must be at least 3, got " + std::to_string(window), "window");
  }
  if (window % 2 == 0) throw ValidationError("window must be odd", "window");
  if (window > kMaxRootCount) {
    throw ValidationError("window must not exceed " + std::to_string(kMaxRootCount), "window");
  }
}

inline PeakSegment extract_segment(const EcgRecord& record, int peak_index, int window, int tau,
                                   PadPolicy pad = PadPolicy::error, bool demean = false) {
  validate_window(window);
  if (peak_index < 0 || peak_index >= static_cast<int>(record.r_peaks.size())) {
    throw NotFound("peak_index " + std::to_string(peak_index) + " out of range: record \"" +
                       record.id + "\" has " + std::to_string(record.r_peaks.size()) + " peaks",
                   "peak_index");
  }
  const std::int64_t half = (window - 1) / 2;
  const std::int64_t centre = record.r_peaks[static_cast<std::size_t>(peak_index)] + tau;
  const std::int64_t first = centre - half;
  const std::int64_t last = centre + half;
  const auto n = static_cast<std::int64_t>(record.samples.size());
  if (pad == PadPolicy::error && (first < 0 || last >= n)) {
    throw WindowOutOfBounds("window [" + std::to_string(first) + ", " + std::to_string(last) +
                            "] around peak " + std::to_string(peak_index) + " with tau=" +
                            std::to_string(tau) + " exceeds record \"" + record.id + "\" of " +
                            std::to_string(n) + " samples");
  }
  PeakSegment seg{record.id, peak_index, tau, std::vector<double>(static_cast<std::size_t>(window))};
  for (std::int64_t i = first; i <= last; ++i) {
    seg.values[static_cast<std::size_t>(i - first)] =
        (i >= 0 && i < n) ? record.samples[static_cast<std::size_t>(i)] : 0.0;
  }
  if (demean) {
    const double mean =
        std::accumulate(seg.values.begin(), seg.values.end(), 0.0) / static_cast<double>(window);
    for (double& v : seg.values) v -= mean;
  }
  return seg;
}

// ---------------------------------------------------------------------------
// Synthesis

struct HermiteTerm {
  int order = 0;
  double amplitude = 0.0;
};

/// One QRS-like beat: sum of amplitude * psi_order((t - position) / delta).
struct SyntheticBeat {
  std::int64_t position = 0;
  double delta = 1.0;
  std::vector<HermiteTerm> terms;
};

/// Builds a record of `length` samples holding the given beats plus white
/// Gaussian noise. r_peaks are the beat positions shifted by
/// `annotation_offset`, which lets tests mis-annotate on purpose.
inline EcgRecord synthesize_record(std::string id, Label label, double fs_hz, std::size_t length,
                                   const std::vector<SyntheticBeat>& beats, double noise_sigma,
                                   std::uint64_t seed, std::int64_t annotation_offset = 0) {
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ValidationError("noise_sigma must be a nonnegative finite number", "noise_sigma");
  }
  EcgRecord r;
  r.id = std::move(id);
  r.label = label;
  r.fs_hz = fs_hz;
  r.samples.assign(length, 0.0);
  std::vector<double> psi;
  for (const auto& beat : beats) {
    detail::check_delta(beat.delta);
    int max_order = 0;
    for (const auto& term : beat.terms) {
      detail::check_order(term.order);
      max_order = std::max(max_order, term.order);
    }
    if (beat.terms.empty()) continue;
    psi.resize(static_cast<std::size_t>(max_order) + 1);
    for (std::size_t i = 0; i < length; ++i) {
      const double t = static_cast<double>(static_cast<std::int64_t>(i) - beat.position);
      detail::unit_hermite_functions(t / beat.delta, psi);
      double v = 0.0;
      for (const auto& term : beat.terms) v += term.amplitude * psi[static_cast<std::size_t>(term.order)];
      r.samples[i] += v;
    }
  }
  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (double& s : r.samples) s += noise(rng);
  }
  for (const auto& beat : beats) r.r_peaks.push_back(beat.position + annotation_offset);
  std::sort(r.r_peaks.begin(), r.r_peaks.end());
  validate_record(r);
  return r;
}

struct SynthesisOptions {
  std::string id = "synthetic";
  Label label = Label::healthy;
  double fs_hz = 250.0;
  int margin = 0;                     // extra samples on each side of the window
  std::int64_t annotation_offset = 0;  // r_peak = true centre + offset
};

/// Single-beat record: window W centred on the beat, padded by
/// options.margin samples on both sides. With the default options the
/// record is exactly the W-sample segment and r_peaks = [C].
inline EcgRecord synthesize_qrs(const std::vector<HermiteTerm>& terms, double delta_true,
                                int window, double noise_sigma, std::uint64_t seed,
                                const SynthesisOptions& options = {}) {
  validate_window(window);
  detail::check_delta(delta_true);
  for (const auto& term : terms) {
    if (term.order < 0 || term.order >= window) {
      throw ValidationError("term order " + std::to_string(term.order) +
                                " must be in [0, W) for W=" + std::to_string(window),
                            "coeff_spec");
    }
  }
  if (!is_admissible_delta(window, delta_true)) {
    const double bound = max_admissible_delta(window);
    throw InadmissibleDelta("delta_true " + std::to_string(delta_true) +
                                " puts the basis support outside a window of " +
                                std::to_string(window) + " samples (max " +
                                std::to_string(bound) + ")",
                            bound);
  }
  if (options.margin < 0) throw ValidationError("margin must be nonnegative", "margin");
  const int half = (window - 1) / 2;
  const std::size_t length = static_cast<std::size_t>(window + 2 * options.margin);
  SyntheticBeat beat{options.margin + half, delta_true, terms};
  return synthesize_record(options.id, options.label, options.fs_hz, length, {beat}, noise_sigma,
                           seed, options.annotation_offset);
}

// ---------------------------------------------------------------------------
// Datasets

struct LoadFailure {
  std::filesystem::path path;
  std::string message;
};

/// Records sorted by id, plus the files that failed to load.
struct Dataset {
  std::vector<EcgRecord> records;
  std::vector<LoadFailure> failures;

  const EcgRecord* find(std::string_view id) const {
    for (const auto& r : records) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }

  const EcgRecord& at(std::string_view id) const {
    if (const auto* r = find(id)) return *r;
    throw NotFound("unknown record \"" + std::string(id) + "\"", "record_id");
  }
};

/// Reads <dir>/healthy and <dir>/diseased. A missing or non-directory root
/// is an error; a missing class subdirectory just contributes nothing.
inline Dataset load_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw NotFound("dataset directory " + dir.string() + " does not exist", "dataset_dir");
  }
  Dataset ds;
  std::vector<fs::path> files;
  for (const char* sub : {"healthy", "diseased"}) {
    const auto subdir = dir / sub;
    if (!fs::is_directory(subdir, ec)) continue;
    for (const auto& entry : fs::directory_iterator(subdir)) {
      if (entry.is_regular_file() && record_format_for(entry.path())) files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, fs::path> seen;
  for (const auto& path : files) {
    try {
      auto record = load_record(path, *record_format_for(path));
      if (auto [it, inserted] = seen.emplace(record.id, path); !inserted) {
        throw ValidationError("duplicate record id \"" + record.id + "\" (also in " +
                                  it->second.string() + ")",
                              "id");
      }
      ds.records.push_back(std::move(record));
    } catch (const Error& e) {
      ds.failures.push_back({path, e.what()});
    }
  }
  std::sort(ds.records.begin(), ds.records.end(),
            [](const EcgRecord& a, const EcgRecord& b) { return a.id < b.id; });
  return ds;
}

}  // namespace hermite_ecg
