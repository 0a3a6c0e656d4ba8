#pragma once

// Deterministic demo dataset: nine healthy and nine diseased multi-beat
// records built from Hermite-function beats. Healthy beats are narrow and
// near-symmetric; diseased beats are wider, asymmetric and carry a jittered
// R-peak annotation. Healthy records are stored as CSV, diseased as JSON,
// so a generated dataset exercises both loaders.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "hermite_ecg/signal_model.hpp"

namespace hermite_ecg {

inline constexpr int kFixturesPerClass = 9;
inline constexpr std::size_t kFixtureLength = 800;
inline constexpr double kFixtureFs = 250.0;

inline EcgRecord make_fixture_record(Label label, int index) {
  const bool healthy = label == Label::healthy;
  const double k = static_cast<double>(index);
  const std::int64_t rr = healthy ? 170 + 7 * index : 150 + 11 * index;
  const std::int64_t first = 70 + 3 * index;
  const std::int64_t last_allowed = static_cast<std::int64_t>(kFixtureLength) - 70;

  std::vector<SyntheticBeat> beats;
  int beat_no = 0;
  for (std::int64_t pos = first; pos <= last_allowed; pos += rr, ++beat_no) {
    const double b = static_cast<double>(beat_no);
    SyntheticBeat beat;
    beat.position = pos;
    if (healthy) {
      beat.delta = 1.2 + 0.06 * k + 0.02 * std::sin(1.7 * b);
      beat.terms = {{0, 1.0 + 0.05 * k}, {1, 0.08 * std::cos(k)}, {2, -0.28 - 0.01 * k}};
    } else {
      beat.delta = 1.7 + 0.045 * k + 0.03 * std::sin(1.3 * b + k);
      beat.terms = {{0, 0.75 + 0.03 * k}, {1, 0.3 + 0.02 * k}, {2, -0.22}, {3, 0.12 + 0.01 * k}};
    }
    beats.push_back(std::move(beat));
  }

  const std::string id = std::string(healthy ? "h" : "d") + "0" + std::to_string(index + 1);
  auto record = synthesize_record(id, label, kFixtureFs, kFixtureLength, beats, 0.01,
                                  static_cast<std::uint64_t>(1000 * (healthy ? 1 : 2) + index));

  // Slow baseline wander.
  for (std::size_t i = 0; i < record.samples.size(); ++i) {
    const double t = static_cast<double>(i) / kFixtureFs;
    record.samples[i] += 0.04 * std::sin(2.0 * std::numbers::pi * (0.25 + 0.03 * k) * t + k);
  }
  if (!healthy) {
    for (std::size_t i = 0; i < record.r_peaks.size(); ++i) {
      record.r_peaks[i] += static_cast<std::int64_t>((index + static_cast<int>(i)) % 5) - 2;
    }
  }
  validate_record(record);
  return record;
}

inline std::vector<EcgRecord> make_fixture_records() {
  std::vector<EcgRecord> out;
  for (Label label : {Label::healthy, Label::diseased}) {
    for (int i = 0; i < kFixturesPerClass; ++i) out.push_back(make_fixture_record(label, i));
  }
  return out;
}

/// Writes the dataset layout (<dir>/healthy, <dir>/diseased); returns the
/// number of records written.
inline int write_fixture_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "healthy");
  fs::create_directories(dir / "diseased");
  int written = 0;
  for (const auto& record : make_fixture_records()) {
    if (record.label == Label::healthy) {
      save_record(record, dir / "healthy" / (record.id + ".csv"), RecordFormat::csv);
    } else {
      save_record(record, dir / "diseased" / (record.id + ".json"), RecordFormat::json);
    }
    ++written;
  }
  return written;
}

}  // namespace hermite_ecg
