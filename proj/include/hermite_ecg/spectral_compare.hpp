#pragma once

// Fourier-domain view of a segment and the HT-vs-FT concentration metrics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hermite_ecg/error.hpp"
#include "hermite_ecg/hermite_transform.hpp"
#include "hermite_ecg/signal_model.hpp"

namespace hermite_ecg {

struct SpectrumResult {
  std::vector<double> magnitudes;  // |X_k|, k = 0 .. W-1
  double l1 = 0.0;
  double l1_over_l2 = 0.0;  // 0 for an all-zero spectrum
};

namespace detail {

inline double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double l1_over_l2(std::span<const double> v) {
  const double l2 = l2_norm(v);
  if (l2 == 0.0) return 0.0;
  double l1 = 0.0;
  for (double x : v) l1 += std::abs(x);
  return l1 / l2;
}

}  // namespace detail

/// Magnitudes of the length-W DFT, X_k = sum_n x_n e^{-2 pi i k n / W}.
/// Direct O(W^2) evaluation; the twiddle index k*n is reduced mod W so
/// each exponent is computed from a small angle.
inline SpectrumResult dft_spectrum(std::span<const double> values) {
  const std::size_t w = values.size();
  for (std::size_t i = 0; i < w; ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("segment value " + std::to_string(i) + " is not finite", "values");
    }
  }
  std::vector<std::complex<double>> twiddle(w);
  for (std::size_t m = 0; m < w; ++m) {
    twiddle[m] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(w));
  }
  SpectrumResult out;
  out.magnitudes.resize(w);
  for (std::size_t k = 0; k < w; ++k) {
    std::complex<double> acc{};
    for (std::size_t n = 0; n < w; ++n) acc += values[n] * twiddle[(k * n) % w];
    out.magnitudes[k] = std::abs(acc);
  }
  out.l1 = std::accumulate(out.magnitudes.begin(), out.magnitudes.end(), 0.0);
  out.l1_over_l2 = detail::l1_over_l2(out.magnitudes);
  return out;
}

inline SpectrumResult dft_spectrum(const PeakSegment& segment) {
  return dft_spectrum(std::span<const double>(segment.values));
}

struct QualityMetrics {
  double prd_percent = 0.0;
  double max_abs_err = 0.0;
  int retained_m = 0;
};

/// PRD = 100 * ||ref - rec|| / ||ref||.
inline QualityMetrics prd(std::span<const double> reference, std::span<const double> reconstruction,
                          int retained_m = 0) {
  if (reference.size() != reconstruction.size()) {
    throw ValidationError("reference has " + std::to_string(reference.size()) +
                              " samples but reconstruction has " +
                              std::to_string(reconstruction.size()),
                          "reconstruction");
  }
  double err2 = 0.0;
  double ref2 = 0.0;
  QualityMetrics q;
  q.retained_m = retained_m;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = reference[i] - reconstruction[i];
    err2 += d * d;
    ref2 += reference[i] * reference[i];
    q.max_abs_err = std::max(q.max_abs_err, std::abs(d));
  }
  if (ref2 == 0.0) throw ValidationError("PRD is undefined for an all-zero reference", "reference");
  q.prd_percent = 100.0 * std::sqrt(err2 / ref2);
  return q;
}

/// PRD of the k-strongest-coefficient reconstruction against the node
/// samples the coefficients were computed from.
inline QualityMetrics top_k_quality(const PeakSegment& segment, const HtResult& result, int k) {
  const auto basis = build_basis(segment.size(), result.delta);
  const auto reference = resample_to_nodes(segment, basis);
  return prd(reference, reconstruct_top_k(result, k), k);
}

/// Fraction of sum(v^2) held by the k largest-magnitude entries, k = 1..size.
/// Empty when the vector has no energy.
inline std::vector<double> top_k_energy_curve(std::span<const double> v) {
  std::vector<double> energy;
  energy.reserve(v.size());
  for (double x : v) energy.push_back(x * x);
  std::sort(energy.begin(), energy.end(), std::greater<>());
  const double total = std::accumulate(energy.begin(), energy.end(), 0.0);
  if (total == 0.0) return {};
  std::vector<double> curve;
  curve.reserve(energy.size());
  double running = 0.0;
  for (double e : energy) {
    running += e;
    curve.push_back(std::min(running / total, 1.0));
  }
  return curve;
}

/// Smallest k whose top-k energy fraction reaches `fraction`; 0 if none does.
inline int coefficients_for_energy(std::span<const double> curve, double fraction) {
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (curve[k] >= fraction) return static_cast<int>(k) + 1;
  }
  return 0;
}

struct DomainConcentration {
  double l1 = 0.0;
  double l1_over_l2 = 0.0;
  std::vector<double> top_k_energy;
};

struct ConcentrationReport {
  std::optional<std::string> degenerate;  // "zero energy" when either domain is empty
  DomainConcentration ht;
  DomainConcentration ft;
};

inline ConcentrationReport concentration_report(const PeakSegment& segment, const HtResult& ht,
                                                const SpectrumResult& spectrum) {
  if (ht.size() != segment.size() || static_cast<int>(spectrum.magnitudes.size()) != segment.size()) {
    throw ValidationError("segment, HT and spectrum lengths differ", "window");
  }
  ConcentrationReport r;
  r.ht = {ht.l1, detail::l1_over_l2(ht.coeffs), top_k_energy_curve(ht.coeffs)};
  r.ft = {spectrum.l1, spectrum.l1_over_l2, top_k_energy_curve(spectrum.magnitudes)};
  if (r.ht.top_k_energy.empty() || r.ft.top_k_energy.empty()) {
    r.degenerate = "zero energy";
    r.ht.top_k_energy.clear();
    r.ft.top_k_energy.clear();
  }
  return r;
}

}  // namespace hermite_ecg
