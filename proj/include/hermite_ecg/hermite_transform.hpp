#pragma once

// Forward and inverse Hermite transform of peak segments, standard
// (delta = 1) and scaled. The signal is read at the non-uniform nodes
// p_z = delta * t_z by truncated sinc interpolation over the window, then
// mapped to coefficients with the cached unit analysis matrix.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hermite_ecg/error.hpp"
#include "hermite_ecg/quadrature.hpp"
#include "hermite_ecg/signal_model.hpp"

namespace hermite_ecg {

struct SegmentRef {
  std::string record_id;
  int peak_index = 0;
  int window = 0;

  bool operator==(const SegmentRef&) const = default;
};

struct HtResult {
  std::vector<double> coeffs;
  double delta = 1.0;
  int tau = 0;
  double l1 = 0.0;
  SegmentRef segment_ref;

  int size() const { return static_cast<int>(coeffs.size()); }
  bool operator==(const HtResult&) const = default;
};

/// Sum of |c_n|; rejects non-finite input.
inline double l1_measure(std::span<const double> coeffs) {
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!std::isfinite(coeffs[i])) {
      throw NumericalError("coefficient " + std::to_string(i) + " is not finite");
    }
    sum += std::abs(coeffs[i]);
  }
  return sum;
}

/// Band-limited value at `position` (samples, origin at the window centre)
/// from the samples n = -C .. C:
///   sum_n x[n] sin(pi (p - n)) / (pi (p - n))
///     = sin(pi p) / pi * sum_n (-1)^n x[n] / (p - n).
/// Integer positions return the sample itself (zero outside the window).
inline double sinc_interpolate(std::span<const double> values, double position) {
  const auto half = static_cast<std::int64_t>(values.size() / 2);
  const double nearest = std::round(position);
  if (std::abs(position - nearest) < 1e-12) {
    const auto k = static_cast<std::int64_t>(nearest);
    return (k >= -half && k <= half) ? values[static_cast<std::size_t>(k + half)] : 0.0;
  }
  double sum = 0.0;
  for (std::int64_t n = -half; n <= half; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    sum += sign * values[static_cast<std::size_t>(n + half)] / (position - static_cast<double>(n));
  }
  return std::sin(std::numbers::pi * position) / std::numbers::pi * sum;
}

inline std::vector<double> resample_to_nodes(std::span<const double> values,
                                             const HermiteBasis& basis) {
  if (static_cast<int>(values.size()) != basis.size()) {
    throw ValidationError("segment length " + std::to_string(values.size()) +
                              " does not match basis size " + std::to_string(basis.size()),
                          "window");
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (double p : basis.node_positions) out.push_back(sinc_interpolate(values, p));
  return out;
}

inline std::vector<double> resample_to_nodes(const PeakSegment& segment, const HermiteBasis& basis) {
  return resample_to_nodes(std::span<const double>(segment.values), basis);
}

/// Coefficients c = A * x(p) for the given node samples.
inline std::vector<double> analyze_nodes(std::span<const double> node_values,
                                         const HermiteBasis& basis) {
  const Eigen::Map<const Eigen::VectorXd> x(node_values.data(),
                                            static_cast<Eigen::Index>(node_values.size()));
  const Eigen::VectorXd c = basis.analysis() * x;
  std::vector<double> out(c.data(), c.data() + c.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i])) {
      throw NumericalError("Hermite coefficient " + std::to_string(i) + " is not finite");
    }
  }
  return out;
}

/// Forward transform of raw window values; tau and segment_ref are left
/// default. Prefer the PeakSegment overload in application code.
inline HtResult forward_ht(std::span<const double> values, double delta) {
  if (values.size() % 2 == 0) throw ValidationError("window must be odd", "window");
  const auto basis = build_basis(static_cast<int>(values.size()), delta);
  HtResult r;
  r.coeffs = analyze_nodes(resample_to_nodes(values, basis), basis);
  r.delta = delta;
  r.l1 = l1_measure(r.coeffs);
  r.segment_ref.window = static_cast<int>(values.size());
  return r;
}

inline HtResult forward_ht(const PeakSegment& segment, double delta) {
  validate_window(segment.size());
  auto r = forward_ht(std::span<const double>(segment.values), delta);
  r.tau = segment.tau;
  r.segment_ref = {segment.record_id, segment.peak_index, segment.size()};
  return r;
}

/// Reconstruction at the node grid from the first `order_count` coefficients.
inline std::vector<double> inverse_ht(const HtResult& result, int order_count) {
  const int n = result.size();
  if (order_count < 1 || order_count > n) {
    throw ValidationError("M must be in [1, " + std::to_string(n) + "], got " +
                              std::to_string(order_count),
                          "M");
  }
  const auto basis = build_basis(n, result.delta);
  const Eigen::Map<const Eigen::VectorXd> c(result.coeffs.data(), order_count);
  const Eigen::VectorXd x = basis.synthesis().leftCols(order_count) * c;
  return {x.data(), x.data() + x.size()};
}

/// Indices of the k largest |c_n|, strongest first; ties go to the lower
/// order.
inline std::vector<int> strongest_coefficients(std::span<const double> coeffs, int k) {
  std::vector<int> order(coeffs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(coeffs[static_cast<std::size_t>(a)]) >
           std::abs(coeffs[static_cast<std::size_t>(b)]);
  });
  order.resize(static_cast<std::size_t>(std::clamp(k, 0, static_cast<int>(coeffs.size()))));
  return order;
}

/// Reconstruction at the node grid keeping only the k strongest
/// coefficients (the compression view: "top-k").
inline std::vector<double> reconstruct_top_k(const HtResult& result, int k) {
  const int n = result.size();
  if (k < 1 || k > n) {
    throw ValidationError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k),
                          "M");
  }
  const auto basis = build_basis(n, result.delta);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int idx : strongest_coefficients(result.coeffs, k)) c(idx) = result.coeffs[static_cast<std::size_t>(idx)];
  const Eigen::VectorXd x = basis.synthesis() * c;
  return {x.data(), x.data() + x.size()};
}

}  // namespace hermite_ecg
