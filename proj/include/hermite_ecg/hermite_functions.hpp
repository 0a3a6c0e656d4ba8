#pragma once

// Physicists' Hermite polynomials, orthonormal Hermite functions and the
// zeros of HP_N. Everything here is evaluated by three-term recurrences;
// the closed forms overflow long before the orders used for N = 256.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hermite_ecg/error.hpp"

namespace hermite_ecg {

inline constexpr int kMaxHermiteOrder = 512;
inline constexpr int kMaxRootCount = 256;

namespace detail {

inline void check_order(int n) {
  if (n < 0 || n > kMaxHermiteOrder) {
    throw ValidationError("hermite order " + std::to_string(n) + " outside [0, " +
                              std::to_string(kMaxHermiteOrder) + "]",
                          "n");
  }
}

inline void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("delta must be a positive finite number", "delta");
  }
}

/// Writes psi_0(x) .. psi_{out.size()-1}(x), the unit-scale orthonormal
/// Hermite functions, using the normalized recurrence
///   psi_k = x sqrt(2/k) psi_{k-1} - sqrt((k-1)/k) psi_{k-2}.
inline void unit_hermite_functions(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (out.size() == 1) return;
  out[1] = std::numbers::sqrt2 * x * out[0];
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    out[k] = x * std::sqrt(2.0 / kd) * out[k - 1] - std::sqrt((kd - 1.0) / kd) * out[k - 2];
  }
}

/// psi_n(x) and psi_{n-1}(x) without storing the whole sequence.
struct HermitePair {
  double value = 0.0;     // psi_n
  double previous = 0.0;  // psi_{n-1}
};

inline HermitePair unit_hermite_pair(int n, double x) {
  double prev = 0.0;
  double cur = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  for (int k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double next = x * std::sqrt(2.0 / kd) * cur - std::sqrt((kd - 1.0) / kd) * prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace detail

/// HP_n(t) via HP_n = 2t HP_{n-1} - 2(n-1) HP_{n-2}.
inline double hermite_polynomial(int n, double t) {
  detail::check_order(n);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * t;
  for (int k = 2; k <= n; ++k) {
    const double next = 2.0 * t * cur - 2.0 * (k - 1) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Scaled Hermite function HF_n(t, delta) = psi_n(t / delta) / sqrt(delta).
/// delta = 1 gives the standard orthonormal Hermite function.
inline double hermite_function(int n, double t, double delta = 1.0) {
  detail::check_order(n);
  detail::check_delta(delta);
  return detail::unit_hermite_pair(n, t / delta).value / std::sqrt(delta);
}

/// HF_0(t, delta) .. HF_max_order(t, delta) in one pass.
inline std::vector<double> hermite_functions(int max_order, double t, double delta = 1.0) {
  detail::check_order(max_order);
  detail::check_delta(delta);
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
  detail::unit_hermite_functions(t / delta, out);
  const double scale = 1.0 / std::sqrt(delta);
  for (double& v : out) v *= scale;
  return out;
}

/// Ascending zeros of HP_N. Initial estimates are the eigenvalues of the
/// symmetric Jacobi matrix (zero diagonal, off-diagonal sqrt(k/2)); each is
/// then polished by Newton steps on psi_N, whose derivative is
/// sqrt(2N) psi_{N-1} - t psi_N.
inline std::vector<double> hermite_roots(int count) {
  if (count < 1 || count > kMaxRootCount) {
    throw ValidationError("root count " + std::to_string(count) + " outside [1, " +
                              std::to_string(kMaxRootCount) + "]",
                          "N");
  }
  const auto n = static_cast<Eigen::Index>(count);
  if (count == 1) return {0.0};

  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Jacobi eigenvalue solve failed for N=" + std::to_string(count));
  }

  std::vector<double> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  const double scale = std::sqrt(2.0 * count);
  for (double& t : roots) {
    for (int iter = 0; iter < 8; ++iter) {
      const auto [value, previous] = detail::unit_hermite_pair(count, t);
      const double slope = scale * previous - t * value;
      if (slope == 0.0) break;
      const double step = value / slope;
      t -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(t))) break;
    }
  }

  // Exact symmetry about the origin; the middle root of odd N is zero.
  for (std::size_t i = 0, j = roots.size() - 1; i < j; ++i, --j) {
    const double r = 0.5 * (roots[j] - roots[i]);
    roots[i] = -r;
    roots[j] = r;
  }
  if (count % 2 == 1) roots[roots.size() / 2] = 0.0;

  for (double t : roots) {
    const auto [value, previous] = detail::unit_hermite_pair(count, t);
    const double slope = scale * previous - t * value;
    if (!(std::abs(value) < 1e-8 * std::abs(slope))) {
      throw NumericalError("Newton refinement of HP_" + std::to_string(count) +
                           " roots did not converge");
    }
  }
  return roots;
}

}  // namespace hermite_ecg
