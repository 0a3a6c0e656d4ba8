#pragma once

// Gauss-Hermite analysis/synthesis matrices for N-point transforms.
//
// The scaling factor delta never enters the matrices. Evaluating scaled
// functions HF_n(t, delta) at scaled nodes is the same as evaluating unit
// functions at the unit roots once the signal is read at p_z = delta * t_z,
// so one unit basis per N is computed and cached, and a HermiteBasis pairs
// it with the delta-dependent node positions.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "hermite_ecg/error.hpp"
#include "hermite_ecg/hermite_functions.hpp"

namespace hermite_ecg {

/// Unit-scale quadrature for N points.
///   analysis(n, z)  = psi_n(t_z) / (N * psi_{N-1}(t_z)^2)
///   synthesis(z, n) = psi_n(t_z)
/// analysis * synthesis is the identity because the Gauss-Hermite rule is
/// exact for the degree <= 2N-2 products psi_n psi_m e^{t^2}.
struct UnitQuadrature {
  int size = 0;
  std::vector<double> roots;
  Eigen::MatrixXd analysis;
  Eigen::MatrixXd synthesis;
};

inline UnitQuadrature make_unit_quadrature(int size) {
  UnitQuadrature q;
  q.size = size;
  q.roots = hermite_roots(size);
  const auto n = static_cast<Eigen::Index>(size);
  q.analysis.resize(n, n);
  q.synthesis.resize(n, n);
  std::vector<double> psi(static_cast<std::size_t>(size));
  for (Eigen::Index z = 0; z < n; ++z) {
    detail::unit_hermite_functions(q.roots[static_cast<std::size_t>(z)], psi);
    const double last = psi.back();
    if (last == 0.0 || !std::isfinite(last)) {
      throw NumericalError("HF_{N-1} vanishes at a root of HP_" + std::to_string(size));
    }
    const double weight = 1.0 / (static_cast<double>(size) * last * last);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double v = psi[static_cast<std::size_t>(k)];
      q.synthesis(z, k) = v;
      q.analysis(k, z) = v * weight;
    }
  }
  return q;
}

/// Memoizes unit quadratures by N. Readers share the lock; a miss builds
/// outside the lock and publishes under an exclusive one. Two threads racing
/// on the same N build identical values, so whichever write lands is fine.
class QuadratureCache {
 public:
  std::shared_ptr<const UnitQuadrature> get(int size) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(size); it != entries_.end()) return it->second;
    }
    auto built = std::make_shared<const UnitQuadrature>(make_unit_quadrature(size));
    std::unique_lock lock(mutex_);
    entries_[size] = built;
    return built;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<int, std::shared_ptr<const UnitQuadrature>> entries_;
};

inline QuadratureCache& quadrature_cache() {
  static QuadratureCache cache;
  return cache;
}

/// Largest delta keeping every node delta * t_z inside [-C, C], C = (N-1)/2.
/// Unbounded for N = 1, whose only node sits at the origin.
inline double max_admissible_delta(int size) {
  if (size == 1) return std::numeric_limits<double>::infinity();
  const auto q = quadrature_cache().get(size);
  return 0.5 * (size - 1) / q->roots.back();
}

inline bool is_admissible_delta(int size, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) return false;
  const double bound = max_admissible_delta(size);
  return delta <= bound * (1.0 + 1e-12);
}

struct HermiteBasis {
  std::shared_ptr<const UnitQuadrature> unit;
  double delta = 1.0;
  std::vector<double> node_positions;  // delta * t_z, in samples

  int size() const { return unit->size; }
  int half_width() const { return (unit->size - 1) / 2; }
  const std::vector<double>& roots() const { return unit->roots; }
  const Eigen::MatrixXd& analysis() const { return unit->analysis; }
  const Eigen::MatrixXd& synthesis() const { return unit->synthesis; }
};

inline HermiteBasis build_basis(int size, double delta) {
  if (size < 1 || size > kMaxRootCount) {
    throw ValidationError("basis size " + std::to_string(size) + " outside [1, " +
                              std::to_string(kMaxRootCount) + "]",
                          "N");
  }
  detail::check_delta(delta);
  if (!is_admissible_delta(size, delta)) {
    const double bound = max_admissible_delta(size);
    throw InadmissibleDelta("delta " + std::to_string(delta) + " is inadmissible for N=" +
                                std::to_string(size) + ": max admissible delta is " +
                                std::to_string(bound),
                            bound);
  }
  HermiteBasis basis;
  basis.unit = quadrature_cache().get(size);
  basis.delta = delta;
  basis.node_positions.reserve(basis.unit->roots.size());
  const double half = 0.5 * (size - 1);
  for (double t : basis.unit->roots) {
    basis.node_positions.push_back(std::clamp(delta * t, -half, half));
  }
  return basis;
}

}  // namespace hermite_ecg
