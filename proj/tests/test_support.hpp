#pragma once

// Test-only helpers and independent oracles. Nothing here calls into the
// recurrences or matrices under test.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace hermite_ecg::testing {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// HP_n(t) from the explicit sum n! sum_m (-1)^m (2t)^{n-2m} / (m! (n-2m)!),
/// in 50-digit arithmetic.
inline BigFloat hermite_polynomial_direct(int n, const BigFloat& t) {
  BigFloat sum = 0;
  BigFloat nfact = boost::multiprecision::tgamma(BigFloat(n + 1));
  for (int m = 0; 2 * m <= n; ++m) {
    BigFloat term = boost::multiprecision::pow(2 * t, n - 2 * m) /
                    (boost::multiprecision::tgamma(BigFloat(m + 1)) *
                     boost::multiprecision::tgamma(BigFloat(n - 2 * m + 1)));
    sum += (m % 2 == 0) ? term : BigFloat(-term);
  }
  return nfact * sum;
}

/// e^{-t^2/2} HP_n(t) / sqrt(2^n n! sqrt(pi)), evaluated literally.
inline double hermite_function_direct(int n, double t_in) {
  const BigFloat t = t_in;
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  const BigFloat norm = boost::multiprecision::sqrt(boost::multiprecision::pow(BigFloat(2), n) *
                                                    boost::multiprecision::tgamma(BigFloat(n + 1)) *
                                                    boost::multiprecision::sqrt(pi));
  return static_cast<double>(boost::multiprecision::exp(-t * t / 2) * hermite_polynomial_direct(n, t) / norm);
}

/// Physicists' HP_n and HP_{n-1} in long double (range to ~1e4932).
inline std::pair<long double, long double> hermite_polynomial_ld(int n, long double t) {
  long double prev = 1.0L;
  long double cur = 2.0L * t;
  if (n == 0) return {1.0L, 0.0L};
  for (int k = 2; k <= n; ++k) {
    const long double next = 2.0L * t * cur - 2.0L * (k - 1) * prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

/// Coefficients of a function by the literal Gauss-Hermite formula
///   c_n = sum_z w_z e^{t_z^2} f(t_z) HF_n(t_z),
///   w_z = 2^{N-1} N! sqrt(pi) / (N^2 HP_{N-1}(t_z)^2),
/// with HF_n taken from the 50-digit direct formula. `f` is sampled on the
/// unit-scale roots.
template <typename F>
std::vector<double> quadrature_coefficients_direct(const std::vector<double>& roots, F&& f) {
  const int n_points = static_cast<int>(roots.size());
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  std::vector<double> coeffs(roots.size(), 0.0);
  for (double tz : roots) {
    const BigFloat t = tz;
    const BigFloat hp = hermite_polynomial_direct(n_points - 1, t);
    const BigFloat w = boost::multiprecision::pow(BigFloat(2), n_points - 1) *
                       boost::multiprecision::tgamma(BigFloat(n_points + 1)) * boost::multiprecision::sqrt(pi) /
                       (BigFloat(n_points) * n_points * hp * hp);
    const BigFloat scaled = w * boost::multiprecision::exp(t * t) * BigFloat(f(tz));
    for (int n = 0; n < n_points; ++n) {
      coeffs[static_cast<std::size_t>(n)] += static_cast<double>(scaled * BigFloat(hermite_function_direct(n, tz)));
    }
  }
  return coeffs;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("hermite_ecg_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace hermite_ecg::testing
