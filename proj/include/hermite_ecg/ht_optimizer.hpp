#pragma once

// Exhaustive (delta, tau) grid search for the Hermite parametrization with
// the smallest l1 coefficient norm.
//
// For every tau the window is re-extracted at r_peak + tau and the delta
// grid delta0 : step : delta_max is scanned; the per-tau minima form the
// measure vector L, and the global optimum is the argmin over L.
// Ties: smaller |tau|, then smaller tau, then smaller delta.

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hermite_ecg/error.hpp"
#include "hermite_ecg/hermite_transform.hpp"
#include "hermite_ecg/quadrature.hpp"
#include "hermite_ecg/signal_model.hpp"

namespace hermite_ecg {

struct SearchSpec {
  double delta0 = 1.0;
  double delta_max = 3.0;
  double delta_step = 0.1;
  int tau_min = -5;
  int tau_max = 5;

  bool operator==(const SearchSpec&) const = default;
};

inline void validate_search_spec(const SearchSpec& spec) {
  if (!(spec.delta0 > 0.0) || !std::isfinite(spec.delta0)) {
    throw ValidationError("delta0 must be positive", "delta0");
  }
  if (!(spec.delta_max >= spec.delta0) || !std::isfinite(spec.delta_max)) {
    throw ValidationError("delta_max must be >= delta0", "delta_max");
  }
  if (!(spec.delta_step > 0.0) || !std::isfinite(spec.delta_step)) {
    throw ValidationError("delta_step must be positive", "delta_step");
  }
  if (spec.tau_max < spec.tau_min) throw ValidationError("tau_max must be >= tau_min", "tau_max");
  if ((spec.delta_max - spec.delta0) / spec.delta_step > 1e6) {
    throw ValidationError("delta grid has more than a million points", "delta_step");
  }
}

/// delta0, delta0 + step, ... through the last value not beyond
/// delta_max + step / 2, so a span that is a whole number of steps keeps
/// its endpoint despite rounding.
inline std::vector<double> delta_grid(const SearchSpec& spec) {
  validate_search_spec(spec);
  const auto count =
      static_cast<long>(std::floor((spec.delta_max - spec.delta0) / spec.delta_step + 0.5)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) grid.push_back(spec.delta0 + static_cast<double>(i) * spec.delta_step);
  return grid;
}

struct DeltaTraceEntry {
  double delta = 0.0;
  bool admissible = false;
  double l1 = 0.0;  // meaningful only when admissible
};

struct DeltaSearchResult {
  double delta_star = 0.0;
  double l1_star = 0.0;
  std::vector<DeltaTraceEntry> trace;
};

/// argmin over the admissible grid deltas of l1(forward_ht(segment, delta)).
/// Inadmissible deltas are recorded in the trace and skipped.
inline DeltaSearchResult optimize_delta(const PeakSegment& segment,
                                        const std::vector<double>& deltas) {
  DeltaSearchResult out;
  std::optional<std::size_t> best;
  for (double delta : deltas) {
    DeltaTraceEntry entry{delta, is_admissible_delta(segment.size(), delta), 0.0};
    if (entry.admissible) {
      entry.l1 = forward_ht(segment, delta).l1;
      if (!best || entry.l1 < out.trace[*best].l1) best = out.trace.size();
    }
    out.trace.push_back(entry);
  }
  if (!best) {
    const double bound = max_admissible_delta(segment.size());
    throw NoAdmissibleDelta("no admissible delta in grid for W=" + std::to_string(segment.size()) +
                                ": max admissible delta is " + std::to_string(bound),
                            bound);
  }
  out.delta_star = out.trace[*best].delta;
  out.l1_star = out.trace[*best].l1;
  return out;
}

inline DeltaSearchResult optimize_delta(const PeakSegment& segment, const SearchSpec& spec) {
  return optimize_delta(segment, delta_grid(spec));
}

struct MeasureEntry {
  int tau = 0;
  double best_delta = 0.0;
  double min_l1 = 0.0;
};

struct GridCell {
  int tau = 0;
  double delta = 0.0;
  double l1 = 0.0;
  bool admissible = false;
};

struct OptimizationReport {
  SearchSpec spec;
  std::vector<MeasureEntry> measure_vector;  // L, one entry per tau
  std::vector<GridCell> full_grid;           // tau-major, delta ascending
  HtResult best;
  std::optional<HtResult> baseline;  // (delta = 1, tau = 0); absent if inadmissible
};

struct SegmentSource {
  const EcgRecord* record = nullptr;
  int peak_index = 0;
  int window = 31;
  PadPolicy pad = PadPolicy::error;
  bool demean = false;

  PeakSegment extract(int tau) const {
    return extract_segment(*record, peak_index, window, tau, pad, demean);
  }
};

namespace detail {

// Strictly better under the (|tau|, tau) preference order.
inline bool tau_preferred(int a, int b) {
  if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
  return a < b;
}

}  // namespace detail

inline OptimizationReport optimize(const SegmentSource& source, const SearchSpec& spec) {
  if (source.record == nullptr) throw ValidationError("segment source has no record", "record_id");
  validate_window(source.window);
  const auto deltas = delta_grid(spec);

  OptimizationReport report;
  report.spec = spec;
  std::optional<std::size_t> best_entry;
  for (int tau = spec.tau_min; tau <= spec.tau_max; ++tau) {
    PeakSegment segment;
    DeltaSearchResult search;
    try {
      segment = source.extract(tau);
      search = optimize_delta(segment, deltas);
    } catch (const NoAdmissibleDelta& e) {
      throw NoAdmissibleDelta("at grid point tau=" + std::to_string(tau) + ": " + e.what(),
                              e.max_admissible());
    } catch (const WindowOutOfBounds& e) {
      throw WindowOutOfBounds("at grid point tau=" + std::to_string(tau) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.kind(), "at grid point tau=" + std::to_string(tau) + ": " + e.what(), e.field());
    }
    for (const auto& t : search.trace) report.full_grid.push_back({tau, t.delta, t.l1, t.admissible});
    report.measure_vector.push_back({tau, search.delta_star, search.l1_star});

    const auto& current = report.measure_vector.back();
    if (!best_entry) {
      best_entry = report.measure_vector.size() - 1;
    } else {
      const auto& incumbent = report.measure_vector[*best_entry];
      if (current.min_l1 < incumbent.min_l1 ||
          (current.min_l1 == incumbent.min_l1 && detail::tau_preferred(current.tau, incumbent.tau))) {
        best_entry = report.measure_vector.size() - 1;
      }
    }
  }

  const auto& winner = report.measure_vector[*best_entry];
  report.best = forward_ht(source.extract(winner.tau), winner.best_delta);
  if (is_admissible_delta(source.window, 1.0)) {
    report.baseline = forward_ht(source.extract(0), 1.0);
  }
  return report;
}

}  // namespace hermite_ecg
