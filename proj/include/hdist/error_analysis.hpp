#pragma once

#include "hdist/approx.hpp"

#include <cstdint>
#include <vector>

namespace hdist {

/// Every bound quantity for one instance, next to the measured error.
struct ErrorBoundReport {
    double epsilon_used = 0.0;  // contract epsilon, or the measured ratio
                                // excess for non-guaranteed backends
    double d_h_exact = 0.0;
    double d_h_approx = 0.0;
    double abs_error = 0.0;
    double worst_case_bound = 0.0;  // epsilon * d_H
    double geometric_bound = 0.0;   // epsilon * spread
    double n_eff = 0.0;
    double refined_bound = 0.0;  // epsilon * spread * sqrt(ln n_eff / d)
    Index intrinsic_dim = 0;
    double nn_dist_mean = 0.0;  // mean of exact forward NN distances
    double nn_dist_std = 0.0;
    double tail_fraction = 0.0;  // share of NN distances above mean + std
    double tail_bound = 0.0;     // exp(-d), the concentration reference
    GeometryStats stats;
};

/// Effective query count m ln n + n ln m, with singleton sets guarded so
/// the value stays positive.
double n_eff(Index m, Index n);

/// epsilon * d_H.
double worst_case_bound(double epsilon, double d_h);

/// epsilon * spread * sqrt(ln(n_eff) / d) with unit leading constant.
/// Requires n_eff > 1.
double refined_bound(double epsilon, const GeometryStats& stats, Index d, double n_eff);

/// Runs the exact oracle and the configured approximation on one instance
/// and assembles every bound next to the realized error. Desk scale only:
/// the O(mn) oracle must be feasible.
ErrorBoundReport error_report(const PointSet& a, const PointSet& b, const ApproxConfig& cfg,
                              std::uint64_t seed);

enum class DimPolicy { Fixed, LogGrowth };

struct SweepRow {
    Index size = 0;  // per-set size; m = n = size
    Index d = 0;
    double n_eff = 0.0;
    double bound = 0.0;  // closed-form factor: epsilon * sqrt(ln n_eff / d),
                         // unit spread so rows isolate the size trend
    double mean_abs_error = 0.0;  // measured, reported but never asserted
    double mean_spread = 0.0;
};

/// Closed-form bound trend across sizes, with measured errors alongside.
/// Under DimPolicy::Fixed every row uses `fixed_d`; under LogGrowth the
/// dimension is ceil(ln(m + n)) per row.
std::vector<SweepRow> error_growth_sweep(const std::vector<Index>& sizes, DimPolicy policy,
                                         Index fixed_d, Index trials, std::uint64_t seed,
                                         const ApproxConfig& cfg);

}  // namespace hdist
