#include "hdist/error_analysis.hpp"

#include "hdist/datagen.hpp"

#include <cmath>
#include <limits>

namespace hdist {

double n_eff(Index m, Index n) {
    detail::require(m >= 1 && n >= 1, "n_eff: sizes must be >= 1");
    const double log_n = std::log(static_cast<double>(std::max<Index>(n, 2)));
    const double log_m = std::log(static_cast<double>(std::max<Index>(m, 2)));
    return static_cast<double>(m) * log_n + static_cast<double>(n) * log_m;
}

double worst_case_bound(double epsilon, double d_h) {
    detail::require(epsilon >= 0.0 && d_h >= 0.0,
                    "worst_case_bound: arguments must be nonnegative");
    return epsilon * d_h;
}

double refined_bound(double epsilon, const GeometryStats& stats, Index d, double n_eff) {
    detail::require(epsilon >= 0.0, "refined_bound: epsilon must be nonnegative");
    detail::require(d >= 1, "refined_bound: dimension must be >= 1");
    detail::require(n_eff > 1.0, "refined_bound: n_eff must exceed 1");
    return epsilon * stats.spread * std::sqrt(std::log(n_eff) / static_cast<double>(d));
}

ErrorBoundReport error_report(const PointSet& a, const PointSet& b, const ApproxConfig& cfg,
                              std::uint64_t seed) {
    detail::require(a.dim() == b.dim(), "error_report: dimension mismatch");

    ErrorBoundReport report;
    const HausdorffResult exact = hausdorff_exact(a, b);
    const ApproxResult approx = approximate_hausdorff(a, b, cfg, seed);
    report.d_h_exact = exact.value;
    report.d_h_approx = approx.value;
    report.abs_error = std::abs(exact.value - approx.value);
    report.stats = geometry_stats(a, b);
    report.intrinsic_dim = a.dim();
    report.n_eff = n_eff(a.size(), b.size());

    // Exact forward NN distances a -> B: mean/std plus the concentration
    // tail frequency they define.
    std::vector<double> nn(static_cast<std::size_t>(a.size()));
    for (Index i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < b.size(); ++j)
            best = std::min(best, euclidean_distance(a.point(i), b.point(j)));
        nn[static_cast<std::size_t>(i)] = best;
    }
    double mean = 0.0;
    for (double v : nn) mean += v;
    mean /= static_cast<double>(nn.size());
    double var = 0.0;
    for (double v : nn) var += (v - mean) * (v - mean);
    var /= static_cast<double>(nn.size());
    report.nn_dist_mean = mean;
    report.nn_dist_std = std::sqrt(var);
    Index tail = 0;
    for (double v : nn)
        if (v > mean + report.nn_dist_std) ++tail;
    report.tail_fraction = static_cast<double>(tail) / static_cast<double>(nn.size());
    report.tail_bound = std::exp(-static_cast<double>(a.dim()));

    // Guaranteed backends expose their contract epsilon; for empirical
    // backends the forward pass is rated against the exact NN distances.
    const AnnContract contract{cfg.backend == AnnBackend::ExactScan ? 0.0 : cfg.params.epsilon,
                               cfg.backend != AnnBackend::NavigableGraph};
    if (contract.guaranteed) {
        report.epsilon_used = contract.epsilon;
    } else {
        const auto index = build_index(b, cfg.backend, cfg.params, seed);
        double worst = 0.0;
        for (Index i = 0; i < a.size(); ++i) {
            const NnResult got = index->query(a.point(i));
            const double truth = nn[static_cast<std::size_t>(i)];
            if (truth == 0.0) {
                if (got.distance > 0.0) worst = std::numeric_limits<double>::infinity();
                continue;
            }
            worst = std::max(worst, got.distance / truth - 1.0);
        }
        report.epsilon_used = worst;
    }

    report.worst_case_bound = worst_case_bound(report.epsilon_used, report.d_h_exact);
    report.geometric_bound = report.epsilon_used * report.stats.spread;
    report.refined_bound =
        refined_bound(report.epsilon_used, report.stats, report.intrinsic_dim, report.n_eff);
    return report;
}

std::vector<SweepRow> error_growth_sweep(const std::vector<Index>& sizes, DimPolicy policy,
                                         Index fixed_d, Index trials, std::uint64_t seed,
                                         const ApproxConfig& cfg) {
    detail::require(!sizes.empty(), "error_growth_sweep: sizes must be non-empty");
    detail::require(trials >= 1, "error_growth_sweep: trials must be >= 1");
    detail::require(policy == DimPolicy::LogGrowth || fixed_d >= 1,
                    "error_growth_sweep: fixed dimension must be >= 1");

    const double epsilon = cfg.backend == AnnBackend::ExactScan ? 0.0 : cfg.params.epsilon;
    std::vector<SweepRow> rows;
    std::uint64_t instance = 0;
    for (Index size : sizes) {
        detail::require(size >= 1, "error_growth_sweep: sizes must be >= 1");
        SweepRow row;
        row.size = size;
        row.d = policy == DimPolicy::Fixed
                    ? fixed_d
                    : static_cast<Index>(std::ceil(std::log(static_cast<double>(2 * size))));
        row.d = std::max<Index>(row.d, 1);
        row.n_eff = n_eff(size, size);
        GeometryStats unit;
        unit.spread = 1.0;  // geometry factor held constant: rows isolate the size trend
        row.bound = refined_bound(epsilon, unit, row.d, row.n_eff);
        for (Index t = 0; t < trials; ++t) {
            GenSpec spec;
            spec.family = GenFamily::UniformCube;
            spec.m = size;
            spec.n = size;
            spec.d = row.d;
            spec.seed = seed + 0x9e3779b97f4a7c15ULL * ++instance;
            const auto [set_a, set_b] = generate_pair(spec);
            const ErrorBoundReport report = error_report(set_a, set_b, cfg, spec.seed);
            row.mean_abs_error += report.abs_error;
            row.mean_spread += report.stats.spread;
        }
        row.mean_abs_error /= static_cast<double>(trials);
        row.mean_spread /= static_cast<double>(trials);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hdist
