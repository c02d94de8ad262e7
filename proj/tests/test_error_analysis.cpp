#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdist/datagen.hpp"
#include "hdist/error_analysis.hpp"

#include <cmath>

using namespace hdist;

namespace {

Vector make_vec(std::initializer_list<double> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

}  // namespace

TEST_CASE("n_eff closed form") {
    CHECK(n_eff(2, 2) == doctest::Approx(4.0 * std::log(2.0)));       // ~2.7726
    CHECK(n_eff(1, 1) == doctest::Approx(2.0 * std::log(2.0)));       // guarded singletons
    CHECK(n_eff(1000, 1000) == doctest::Approx(2000.0 * std::log(1000.0)));  // ~13815.5
    CHECK(n_eff(1000, 1000) == doctest::Approx(13815.51).epsilon(1e-4));
    CHECK_THROWS_AS(n_eff(0, 1), UsageError);
}

TEST_CASE("worst_case_bound") {
    CHECK(worst_case_bound(0.0, 123.0) == 0.0);
    CHECK(worst_case_bound(0.1, 5.0) == doctest::Approx(0.5));
    CHECK(worst_case_bound(0.1, 0.0) == 0.0);
    CHECK_THROWS_AS(worst_case_bound(-0.1, 1.0), UsageError);
}

TEST_CASE("refined_bound closed form and edge cases") {
    GeometryStats stats;
    stats.d_max = 10.0;
    stats.delta = 6.0;
    stats.spread = 8.0;

    CHECK(refined_bound(0.0, stats, 4, 100.0) == 0.0);

    GeometryStats degenerate;
    degenerate.d_max = 3.0;
    degenerate.delta = 3.0;
    degenerate.spread = 0.0;
    CHECK(refined_bound(0.5, degenerate, 4, 100.0) == 0.0);

    // d = 16 and n_eff = e^16 make sqrt(ln(n_eff)/d) exactly one.
    CHECK(refined_bound(0.1, stats, 16, std::exp(16.0)) == doctest::Approx(0.8));

    CHECK_THROWS_AS(refined_bound(0.1, stats, 4, 1.0), UsageError);
    CHECK_THROWS_AS(refined_bound(0.1, stats, 0, 10.0), UsageError);
}

TEST_CASE("refined_bound is monotone in every factor") {
    GeometryStats stats;
    stats.spread = 2.0;
    const double base = refined_bound(0.1, stats, 8, 50.0);

    CHECK(refined_bound(0.2, stats, 8, 50.0) >= base);

    GeometryStats wider = stats;
    wider.spread = 3.0;
    CHECK(refined_bound(0.1, wider, 8, 50.0) >= base);

    CHECK(refined_bound(0.1, stats, 8, 500.0) >= base);
    CHECK(refined_bound(0.1, stats, 16, 50.0) <= base);
}

TEST_CASE("error_report with the exact backend has zero error") {
    GenSpec spec;
    spec.family = GenFamily::UniformCube;
    spec.m = 40;
    spec.n = 30;
    spec.d = 4;
    spec.seed = 11;
    const auto [a, b] = generate_pair(spec);

    ApproxConfig cfg;
    cfg.mode = ApproxMode::Dual;
    cfg.backend = AnnBackend::ExactScan;
    const ErrorBoundReport report = error_report(a, b, cfg, 0);
    CHECK(report.abs_error == 0.0);
    CHECK(report.epsilon_used == 0.0);
    CHECK(report.worst_case_bound >= 0.0);
    CHECK(report.geometric_bound >= 0.0);
    CHECK(report.refined_bound >= 0.0);
    CHECK(report.n_eff == doctest::Approx(n_eff(40, 30)));
    CHECK(report.intrinsic_dim == 4);
}

TEST_CASE("dual kd-tree error stays within the worst-case bound") {
    for (std::uint64_t trial = 0; trial < 25; ++trial) {
        GenSpec spec;
        spec.family = trial % 2 == 0 ? GenFamily::UniformCube : GenFamily::GaussianClusters;
        spec.m = 20 + static_cast<Index>(trial) * 3;
        spec.n = 25 + static_cast<Index>(trial) * 2;
        spec.d = 1 + static_cast<Index>(trial % 8);
        spec.seed = 900 + trial;
        spec.clusters = 3;
        const auto [a, b] = generate_pair(spec);

        ApproxConfig cfg;
        cfg.mode = ApproxMode::Dual;
        cfg.backend = AnnBackend::KdTreeEps;
        cfg.params.epsilon = 0.1;
        const ErrorBoundReport report = error_report(a, b, cfg, spec.seed);
        CHECK(report.abs_error <= report.worst_case_bound + 1e-12);
        CHECK(report.d_h_approx >= report.d_h_exact - 1e-12);
    }
}

TEST_CASE("error_report fields match hand computation on a fixed fixture") {
    // A = {0, 3}, B = {1, 7} in one dimension.
    const PointSet a(std::vector<Vector>{make_vec({0}), make_vec({3})});
    const PointSet b(std::vector<Vector>{make_vec({1}), make_vec({7})});
    ApproxConfig cfg;
    cfg.mode = ApproxMode::Dual;
    cfg.backend = AnnBackend::ExactScan;
    const ErrorBoundReport report = error_report(a, b, cfg, 0);

    // Exact: forward sup = max(1, 2) = 2; backward sup = max(1, 4) = 4.
    CHECK(report.d_h_exact == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(report.d_h_approx == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(report.abs_error <= 1e-9);
    // Cross distances: |0-1|=1, |0-7|=7, |3-1|=2, |3-7|=4.
    CHECK(report.stats.d_max == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(report.stats.delta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(report.stats.spread == doctest::Approx(std::sqrt(48.0)).epsilon(1e-12));
    // Forward NN distances {1, 2}: mean 1.5, population std 0.5.
    CHECK(report.nn_dist_mean == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(report.nn_dist_std == doctest::Approx(0.5).epsilon(1e-12));
    // One of two NN distances exceeds mean + std = 2 is false: 2 > 2 fails.
    CHECK(report.tail_fraction == 0.0);
    CHECK(report.tail_bound == doctest::Approx(std::exp(-1.0)));
    CHECK(report.n_eff == doctest::Approx(n_eff(2, 2)).epsilon(1e-12));
}

TEST_CASE("error growth sweep trends") {
    ApproxConfig cfg;
    cfg.mode = ApproxMode::Dual;
    cfg.backend = AnnBackend::KdTreeEps;
    cfg.params.epsilon = 0.1;

    const auto single = error_growth_sweep({32}, DimPolicy::Fixed, 4, 1, 5, cfg);
    REQUIRE(single.size() == 1);
    CHECK(single[0].size == 32);
    CHECK(single[0].d == 4);

    const std::vector<Index> sizes = {256, 512, 1024, 2048, 4096};
    const auto fixed = error_growth_sweep(sizes, DimPolicy::Fixed, 8, 1, 5, cfg);
    REQUIRE(fixed.size() == sizes.size());
    for (std::size_t i = 1; i < fixed.size(); ++i)
        CHECK(fixed[i].bound > fixed[i - 1].bound);  // strictly increasing

    const auto grown = error_growth_sweep(sizes, DimPolicy::LogGrowth, 0, 1, 5, cfg);
    double mean = 0.0;
    for (const auto& row : grown) mean += row.bound;
    mean /= static_cast<double>(grown.size());
    for (const auto& row : grown) {
        CHECK(row.bound >= 0.95 * mean);
        CHECK(row.bound <= 1.05 * mean);
        CHECK(row.d == static_cast<Index>(
                           std::ceil(std::log(2.0 * static_cast<double>(row.size)))));
    }

    CHECK_THROWS_AS(error_growth_sweep({}, DimPolicy::Fixed, 4, 1, 0, cfg), UsageError);
}
