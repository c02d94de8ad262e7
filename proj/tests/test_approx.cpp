#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdist/approx.hpp"
#include "hdist/datagen.hpp"

#include <cmath>
#include <vector>

using namespace hdist;

namespace {

Vector make_vec(std::initializer_list<double> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

GenSpec random_spec(Index trial, Index max_size, std::uint64_t seed) {
    static constexpr GenFamily kFamilies[] = {GenFamily::UniformCube,
                                              GenFamily::GaussianClusters,
                                              GenFamily::SphereShell};
    static constexpr Index kDims[] = {1, 2, 4, 8};
    detail::SampleStream s(seed + 101 * static_cast<std::uint64_t>(trial));
    GenSpec spec;
    spec.family = kFamilies[trial % 3];
    spec.m = 1 + static_cast<Index>(s.bits() % static_cast<std::uint64_t>(max_size));
    spec.n = 1 + static_cast<Index>(s.bits() % static_cast<std::uint64_t>(max_size));
    spec.d = kDims[trial % 4];
    spec.seed = s.bits();
    spec.clusters = std::min<Index>(3, std::min(spec.m, spec.n));
    return spec;
}

bool buckets_partition_queries(const BucketMap& buckets, Index query_size) {
    std::vector<int> hits(static_cast<std::size_t>(query_size), 0);
    for (const auto& bucket : buckets)
        for (Index q : bucket) {
            if (q < 0 || q >= query_size) return false;
            ++hits[static_cast<std::size_t>(q)];
        }
    for (int h : hits)
        if (h != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("self comparison is zero with identity buckets") {
    GenSpec spec;
    spec.family = GenFamily::UniformCube;
    spec.m = 30;
    spec.n = 30;
    spec.d = 4;
    spec.seed = 7;
    const PointSet a = generate_pair(spec).first;

    for (ApproxMode mode : {ApproxMode::Cached, ApproxMode::Dual}) {
        ApproxConfig cfg;
        cfg.mode = mode;
        cfg.backend = AnnBackend::ExactScan;
        const ApproxResult r = approximate_hausdorff(a, a, cfg, 0);
        CHECK(r.value == 0.0);
        CHECK(r.uncovered_count == 0);
        REQUIRE(r.bucket_map.size() == static_cast<std::size_t>(a.size()));
        for (Index b = 0; b < a.size(); ++b) {
            REQUIRE(r.bucket_map[static_cast<std::size_t>(b)].size() == 1);
            CHECK(r.bucket_map[static_cast<std::size_t>(b)].front() == b);
        }
    }
}

TEST_CASE("hand-traceable two-point instance") {
    const PointSet a(std::vector<Vector>{make_vec({0}), make_vec({10})});
    const PointSet b(std::vector<Vector>{make_vec({0})});
    ApproxConfig cfg;
    cfg.backend = AnnBackend::ExactScan;
    cfg.swap_policy = SwapPolicy::IndexSecondArg;  // index B, query from A
    const ApproxResult r = approximate_hausdorff(a, b, cfg, 0);
    CHECK(r.value == 10.0);
    CHECK(r.forward_sup == 10.0);
    CHECK(r.backward_sup == 0.0);
    CHECK_FALSE(r.swapped);
    REQUIRE(r.bucket_map.size() == 1);
    CHECK(r.bucket_map[0] == std::vector<Index>{0, 1});
    CHECK(r.uncovered_count == 0);
    CHECK(r.value == hausdorff_exact(a, b).value);

    CHECK_THROWS_AS(
        approximate_hausdorff(a, PointSet(std::vector<Vector>{make_vec({0, 0})}), cfg, 0),
        UsageError);
}

TEST_CASE("dual mode with a guaranteed backend sandwiches the exact value") {
    for (Index trial = 0; trial < 50; ++trial) {
        const GenSpec spec = random_spec(trial, 200, 1000);
        const auto [a, b] = generate_pair(spec);
        ApproxConfig cfg;
        cfg.mode = ApproxMode::Dual;
        cfg.backend = AnnBackend::KdTreeEps;
        cfg.params.epsilon = 0.1;
        const double exact = hausdorff_exact(a, b).value;
        const double approx = approximate_hausdorff(a, b, cfg, spec.seed).value;
        CHECK(approx >= exact - 1e-12);
        CHECK(approx <= 1.1 * exact + 1e-9);
    }
}

TEST_CASE("dual mode over the exact scan reproduces the oracle bit-exactly") {
    for (Index trial = 0; trial < 30; ++trial) {
        const GenSpec spec = random_spec(trial, 100, 2000);
        const auto [a, b] = generate_pair(spec);
        ApproxConfig cfg;
        cfg.mode = ApproxMode::Dual;
        cfg.backend = AnnBackend::ExactScan;
        CHECK(approximate_hausdorff(a, b, cfg, spec.seed).value ==
              hausdorff_exact(a, b).value);
    }
}

TEST_CASE("cached mode with fallback never undershoots the oracle") {
    for (Index trial = 0; trial < 40; ++trial) {
        const GenSpec spec = random_spec(trial, 150, 3000);
        const auto [a, b] = generate_pair(spec);
        const double exact = hausdorff_exact(a, b).value;

        ApproxConfig cfg;
        cfg.mode = ApproxMode::Cached;
        cfg.uncovered_policy = UncoveredPolicy::BruteForceFallback;

        cfg.backend = AnnBackend::ExactScan;
        const double cached_exact = approximate_hausdorff(a, b, cfg, spec.seed).value;
        CHECK(cached_exact >= exact - 1e-12);
        // With the exact backend the cached estimate collapses to the oracle:
        // covered reverse estimates are dominated by the forward pass and
        // uncovered points fall back to exact scans.
        CHECK(cached_exact == exact);

        cfg.backend = AnnBackend::KdTreeEps;
        cfg.params.epsilon = 0.1;
        CHECK(approximate_hausdorff(a, b, cfg, spec.seed).value >= exact - 1e-12);
    }
}

TEST_CASE("bucket lists always partition the query set") {
    for (Index trial = 0; trial < 20; ++trial) {
        const GenSpec spec = random_spec(trial, 120, 4000);
        const auto [a, b] = generate_pair(spec);
        ApproxConfig cfg;
        cfg.backend = AnnBackend::KdTreeEps;
        const ApproxResult r = approximate_hausdorff(a, b, cfg, spec.seed);
        const Index query_size = r.swapped ? b.size() : a.size();
        const Index indexed_size = r.swapped ? a.size() : b.size();
        REQUIRE(r.bucket_map.size() == static_cast<std::size_t>(indexed_size));
        CHECK(buckets_partition_queries(r.bucket_map, query_size));

        Index empties = 0;
        for (const auto& bucket : r.bucket_map)
            if (bucket.empty()) ++empties;
        CHECK(empties == r.uncovered_count);
    }
}

TEST_CASE("uncovered policies differ exactly on the uncovered points") {
    // B holds a far outlier no point of A maps to, so its bucket is empty.
    const PointSet a(std::vector<Vector>{make_vec({0, 0}), make_vec({1, 0})});
    const PointSet b(std::vector<Vector>{make_vec({0, 0.5}), make_vec({100, 0})});
    ApproxConfig cfg;
    cfg.backend = AnnBackend::ExactScan;
    cfg.swap_policy = SwapPolicy::IndexSecondArg;

    cfg.uncovered_policy = UncoveredPolicy::BruteForceFallback;
    const ApproxResult with_fallback = approximate_hausdorff(a, b, cfg, 0);
    CHECK(with_fallback.uncovered_count == 1);
    CHECK(with_fallback.fallback_cost == static_cast<std::uint64_t>(a.size()));
    CHECK(with_fallback.value == hausdorff_exact(a, b).value);  // = 99 via the outlier

    cfg.uncovered_policy = UncoveredPolicy::PaperInfinity;
    const ApproxResult literal = approximate_hausdorff(a, b, cfg, 0);
    CHECK(literal.uncovered_count == 1);
    CHECK(literal.fallback_cost == 0);
    CHECK(std::isfinite(literal.value));
    // The outlier is excluded, so the estimate collapses to the covered terms.
    CHECK(literal.value < with_fallback.value);
}

TEST_CASE("swap policies choose the indexed set") {
    GenSpec spec;
    spec.family = GenFamily::UniformCube;
    spec.m = 10;
    spec.n = 50;
    spec.d = 3;
    spec.seed = 5050;
    const auto [a, b] = generate_pair(spec);

    ApproxConfig cfg;
    cfg.backend = AnnBackend::ExactScan;
    cfg.swap_policy = SwapPolicy::IndexSmaller;
    const ApproxResult smaller = approximate_hausdorff(a, b, cfg, 0);
    CHECK(smaller.swapped);  // m < n, so the index went on A
    CHECK(smaller.query_count == static_cast<std::uint64_t>(b.size()));

    cfg.swap_policy = SwapPolicy::IndexSecondArg;
    const ApproxResult second = approximate_hausdorff(a, b, cfg, 0);
    CHECK_FALSE(second.swapped);
    CHECK(second.query_count == static_cast<std::uint64_t>(a.size()));

    // Both orders reach the exact answer under the exact backend + fallback.
    CHECK(smaller.value == hausdorff_exact(a, b).value);
    CHECK(second.value == hausdorff_exact(a, b).value);
}

TEST_CASE("results are deterministic for a fixed seed and config") {
    const GenSpec spec = random_spec(3, 100, 6000);
    const auto [a, b] = generate_pair(spec);
    for (AnnBackend backend :
         {AnnBackend::ExactScan, AnnBackend::KdTreeEps, AnnBackend::NavigableGraph}) {
        ApproxConfig cfg;
        cfg.backend = backend;
        cfg.mode = ApproxMode::Dual;
        const ApproxResult r1 = approximate_hausdorff(a, b, cfg, 99);
        const ApproxResult r2 = approximate_hausdorff(a, b, cfg, 99);
        CHECK(r1.value == r2.value);
        CHECK(r1.forward_sup == r2.forward_sup);
        CHECK(r1.backward_sup == r2.backward_sup);
        CHECK(r1.query_count == r2.query_count);
        CHECK(r1.visit_count == r2.visit_count);
    }
}

TEST_CASE("forward direction is reported as A to B regardless of swapping") {
    // Asymmetric instance: forward (A->B) is small, backward is large.
    const PointSet a(std::vector<Vector>{make_vec({0, 0})});
    const PointSet b(std::vector<Vector>{make_vec({0, 0}), make_vec({7, 0})});
    ApproxConfig cfg;
    cfg.backend = AnnBackend::ExactScan;
    cfg.swap_policy = SwapPolicy::IndexSmaller;  // indexes A (size 1)
    const ApproxResult r = approximate_hausdorff(a, b, cfg, 0);
    CHECK(r.swapped);
    CHECK(r.forward_sup == 0.0);
    CHECK(r.backward_sup == 7.0);
    CHECK(r.value == 7.0);

    const HausdorffResult exact = hausdorff_exact(a, b);
    CHECK(exact.forward.value == r.forward_sup);
    CHECK(exact.backward.value == r.backward_sup);
}

TEST_CASE("swap with exact backend and fallback is value-symmetric in (A, B)") {
    // Both argument orders reach the exact answer, so the values agree even
    // though cached mode is not symmetric in general.
    for (Index trial = 0; trial < 20; ++trial) {
        const GenSpec spec = random_spec(trial, 80, 7000);
        const auto [a, b] = generate_pair(spec);
        ApproxConfig cfg;
        cfg.mode = ApproxMode::Cached;
        cfg.backend = AnnBackend::ExactScan;
        cfg.uncovered_policy = UncoveredPolicy::BruteForceFallback;
        cfg.swap_policy = SwapPolicy::IndexSmaller;
        const ApproxResult ab = approximate_hausdorff(a, b, cfg, spec.seed);
        const ApproxResult ba = approximate_hausdorff(b, a, cfg, spec.seed);
        CHECK(ab.value == ba.value);
    }
}

TEST_CASE("complexity probe emits one row per size pair with exact query counts") {
    ApproxConfig cfg;
    cfg.mode = ApproxMode::Cached;
    cfg.backend = AnnBackend::KdTreeEps;
    cfg.swap_policy = SwapPolicy::IndexSecondArg;

    const auto single = complexity_probe({1}, {1}, 2, cfg, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].query_count == 1);

    const auto rows = complexity_probe({1000}, {256, 512}, 4, cfg, 2);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.m == 1000);
        CHECK(row.query_count == 1000);  // one query per source point
        CHECK(row.visit_count > 0);
    }
    CHECK_THROWS_AS(complexity_probe({}, {1}, 2, cfg, 0), UsageError);
}
