#include "hdist/approx.hpp"

#include "hdist/datagen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace hdist {

namespace {

struct QueryPass {
    double sup = 0.0;                     // max over per-query estimates
    std::vector<double> estimates;        // one per query point
    BucketMap buckets;                    // per indexed point
    Index uncovered = 0;
};

/// One ANN pass from every point of `queries` into `index`, recording the
/// per-query distances and the neighbor assignment buckets.
QueryPass run_queries(const AnnIndex& index, const PointSet& queries) {
    QueryPass pass;
    pass.estimates.resize(static_cast<std::size_t>(queries.size()));
    pass.buckets.assign(static_cast<std::size_t>(index.base().size()), {});
    for (Index i = 0; i < queries.size(); ++i) {
        const NnResult r = index.query(queries.point(i));
        pass.estimates[static_cast<std::size_t>(i)] = r.distance;
        pass.sup = std::max(pass.sup, r.distance);
        pass.buckets[static_cast<std::size_t>(r.neighbor_index)].push_back(i);
    }
    for (const auto& bucket : pass.buckets)
        if (bucket.empty()) ++pass.uncovered;
    return pass;
}

/// Reverse pass: estimate the indexed-set direction from the cached
/// assignments. A covered point reuses the stored query distances (its
/// bucket members were measured against exactly this point); uncovered
/// points follow the configured policy.
double cached_reverse_sup(const PointSet& indexed, const PointSet& queries,
                          const QueryPass& pass, UncoveredPolicy policy,
                          std::uint64_t& fallback_cost) {
    double sup = 0.0;
    for (Index b = 0; b < indexed.size(); ++b) {
        const auto& bucket = pass.buckets[static_cast<std::size_t>(b)];
        if (!bucket.empty()) {
            double est = std::numeric_limits<double>::infinity();
            for (Index q : bucket)
                est = std::min(est, pass.estimates[static_cast<std::size_t>(q)]);
            sup = std::max(sup, est);
        } else if (policy == UncoveredPolicy::BruteForceFallback) {
            double exact_sq = std::numeric_limits<double>::infinity();
            for (Index q = 0; q < queries.size(); ++q)
                exact_sq =
                    std::min(exact_sq, (indexed.point(b) - queries.point(q)).squaredNorm());
            fallback_cost += static_cast<std::uint64_t>(queries.size());
            sup = std::max(sup, std::sqrt(exact_sq));
        }
        // PaperInfinity: the literal estimate is +infinity; the point is
        // excluded from the supremum and only counted.
    }
    return sup;
}

}  // namespace

ApproxResult approximate_hausdorff(const PointSet& a, const PointSet& b,
                                   const ApproxConfig& cfg, std::uint64_t seed) {
    detail::require(a.dim() == b.dim(), "approximate_hausdorff: dimension mismatch");

    ApproxResult result;
    result.mode = cfg.mode;

    if (cfg.mode == ApproxMode::Dual) {
        const auto index_b = build_index(b, cfg.backend, cfg.params, seed);
        const auto index_a = build_index(a, cfg.backend, cfg.params, seed);
        QueryPass forward = run_queries(*index_b, a);
        QueryPass backward = run_queries(*index_a, b);
        result.forward_sup = forward.sup;
        result.backward_sup = backward.sup;
        result.bucket_map = std::move(forward.buckets);
        result.uncovered_count = forward.uncovered;
        result.query_count = index_b->query_count() + index_a->query_count();
        result.visit_count = index_b->visit_count() + index_a->visit_count();
    } else {
        // Cached mode: index one set, query from the other, and recover the
        // reverse direction from the bucket assignments.
        const bool swap = cfg.swap_policy == SwapPolicy::IndexSmaller && a.size() < b.size();
        const PointSet& indexed = swap ? a : b;
        const PointSet& queries = swap ? b : a;
        const auto index = build_index(indexed, cfg.backend, cfg.params, seed);
        QueryPass pass = run_queries(*index, queries);
        const double reverse_sup =
            cached_reverse_sup(indexed, queries, pass, cfg.uncovered_policy,
                               result.fallback_cost);
        result.forward_sup = swap ? reverse_sup : pass.sup;
        result.backward_sup = swap ? pass.sup : reverse_sup;
        result.bucket_map = std::move(pass.buckets);
        result.uncovered_count = pass.uncovered;
        result.query_count = index->query_count();
        result.visit_count = index->visit_count();
        result.swapped = swap;
    }

    result.value = std::max(result.forward_sup, result.backward_sup);
    return result;
}

std::vector<ComplexityRow> complexity_probe(const std::vector<Index>& m_list,
                                            const std::vector<Index>& n_list, Index d,
                                            const ApproxConfig& cfg, std::uint64_t seed) {
    detail::require(!m_list.empty() && !n_list.empty(),
                    "complexity_probe: size lists must be non-empty");
    std::vector<ComplexityRow> rows;
    std::uint64_t instance = 0;
    for (Index m : m_list) {
        for (Index n : n_list) {
            GenSpec spec;
            spec.family = GenFamily::UniformCube;
            spec.m = m;
            spec.n = n;
            spec.d = d;
            spec.seed = seed + 0x9e3779b97f4a7c15ULL * ++instance;
            const auto [set_a, set_b] = generate_pair(spec);
            const auto start = std::chrono::steady_clock::now();
            const ApproxResult r = approximate_hausdorff(set_a, set_b, cfg, spec.seed);
            const auto stop = std::chrono::steady_clock::now();
            ComplexityRow row;
            row.m = m;
            row.n = n;
            row.query_count = r.query_count;
            row.visit_count = r.visit_count;
            row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace hdist
