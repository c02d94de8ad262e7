#pragma once

#include "hdist/ann.hpp"
#include "hdist/exact.hpp"

#include <cstdint>
#include <vector>

namespace hdist {

enum class ApproxMode { Cached, Dual };

/// What to do with an indexed point no query was assigned to: fall back to
/// an exact linear scan, or keep the literal infinity and leave the point
/// out of the backward supremum (its count is always reported).
enum class UncoveredPolicy { BruteForceFallback, PaperInfinity };

/// Which of the two sets gets indexed in cached mode.
enum class SwapPolicy { IndexSmaller, IndexSecondArg };

struct ApproxConfig {
    ApproxMode mode = ApproxMode::Cached;
    AnnBackend backend = AnnBackend::ExactScan;
    AnnParams params{};
    UncoveredPolicy uncovered_policy = UncoveredPolicy::BruteForceFallback;
    SwapPolicy swap_policy = SwapPolicy::IndexSmaller;
};

/// Per indexed point, the query-set indices whose nearest-neighbor result
/// was that point. The lists always partition the query set.
using BucketMap = std::vector<std::vector<Index>>;

struct ApproxResult {
    double value = 0.0;
    double forward_sup = 0.0;   // A -> B direction, regardless of which set was indexed
    double backward_sup = 0.0;  // B -> A direction
    BucketMap bucket_map;
    Index uncovered_count = 0;        // indexed points with an empty bucket
    std::uint64_t fallback_cost = 0;  // brute-force distance evaluations
    std::uint64_t query_count = 0;
    std::uint64_t visit_count = 0;
    bool swapped = false;  // true when the index was built on A instead of B
    ApproxMode mode = ApproxMode::Cached;
};

/// ANN-accelerated Hausdorff estimate. Cached mode indexes one set, runs a
/// single query pass from the other, and reuses the per-query assignments
/// to estimate the reverse direction. Dual mode indexes both sets and runs
/// genuine queries in both directions, inheriting the backend contract in
/// each one.
ApproxResult approximate_hausdorff(const PointSet& a, const PointSet& b,
                                   const ApproxConfig& cfg, std::uint64_t seed);

struct ComplexityRow {
    Index m = 0;
    Index n = 0;
    std::uint64_t query_count = 0;
    std::uint64_t visit_count = 0;
    double wall_ms = 0.0;
};

/// Runs approximate_hausdorff over synthetic uniform data for every
/// (m, n) combination and reports the work counters per run.
std::vector<ComplexityRow> complexity_probe(const std::vector<Index>& m_list,
                                            const std::vector<Index>& n_list, Index d,
                                            const ApproxConfig& cfg, std::uint64_t seed);

}  // namespace hdist
