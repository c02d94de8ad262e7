#pragma once

#include "hdist/geometry.hpp"

namespace hdist {

/// One direction of the Hausdorff distance: the largest nearest-neighbor
/// distance from the source set into the target set, with the pair of
/// indices realizing it. Ties break toward the smallest source index,
/// then the smallest target index.
struct DirectedResult {
    double value = 0.0;
    Index witness_src = 0;  // index into the source set
    Index witness_dst = 0;  // index into the target set
};

enum class HausdorffMode { Exact, ApproxCached, ApproxDual };

struct HausdorffResult {
    double value = 0.0;
    DirectedResult forward;   // A -> B
    DirectedResult backward;  // B -> A
    HausdorffMode mode = HausdorffMode::Exact;
};

/// Reference O(mn) directed Hausdorff distance. Deliberately has no early
/// exit so it stays an unambiguous baseline for every approximation test.
DirectedResult directed_hausdorff_exact(const PointSet& src, const PointSet& dst);

/// Symmetric Hausdorff distance: max of the two directed values.
HausdorffResult hausdorff_exact(const PointSet& a, const PointSet& b);

}  // namespace hdist
