#include "hdist/exact.hpp"

#include <algorithm>
#include <limits>

namespace hdist {

DirectedResult directed_hausdorff_exact(const PointSet& src, const PointSet& dst) {
    detail::require(src.dim() == dst.dim(), "directed_hausdorff_exact: dimension mismatch");
    DirectedResult result;
    result.value = -1.0;
    for (Index i = 0; i < src.size(); ++i) {
        double nn_dist = std::numeric_limits<double>::infinity();
        Index nn_idx = 0;
        for (Index j = 0; j < dst.size(); ++j) {
            const double d = euclidean_distance(src.point(i), dst.point(j));
            if (d < nn_dist) {
                nn_dist = d;
                nn_idx = j;
            }
        }
        if (nn_dist > result.value) {
            result.value = nn_dist;
            result.witness_src = i;
            result.witness_dst = nn_idx;
        }
    }
    return result;
}

HausdorffResult hausdorff_exact(const PointSet& a, const PointSet& b) {
    detail::require(a.dim() == b.dim(), "hausdorff_exact: dimension mismatch");
    HausdorffResult result;
    result.forward = directed_hausdorff_exact(a, b);
    result.backward = directed_hausdorff_exact(b, a);
    result.value = std::max(result.forward.value, result.backward.value);
    result.mode = HausdorffMode::Exact;
    return result;
}

}  // namespace hdist
