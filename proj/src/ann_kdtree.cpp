#include "hdist/ann.hpp"
#include "hdist/detail/binary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

namespace hdist {
namespace {

struct KdNode {
    Index begin = 0;   // range into the permutation array
    Index end = 0;
    Index axis = -1;   // -1 marks a leaf
    Index left = -1;
    Index right = -1;
};

/// Median-split kd-tree over exact per-node bounding boxes, searched
/// best-first with a (1 + epsilon) pruning rule: a box is skipped only
/// when its minimum possible distance already exceeds best / (1 + eps),
/// so the returned neighbor is always within (1 + eps) of the true one.
class KdTreeIndex final : public AnnIndex {
public:
    KdTreeIndex(PointSet base, AnnParams params, std::uint64_t seed)
        : AnnIndex(AnnBackend::KdTreeEps, AnnContract{params.epsilon, true}, std::move(base),
                   params, seed) {
        perm_.resize(static_cast<std::size_t>(base_.size()));
        std::iota(perm_.begin(), perm_.end(), Index{0});
        nodes_.reserve(static_cast<std::size_t>(2 * base_.size() / params.leaf_size + 2));
        build_node(0, base_.size());
        compute_boxes();
    }

    /// Structure restored verbatim from a saved payload.
    KdTreeIndex(PointSet base, AnnParams params, std::uint64_t seed, std::vector<Index> perm,
                std::vector<KdNode> nodes)
        : AnnIndex(AnnBackend::KdTreeEps, AnnContract{params.epsilon, true}, std::move(base),
                   params, seed),
          perm_(std::move(perm)),
          nodes_(std::move(nodes)) {
        compute_boxes();
    }

private:
    Index build_node(Index begin, Index end) {
        const Index id = static_cast<Index>(nodes_.size());
        nodes_.push_back(KdNode{begin, end, -1, -1, -1});
        if (end - begin <= params().leaf_size) return id;

        // Split the widest axis (lowest axis index on ties) at the median;
        // sorting on (coordinate, point index) keeps the layout identical
        // for any standard library.
        Vector lo = base_.point(perm_[static_cast<std::size_t>(begin)]);
        Vector hi = lo;
        for (Index k = begin + 1; k < end; ++k) {
            const auto p = base_.point(perm_[static_cast<std::size_t>(k)]);
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        Index axis = 0;
        double extent = hi(0) - lo(0);
        for (Index i = 1; i < base_.dim(); ++i) {
            if (hi(i) - lo(i) > extent) {
                extent = hi(i) - lo(i);
                axis = i;
            }
        }
        std::sort(perm_.begin() + begin, perm_.begin() + end, [&](Index a, Index b) {
            const double ca = base_.data()(axis, a);
            const double cb = base_.data()(axis, b);
            return ca < cb || (ca == cb && a < b);
        });
        const Index mid = begin + (end - begin) / 2;
        nodes_[static_cast<std::size_t>(id)].axis = axis;
        const Index left = build_node(begin, mid);
        nodes_[static_cast<std::size_t>(id)].left = left;
        const Index right = build_node(mid, end);
        nodes_[static_cast<std::size_t>(id)].right = right;
        return id;
    }

    void compute_boxes() {
        const Index d = base_.dim();
        box_lo_.resize(d, static_cast<Index>(nodes_.size()));
        box_hi_.resize(d, static_cast<Index>(nodes_.size()));
        for (std::size_t id = 0; id < nodes_.size(); ++id) {
            const KdNode& node = nodes_[id];
            Vector lo = base_.point(perm_[static_cast<std::size_t>(node.begin)]);
            Vector hi = lo;
            for (Index k = node.begin + 1; k < node.end; ++k) {
                const auto p = base_.point(perm_[static_cast<std::size_t>(k)]);
                lo = lo.cwiseMin(p);
                hi = hi.cwiseMax(p);
            }
            box_lo_.col(static_cast<Index>(id)) = lo;
            box_hi_.col(static_cast<Index>(id)) = hi;
        }
        // Leaf scans run over a contiguous copy in permutation order.
        ordered_.resize(d, base_.size());
        for (Index k = 0; k < base_.size(); ++k)
            ordered_.col(k) = base_.point(perm_[static_cast<std::size_t>(k)]);
    }

    double box_distance_sq(const Vector& q, Index id) const {
        return (box_lo_.col(id) - q).cwiseMax(q - box_hi_.col(id)).cwiseMax(0.0).squaredNorm();
    }

    NnResult search(const Vector& q, std::uint64_t& visits) const override {
        const double accept_factor = (1.0 + contract().epsilon) * (1.0 + contract().epsilon);
        using Entry = std::pair<double, Index>;  // (box distance^2, node id)
        std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> frontier;
        frontier.emplace(box_distance_sq(q, 0), Index{0});

        double best = std::numeric_limits<double>::infinity();
        double best_sq = best;
        Index best_idx = -1;
        while (!frontier.empty()) {
            const auto [bound_sq, id] = frontier.top();
            frontier.pop();
            if (bound_sq * accept_factor > best_sq) break;  // heap is ordered: done

            // Walk the nearer children down to a leaf, deferring the farther
            // siblings; a subtree is skipped only when its box cannot hold a
            // point within best / (1 + eps).
            Index cur = id;
            bool reached_leaf = true;
            while (nodes_[static_cast<std::size_t>(cur)].axis >= 0) {
                const KdNode& node = nodes_[static_cast<std::size_t>(cur)];
                const double left_sq = box_distance_sq(q, node.left);
                const double right_sq = box_distance_sq(q, node.right);
                const Index near = left_sq <= right_sq ? node.left : node.right;
                const Index far = left_sq <= right_sq ? node.right : node.left;
                const double far_sq = std::max(left_sq, right_sq);
                const double near_sq = std::min(left_sq, right_sq);
                if (far_sq * accept_factor <= best_sq) frontier.emplace(far_sq, far);
                if (near_sq * accept_factor > best_sq) {
                    reached_leaf = false;
                    break;
                }
                cur = near;
            }
            if (!reached_leaf) continue;

            const KdNode& leaf = nodes_[static_cast<std::size_t>(cur)];
            for (Index k = leaf.begin; k < leaf.end; ++k) {
                const double dist = euclidean_distance(q, ordered_.col(k));
                ++visits;
                const Index idx = perm_[static_cast<std::size_t>(k)];
                if (dist < best || (dist == best && idx < best_idx)) {
                    best = dist;
                    best_sq = dist * dist;
                    best_idx = idx;
                }
            }
        }
        return NnResult{best_idx, best};
    }

    void save_payload(std::ostream& out) const override {
        detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(perm_.size()));
        for (Index idx : perm_) detail::write_le<std::int64_t>(out, idx);
        detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(nodes_.size()));
        for (const KdNode& node : nodes_) {
            detail::write_le<std::int64_t>(out, node.begin);
            detail::write_le<std::int64_t>(out, node.end);
            detail::write_le<std::int64_t>(out, node.axis);
            detail::write_le<std::int64_t>(out, node.left);
            detail::write_le<std::int64_t>(out, node.right);
        }
    }

    std::vector<Index> perm_;
    std::vector<KdNode> nodes_;
    Matrix box_lo_;   // d x node_count, exact bounds per node
    Matrix box_hi_;
    Matrix ordered_;  // base points in permutation order, for leaf scans
};

}  // namespace

namespace detail {

std::unique_ptr<AnnIndex> build_kdtree_index(PointSet base, AnnParams params,
                                             std::uint64_t seed) {
    return std::make_unique<KdTreeIndex>(std::move(base), params, seed);
}

std::unique_ptr<AnnIndex> load_kdtree_payload(std::istream& in, PointSet base, AnnParams params,
                                              std::uint64_t seed) {
    const auto perm_size = read_le<std::uint64_t>(in);
    if (perm_size != static_cast<std::uint64_t>(base.size()))
        throw std::runtime_error("load_index: kd-tree permutation size mismatch");
    std::vector<Index> perm(perm_size);
    for (auto& idx : perm) {
        idx = static_cast<Index>(read_le<std::int64_t>(in));
        if (idx < 0 || idx >= base.size())
            throw std::runtime_error("load_index: corrupt kd-tree permutation");
    }
    const auto node_count = read_le<std::uint64_t>(in);
    std::vector<KdNode> nodes(node_count);
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        KdNode& node = nodes[id];
        node.begin = static_cast<Index>(read_le<std::int64_t>(in));
        node.end = static_cast<Index>(read_le<std::int64_t>(in));
        node.axis = static_cast<Index>(read_le<std::int64_t>(in));
        node.left = static_cast<Index>(read_le<std::int64_t>(in));
        node.right = static_cast<Index>(read_le<std::int64_t>(in));
        // Children always come after their parent, which also rules out
        // cycles in hand-corrupted files.
        if (node.begin < 0 || node.end > base.size() || node.begin >= node.end ||
            node.axis >= base.dim() ||
            (node.axis >= 0 &&
             (node.left <= static_cast<Index>(id) || node.right <= static_cast<Index>(id) ||
              node.left >= static_cast<Index>(node_count) ||
              node.right >= static_cast<Index>(node_count))))
            throw std::runtime_error("load_index: corrupt kd-tree node");
    }
    if (nodes.empty()) throw std::runtime_error("load_index: kd-tree payload empty");
    return std::make_unique<KdTreeIndex>(std::move(base), params, seed, std::move(perm),
                                         std::move(nodes));
}

}  // namespace detail

}  // namespace hdist
