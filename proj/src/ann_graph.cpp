#include "hdist/ann.hpp"
#include "hdist/detail/binary.hpp"

#include <algorithm>
#include <queue>
#include <vector>

namespace hdist {
namespace {

using DistIdx = std::pair<double, Index>;  // ordering on (distance, index)

/// Single-layer navigable proximity graph built by incremental insertion:
/// each new point is connected to its beam-search neighbors and degrees
/// are pruned back to max_degree. Queries run a bounded beam search, so
/// the result carries no (1 + epsilon) guarantee; the contract reports
/// the configured epsilon as an empirical target only.
class GraphIndex final : public AnnIndex {
public:
    GraphIndex(PointSet base, AnnParams params, std::uint64_t seed)
        : AnnIndex(AnnBackend::NavigableGraph, AnnContract{params.epsilon, false},
                   std::move(base), params, seed) {
        adjacency_.resize(static_cast<std::size_t>(base_.size()));
        for (Index i = 1; i < base_.size(); ++i) insert(i);
    }

    GraphIndex(PointSet base, AnnParams params, std::uint64_t seed,
               std::vector<std::vector<Index>> adjacency)
        : AnnIndex(AnnBackend::NavigableGraph, AnnContract{params.epsilon, false},
                   std::move(base), params, seed),
          adjacency_(std::move(adjacency)) {}

private:
    void insert(Index i) {
        std::uint64_t visits = 0;
        std::vector<DistIdx> nearest =
            beam_search(base_.point(i), params().build_beam, i, visits);
        const std::size_t degree =
            std::min(nearest.size(), static_cast<std::size_t>(params().max_degree));
        for (std::size_t k = 0; k < degree; ++k) {
            const Index j = nearest[k].second;
            adjacency_[static_cast<std::size_t>(i)].push_back(j);
            adjacency_[static_cast<std::size_t>(j)].push_back(i);
            prune(j);
        }
    }

    /// Keep only the max_degree closest neighbors of node j.
    void prune(Index j) {
        auto& edges = adjacency_[static_cast<std::size_t>(j)];
        if (static_cast<Index>(edges.size()) <= params().max_degree) return;
        std::vector<DistIdx> ranked;
        ranked.reserve(edges.size());
        for (Index nb : edges)
            ranked.emplace_back(euclidean_distance(base_.point(j), base_.point(nb)), nb);
        std::sort(ranked.begin(), ranked.end());
        edges.clear();
        for (Index k = 0; k < params().max_degree; ++k)
            edges.push_back(ranked[static_cast<std::size_t>(k)].second);
    }

    /// Beam search from point 0 over the first `limit` inserted points.
    /// Returns up to `beam` candidates sorted by (distance, index).
    template <typename QueryExpr>
    std::vector<DistIdx> beam_search(const QueryExpr& q, Index beam, Index limit,
                                     std::uint64_t& visits) const {
        std::vector<char> seen(static_cast<std::size_t>(limit), 0);
        std::priority_queue<DistIdx, std::vector<DistIdx>, std::greater<DistIdx>> frontier;
        std::priority_queue<DistIdx> found;  // max-heap, capped at beam

        const double entry_dist = euclidean_distance(q, base_.point(0));
        ++visits;
        seen[0] = 1;
        frontier.emplace(entry_dist, Index{0});
        found.emplace(entry_dist, Index{0});

        while (!frontier.empty()) {
            const DistIdx current = frontier.top();
            frontier.pop();
            if (static_cast<Index>(found.size()) >= beam && current > found.top()) break;
            for (Index nb : adjacency_[static_cast<std::size_t>(current.second)]) {
                if (nb >= limit || seen[static_cast<std::size_t>(nb)]) continue;
                seen[static_cast<std::size_t>(nb)] = 1;
                const double dist = euclidean_distance(q, base_.point(nb));
                ++visits;
                const DistIdx cand{dist, nb};
                if (static_cast<Index>(found.size()) < beam || cand < found.top()) {
                    frontier.push(cand);
                    found.push(cand);
                    if (static_cast<Index>(found.size()) > beam) found.pop();
                }
            }
        }
        std::vector<DistIdx> result;
        result.reserve(found.size());
        while (!found.empty()) {
            result.push_back(found.top());
            found.pop();
        }
        std::sort(result.begin(), result.end());
        return result;
    }

    NnResult search(const Vector& q, std::uint64_t& visits) const override {
        const std::vector<DistIdx> found =
            beam_search(q, params().query_beam, base_.size(), visits);
        return NnResult{found.front().second, found.front().first};
    }

    void save_payload(std::ostream& out) const override {
        for (const auto& edges : adjacency_) {
            detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(edges.size()));
            for (Index nb : edges) detail::write_le<std::int64_t>(out, nb);
        }
    }

    std::vector<std::vector<Index>> adjacency_;
};

}  // namespace

namespace detail {

std::unique_ptr<AnnIndex> build_graph_index(PointSet base, AnnParams params,
                                            std::uint64_t seed) {
    return std::make_unique<GraphIndex>(std::move(base), params, seed);
}

std::unique_ptr<AnnIndex> load_graph_payload(std::istream& in, PointSet base, AnnParams params,
                                             std::uint64_t seed) {
    std::vector<std::vector<Index>> adjacency(static_cast<std::size_t>(base.size()));
    for (auto& edges : adjacency) {
        const auto count = read_le<std::uint64_t>(in);
        if (count > static_cast<std::uint64_t>(base.size()))
            throw std::runtime_error("load_index: corrupt graph degree");
        edges.resize(count);
        for (auto& nb : edges) {
            nb = static_cast<Index>(read_le<std::int64_t>(in));
            if (nb < 0 || nb >= base.size())
                throw std::runtime_error("load_index: corrupt graph edge");
        }
    }
    return std::make_unique<GraphIndex>(std::move(base), params, seed, std::move(adjacency));
}

}  // namespace detail

}  // namespace hdist
