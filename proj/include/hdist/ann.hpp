#pragma once

#include "hdist/geometry.hpp"

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace hdist {

enum class AnnBackend { ExactScan, KdTreeEps, NavigableGraph };

const char* backend_name(AnnBackend backend);

/// Approximation promise of an index: every returned neighbor lies within
/// (1 + epsilon) of the true nearest-neighbor distance. `guaranteed` is
/// false for backends whose epsilon is an empirical target only.
struct AnnContract {
    double epsilon = 0.0;
    bool guaranteed = false;
};

/// A real member of the base set together with its exact distance to the
/// query (so the distance can never undershoot the true NN distance).
struct NnResult {
    Index neighbor_index = 0;
    double distance = 0.0;
};

struct AnnParams {
    double epsilon = 0.1;    // kd-tree pruning slack; graph empirical target
    Index leaf_size = 16;    // kd-tree
    Index max_degree = 16;   // graph
    Index build_beam = 100;  // graph
    Index query_beam = 32;   // graph
};

/// Nearest-neighbor index over one immutable base set. Queries are
/// read-only and safe to run concurrently; the query/visit counters are
/// atomic and eventually exact. Results never depend on query concurrency.
class AnnIndex {
public:
    virtual ~AnnIndex() = default;
    AnnIndex(const AnnIndex&) = delete;
    AnnIndex& operator=(const AnnIndex&) = delete;

    /// Nearest-neighbor lookup; ties break toward the smallest base index.
    NnResult query(const Vector& q) const;

    AnnBackend backend() const { return backend_; }
    const AnnContract& contract() const { return contract_; }
    const PointSet& base() const { return base_; }
    const AnnParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }

    std::uint64_t query_count() const { return query_count_.load(); }
    std::uint64_t visit_count() const { return visit_count_.load(); }
    void reset_counters() const;

protected:
    AnnIndex(AnnBackend backend, AnnContract contract, PointSet base, AnnParams params,
             std::uint64_t seed);

    /// Backend search; adds every examined candidate to `visits`.
    virtual NnResult search(const Vector& q, std::uint64_t& visits) const = 0;

    /// Backend structure written after the common file header.
    virtual void save_payload(std::ostream& out) const = 0;

    PointSet base_;

private:
    friend void save_index(const AnnIndex&, const std::string&);

    AnnBackend backend_;
    AnnContract contract_;
    AnnParams params_;
    std::uint64_t seed_;
    mutable std::atomic<std::uint64_t> query_count_{0};
    mutable std::atomic<std::uint64_t> visit_count_{0};
};

/// Deterministic for a fixed seed and parameter set.
std::unique_ptr<AnnIndex> build_index(const PointSet& base, AnnBackend backend,
                                      const AnnParams& params = {}, std::uint64_t seed = 0);

/// Largest observed (returned distance / true NN distance) - 1 across the
/// queries, with the true distances found by linear scan; coincident
/// query/base pairs contribute zero when the index also returns zero.
double empirical_epsilon(const AnnIndex& index, const std::vector<Vector>& queries);

/// Versioned binary persistence ("AHDX" header, then backend payload).
/// A reloaded index answers every query exactly as the original did.
void save_index(const AnnIndex& index, const std::string& path);
std::unique_ptr<AnnIndex> load_index(const std::string& path);

namespace detail {

std::unique_ptr<AnnIndex> build_kdtree_index(PointSet base, AnnParams params,
                                             std::uint64_t seed);
std::unique_ptr<AnnIndex> build_graph_index(PointSet base, AnnParams params,
                                            std::uint64_t seed);
std::unique_ptr<AnnIndex> load_kdtree_payload(std::istream& in, PointSet base,
                                              AnnParams params, std::uint64_t seed);
std::unique_ptr<AnnIndex> load_graph_payload(std::istream& in, PointSet base,
                                             AnnParams params, std::uint64_t seed);

}  // namespace detail

}  // namespace hdist
