#include "hdist/ann.hpp"

#include "hdist/detail/binary.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace hdist {

namespace {

constexpr char kMagic[4] = {'A', 'H', 'D', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

void validate_params(AnnBackend backend, const AnnParams& p) {
    detail::require(std::isfinite(p.epsilon) && p.epsilon >= 0.0,
                    "AnnParams: epsilon must be finite and nonnegative");
    if (backend == AnnBackend::KdTreeEps)
        detail::require(p.leaf_size >= 1, "AnnParams: leaf_size must be >= 1");
    if (backend == AnnBackend::NavigableGraph) {
        detail::require(p.max_degree >= 1, "AnnParams: max_degree must be >= 1");
        detail::require(p.build_beam >= 1, "AnnParams: build_beam must be >= 1");
        detail::require(p.query_beam >= 1, "AnnParams: query_beam must be >= 1");
    }
}

/// Full linear scan; the zero-epsilon reference backend.
class ExactScanIndex final : public AnnIndex {
public:
    ExactScanIndex(PointSet base, AnnParams params, std::uint64_t seed)
        : AnnIndex(AnnBackend::ExactScan, AnnContract{0.0, true}, std::move(base), params,
                   seed) {}

private:
    NnResult search(const Vector& q, std::uint64_t& visits) const override {
        NnResult best{0, std::numeric_limits<double>::infinity()};
        for (Index i = 0; i < base_.size(); ++i) {
            const double dist = euclidean_distance(q, base_.point(i));
            if (dist < best.distance) best = NnResult{i, dist};
        }
        visits += static_cast<std::uint64_t>(base_.size());
        return best;
    }

    void save_payload(std::ostream&) const override {}
};

}  // namespace

const char* backend_name(AnnBackend backend) {
    switch (backend) {
        case AnnBackend::ExactScan: return "exact-scan";
        case AnnBackend::KdTreeEps: return "kdtree-eps";
        case AnnBackend::NavigableGraph: return "navigable-graph";
    }
    return "unknown";
}

AnnIndex::AnnIndex(AnnBackend backend, AnnContract contract, PointSet base, AnnParams params,
                   std::uint64_t seed)
    : base_(std::move(base)),
      backend_(backend),
      contract_(contract),
      params_(params),
      seed_(seed) {}

NnResult AnnIndex::query(const Vector& q) const {
    detail::require(q.size() == base_.dim(), "AnnIndex::query: dimension mismatch");
    std::uint64_t visits = 0;
    const NnResult result = search(q, visits);
    query_count_.fetch_add(1, std::memory_order_relaxed);
    visit_count_.fetch_add(visits, std::memory_order_relaxed);
    return result;
}

void AnnIndex::reset_counters() const {
    query_count_.store(0);
    visit_count_.store(0);
}

std::unique_ptr<AnnIndex> build_index(const PointSet& base, AnnBackend backend,
                                      const AnnParams& params, std::uint64_t seed) {
    validate_params(backend, params);
    switch (backend) {
        case AnnBackend::ExactScan:
            return std::make_unique<ExactScanIndex>(base, params, seed);
        case AnnBackend::KdTreeEps:
            return detail::build_kdtree_index(base, params, seed);
        case AnnBackend::NavigableGraph:
            return detail::build_graph_index(base, params, seed);
    }
    throw UsageError("build_index: unknown backend");
}

double empirical_epsilon(const AnnIndex& index, const std::vector<Vector>& queries) {
    detail::require(!queries.empty(), "empirical_epsilon: needs at least one query");
    const PointSet& base = index.base();
    double worst = 0.0;
    for (const Vector& q : queries) {
        const NnResult got = index.query(q);
        double truth = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < base.size(); ++i)
            truth = std::min(truth, euclidean_distance(q, base.point(i)));
        if (truth == 0.0) {
            if (got.distance > 0.0) return std::numeric_limits<double>::infinity();
            continue;  // exact hit, zero excess
        }
        worst = std::max(worst, got.distance / truth - 1.0);
    }
    return worst;
}

void save_index(const AnnIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_index: cannot open " + path);
    out.write(kMagic, sizeof(kMagic));
    detail::write_le<std::uint32_t>(out, kFormatVersion);
    detail::write_le<std::uint8_t>(out, static_cast<std::uint8_t>(index.backend()));
    detail::write_le<std::uint64_t>(out, index.seed());
    detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(index.base().size()));
    detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(index.base().dim()));
    const AnnParams& p = index.params();
    detail::write_le<double>(out, p.epsilon);
    detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(p.leaf_size));
    detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(p.max_degree));
    detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(p.build_beam));
    detail::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(p.query_beam));
    const Matrix& pts = index.base().data();
    for (Index j = 0; j < pts.cols(); ++j)
        for (Index i = 0; i < pts.rows(); ++i) detail::write_le<double>(out, pts(i, j));
    index.save_payload(out);
    if (!out) throw std::runtime_error("save_index: write failed for " + path);
}

std::unique_ptr<AnnIndex> load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_index: cannot open " + path);
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("load_index: bad magic bytes");
    const auto version = detail::read_le<std::uint32_t>(in);
    if (version != kFormatVersion)
        throw std::runtime_error("load_index: unsupported format version");
    const auto backend = static_cast<AnnBackend>(detail::read_le<std::uint8_t>(in));
    const auto seed = detail::read_le<std::uint64_t>(in);
    const auto n = static_cast<Index>(detail::read_le<std::uint64_t>(in));
    const auto d = static_cast<Index>(detail::read_le<std::uint64_t>(in));
    if (n < 1 || d < 1) throw std::runtime_error("load_index: corrupt sizes");
    AnnParams params;
    params.epsilon = detail::read_le<double>(in);
    params.leaf_size = static_cast<Index>(detail::read_le<std::uint64_t>(in));
    params.max_degree = static_cast<Index>(detail::read_le<std::uint64_t>(in));
    params.build_beam = static_cast<Index>(detail::read_le<std::uint64_t>(in));
    params.query_beam = static_cast<Index>(detail::read_le<std::uint64_t>(in));
    Matrix pts(d, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < d; ++i) pts(i, j) = detail::read_le<double>(in);
    PointSet base(std::move(pts));
    switch (backend) {
        case AnnBackend::ExactScan:
            return std::make_unique<ExactScanIndex>(std::move(base), params, seed);
        case AnnBackend::KdTreeEps:
            return detail::load_kdtree_payload(in, std::move(base), params, seed);
        case AnnBackend::NavigableGraph:
            return detail::load_graph_payload(in, std::move(base), params, seed);
    }
    throw std::runtime_error("load_index: unknown backend id");
}

}  // namespace hdist
