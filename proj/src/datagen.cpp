#include "hdist/datagen.hpp"

#include <algorithm>
#include <cmath>

namespace hdist {

namespace {

using detail::SampleStream;

Matrix uniform_cube(Index d, Index count, SampleStream& s) {
    Matrix m(d, count);
    for (Index j = 0; j < count; ++j)
        for (Index i = 0; i < d; ++i) m(i, j) = s.uniform01();
    return m;
}

Matrix gaussian_clusters(Index d, Index count, const Matrix& centers, double spread,
                         SampleStream& s) {
    Matrix m(d, count);
    for (Index j = 0; j < count; ++j) {
        const Index c = j % centers.cols();
        for (Index i = 0; i < d; ++i) m(i, j) = centers(i, c) + spread * s.gaussian();
    }
    return m;
}

Matrix sphere_shell(Index d, Index count, SampleStream& s) {
    Matrix m(d, count);
    for (Index j = 0; j < count; ++j) {
        Vector v(d);
        for (Index i = 0; i < d; ++i) v(i) = s.gaussian();
        double norm = v.norm();
        if (norm < 1e-300) {
            v.setZero();
            v(0) = 1.0;
            norm = 1.0;
        }
        m.col(j) = v / norm;
    }
    return m;
}

}  // namespace

std::pair<PointSet, PointSet> generate_pair(const GenSpec& spec) {
    detail::require(spec.m >= 1 && spec.n >= 1, "generate_pair: sizes must be >= 1");
    detail::require(spec.d >= 1, "generate_pair: dimension must be >= 1");
    SampleStream s(spec.seed);
    switch (spec.family) {
        case GenFamily::UniformCube:
            return {PointSet(uniform_cube(spec.d, spec.m, s)),
                    PointSet(uniform_cube(spec.d, spec.n, s))};
        case GenFamily::GaussianClusters: {
            detail::require(spec.clusters >= 1 &&
                                spec.clusters <= std::min(spec.m, spec.n),
                            "generate_pair: cluster count must be in [1, min(m, n)]");
            detail::require(spec.cluster_spread >= 0.0,
                            "generate_pair: cluster spread must be nonnegative");
            const Matrix centers = uniform_cube(spec.d, spec.clusters, s);
            Matrix a = gaussian_clusters(spec.d, spec.m, centers, spec.cluster_spread, s);
            Matrix b = gaussian_clusters(spec.d, spec.n, centers, spec.cluster_spread, s);
            return {PointSet(std::move(a)), PointSet(std::move(b))};
        }
        case GenFamily::SphereShell:
            return {PointSet(sphere_shell(spec.d, spec.m, s)),
                    PointSet(sphere_shell(spec.d, spec.n, s))};
    }
    throw UsageError("generate_pair: unknown family");
}

std::pair<PointSet, PointSet> well_separated_pair(Index d, double gap, Index m, Index n,
                                                  std::uint64_t seed) {
    detail::require(gap > 0.0 && std::isfinite(gap), "well_separated_pair: gap must be positive");
    detail::require(m >= 1 && n >= 1 && d >= 1, "well_separated_pair: invalid sizes");

    // Box offsets of half-width r keep cross distances inside
    // [gap - 2 r sqrt(d), gap + 2 r sqrt(d)]; this radius makes
    // delta / d_max >= 0.9 on the first attempt in exact arithmetic.
    double radius = gap / (40.0 * std::sqrt(static_cast<double>(d)));
    for (int attempt = 0; attempt < 64; ++attempt) {
        SampleStream s(seed + static_cast<std::uint64_t>(attempt));
        Matrix a(d, m);
        Matrix b(d, n);
        for (Index j = 0; j < m; ++j)
            for (Index i = 0; i < d; ++i) a(i, j) = s.uniform(-radius, radius);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < d; ++i) b(i, j) = s.uniform(-radius, radius);
        b.row(0).array() += gap;
        PointSet set_a{std::move(a)};
        PointSet set_b{std::move(b)};
        const GeometryStats stats = geometry_stats(set_a, set_b);
        if (stats.d_max == 0.0 || stats.delta / stats.d_max >= 0.9)
            return {std::move(set_a), std::move(set_b)};
        radius *= 0.5;
    }
    throw std::runtime_error("well_separated_pair: failed to reach delta/d_max >= 0.9");
}

}  // namespace hdist
