#include "hdist/geometry.hpp"

#include "hdist/detail/sampling.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>

namespace hdist {

namespace {

constexpr double kOrthogonalityTol = 1e-9;

}  // namespace

PointSet::PointSet(Matrix points) : points_(std::move(points)) {
    detail::require(points_.rows() >= 1, "PointSet: dimension must be >= 1");
    detail::require(points_.cols() >= 1, "PointSet: must contain at least one point");
    detail::require(points_.allFinite(), "PointSet: coordinates must be finite");
}

PointSet::PointSet(const std::vector<Vector>& points) {
    detail::require(!points.empty(), "PointSet: must contain at least one point");
    const Index d = points.front().size();
    detail::require(d >= 1, "PointSet: dimension must be >= 1");
    Matrix m(d, static_cast<Index>(points.size()));
    for (Index i = 0; i < m.cols(); ++i) {
        detail::require(points[static_cast<std::size_t>(i)].size() == d,
                        "PointSet: all points must share one dimension");
        m.col(i) = points[static_cast<std::size_t>(i)];
    }
    *this = PointSet(std::move(m));
}

PointSet PointSet::with_appended(const Vector& p) const {
    detail::require(p.size() == dim(), "PointSet: appended point dimension mismatch");
    Matrix m(dim(), size() + 1);
    m.leftCols(size()) = points_;
    m.col(size()) = p;
    return PointSet(std::move(m));
}

PointSet PointSet::with_removed(Index i) const {
    detail::require(i >= 0 && i < size(), "PointSet: index out of range");
    detail::require(size() >= 2, "PointSet: cannot remove the only point");
    Matrix m(dim(), size() - 1);
    m.leftCols(i) = points_.leftCols(i);
    m.rightCols(size() - 1 - i) = points_.rightCols(size() - 1 - i);
    return PointSet(std::move(m));
}

PointSet PointSet::with_replaced(Index i, const Vector& p) const {
    detail::require(i >= 0 && i < size(), "PointSet: index out of range");
    detail::require(p.size() == dim(), "PointSet: replacement point dimension mismatch");
    Matrix m = points_;
    m.col(i) = p;
    return PointSet(std::move(m));
}

Rotation::Rotation(Matrix m) : mat_(std::move(m)) {
    detail::require(mat_.rows() == mat_.cols() && mat_.rows() >= 1,
                    "Rotation: matrix must be square");
    const Matrix gram = mat_.transpose() * mat_;
    const Matrix identity = Matrix::Identity(mat_.rows(), mat_.cols());
    detail::require((gram - identity).cwiseAbs().maxCoeff() <= kOrthogonalityTol,
                    "Rotation: matrix is not orthogonal (R^T R != I)");
}

UniformScale::UniformScale(double f) : factor(f) {
    detail::require(std::isfinite(f) && f > 0.0, "UniformScale: factor must be positive");
}

DiagonalScale::DiagonalScale(Vector f) : factors(std::move(f)) {
    detail::require(factors.size() >= 1, "DiagonalScale: needs at least one factor");
    detail::require(factors.allFinite() && (factors.array() > 0.0).all(),
                    "DiagonalScale: all factors must be positive");
}

Index transform_dim(const Transform& t) {
    return std::visit(
        [](const auto& v) -> Index {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Translation>) return v.offset.size();
            if constexpr (std::is_same_v<T, Rotation>) return v.matrix().rows();
            if constexpr (std::is_same_v<T, UniformScale>) return 0;
            if constexpr (std::is_same_v<T, DiagonalScale>) return v.factors.size();
        },
        t);
}

PointSet apply_transform(const PointSet& s, const Transform& t) {
    const Index td = transform_dim(t);
    detail::require(td == 0 || td == s.dim(), "apply_transform: dimension mismatch");
    return std::visit(
        [&](const auto& v) -> PointSet {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Translation>) {
                return PointSet(s.data().colwise() + v.offset);
            } else if constexpr (std::is_same_v<T, Rotation>) {
                return PointSet(v.matrix() * s.data());
            } else if constexpr (std::is_same_v<T, UniformScale>) {
                return PointSet(s.data() * v.factor);
            } else {
                return PointSet(v.factors.asDiagonal() * s.data());
            }
        },
        t);
}

double condition_number(const DiagonalScale& scale) {
    return scale.factors.maxCoeff() / scale.factors.minCoeff();
}

Rotation random_rotation(Index d, std::uint64_t seed) {
    detail::require(d >= 1, "random_rotation: dimension must be >= 1");
    detail::SampleStream gauss(seed);
    Matrix g(d, d);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) g(i, j) = gauss.gaussian();

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < d; ++i)
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    if (q.determinant() < 0.0) q.col(d - 1) = -q.col(d - 1);
    return Rotation(std::move(q));
}

GeometryStats geometry_stats(const PointSet& a, const PointSet& b) {
    detail::require(a.dim() == b.dim(), "geometry_stats: dimension mismatch");
    GeometryStats stats;
    stats.d_max = 0.0;
    stats.delta = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < a.size(); ++i) {
        for (Index j = 0; j < b.size(); ++j) {
            const double dist = euclidean_distance(a.point(i), b.point(j));
            stats.d_max = std::max(stats.d_max, dist);
            stats.delta = std::min(stats.delta, dist);
        }
    }
    stats.spread = std::sqrt(std::max(0.0, stats.d_max * stats.d_max - stats.delta * stats.delta));
    return stats;
}

}  // namespace hdist
