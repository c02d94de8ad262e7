#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

namespace hdist {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Thrown when a caller violates a precondition (dimension mismatch,
/// non-finite input, invalid parameter). The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline void require(bool cond, const char* what) {
    if (!cond) throw UsageError(what);
}
}  // namespace detail

/// Euclidean distance between two points given as Eigen column expressions.
template <typename DerivedU, typename DerivedV>
double euclidean_distance(const Eigen::MatrixBase<DerivedU>& u,
                          const Eigen::MatrixBase<DerivedV>& v) {
    detail::require(u.size() == v.size(),
                    "euclidean_distance: dimension mismatch");
    return (u - v).norm();
}

/// An ordered, non-empty collection of d-dimensional points, stored as the
/// columns of a d x n matrix. Duplicates are allowed; the set is immutable
/// after construction.
class PointSet {
public:
    explicit PointSet(Matrix points);
    explicit PointSet(const std::vector<Vector>& points);

    Index dim() const { return points_.rows(); }
    Index size() const { return points_.cols(); }

    /// Column view of point i.
    auto point(Index i) const { return points_.col(i); }
    const Matrix& data() const { return points_; }

    /// Functional updates used by the stability checks.
    PointSet with_appended(const Vector& p) const;
    PointSet with_removed(Index i) const;
    PointSet with_replaced(Index i, const Vector& p) const;

private:
    Matrix points_;  // d x n, one point per column
};

// ---------------------------------------------------------------------------
// Geometric transformations

struct Translation {
    Vector offset;
};

/// Orthogonal d x d matrix; orthogonality is validated at construction.
struct Rotation {
    explicit Rotation(Matrix m);
    const Matrix& matrix() const { return mat_; }

private:
    Matrix mat_;
};

struct UniformScale {
    explicit UniformScale(double f);
    double factor;
};

/// Per-axis positive scale factors (the diagonal of a positive matrix).
struct DiagonalScale {
    explicit DiagonalScale(Vector f);
    Vector factors;
};

using Transform = std::variant<Translation, Rotation, UniformScale, DiagonalScale>;

Index transform_dim(const Transform& t);  // 0 when dimension-agnostic

PointSet apply_transform(const PointSet& s, const Transform& t);

/// max_i f_i / min_i f_i of a diagonal scale.
double condition_number(const DiagonalScale& scale);

/// Seeded random orthogonal matrix with determinant +1 (QR of a Gaussian
/// matrix, sign-fixed so the factorization is unique).
Rotation random_rotation(Index d, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Cross-set geometry statistics

/// Maximum / minimum cross-pair distance and sqrt(d_max^2 - delta^2).
struct GeometryStats {
    double d_max = 0.0;
    double delta = 0.0;
    double spread = 0.0;
};

/// Exhaustive O(mn) scan over all cross pairs of A and B.
GeometryStats geometry_stats(const PointSet& a, const PointSet& b);

}  // namespace hdist
