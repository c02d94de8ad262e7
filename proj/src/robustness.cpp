#include "hdist/robustness.hpp"

#include <cmath>
#include <limits>

namespace hdist {

namespace {

RobustnessReport make_report(std::string name, const ApproxConfig& cfg, std::uint64_t seed) {
    RobustnessReport report;
    report.check_name = std::move(name);
    report.config = cfg;
    report.seed = seed;
    return report;
}

RobustnessReport invariance_report(std::string name, const PointSet& a, const PointSet& b,
                                   const Transform& transform, double reference_scale,
                                   const ApproxConfig& cfg, std::uint64_t seed,
                                   double exact_tol, double approx_tol) {
    RobustnessReport report = make_report(std::move(name), cfg, seed);
    const double before = approximate_hausdorff(a, b, cfg, seed).value;
    const double after = approximate_hausdorff(apply_transform(a, transform),
                                               apply_transform(b, transform), cfg, seed)
                             .value;
    const double reference = reference_scale * before;
    report.measured_value = std::abs(after - reference);
    const double rel = cfg.backend == AnnBackend::ExactScan ? exact_tol : approx_tol;
    report.tolerance = rel * (1.0 + std::abs(reference));
    report.predicted_bound = 0.0;
    report.passed = report.measured_value <= report.tolerance;
    return report;
}

double contract_epsilon(const ApproxConfig& cfg) {
    return cfg.backend == AnnBackend::ExactScan ? 0.0 : cfg.params.epsilon;
}

bool contract_guaranteed(const ApproxConfig& cfg) {
    return cfg.backend != AnnBackend::NavigableGraph;
}

}  // namespace

RobustnessReport check_translation_invariance(const PointSet& a, const PointSet& b,
                                              const Vector& t, const ApproxConfig& cfg,
                                              std::uint64_t seed, const Tolerances& tol) {
    detail::require(t.size() == a.dim(), "check_translation_invariance: dimension mismatch");
    return invariance_report("translation-invariance", a, b, Translation{t}, 1.0, cfg, seed,
                             tol.exact_translation, tol.approx_invariance);
}

RobustnessReport check_rotation_invariance(const PointSet& a, const PointSet& b,
                                           const Rotation& r, const ApproxConfig& cfg,
                                           std::uint64_t seed, const Tolerances& tol) {
    detail::require(r.matrix().rows() == a.dim(),
                    "check_rotation_invariance: dimension mismatch");
    return invariance_report("rotation-invariance", a, b, r, 1.0, cfg, seed, tol.exact_rotation,
                             tol.approx_invariance);
}

RobustnessReport check_uniform_scaling(const PointSet& a, const PointSet& b, double lambda,
                                       const ApproxConfig& cfg, std::uint64_t seed,
                                       const Tolerances& tol) {
    const UniformScale scale(lambda);  // rejects lambda <= 0
    return invariance_report("uniform-scaling", a, b, scale, lambda, cfg, seed,
                             tol.exact_scaling, tol.approx_invariance);
}

RobustnessReport check_nonuniform_scaling(const PointSet& a, const PointSet& b,
                                          const DiagonalScale& scale, const ApproxConfig& cfg,
                                          std::uint64_t seed) {
    detail::require(scale.factors.size() == a.dim(),
                    "check_nonuniform_scaling: dimension mismatch");
    RobustnessReport report = make_report("nonuniform-scaling", cfg, seed);
    const double before = approximate_hausdorff(a, b, cfg, seed).value;
    const double after =
        approximate_hausdorff(apply_transform(a, Transform{scale}),
                              apply_transform(b, Transform{scale}), cfg, seed)
            .value;
    const double lambda_max = scale.factors.maxCoeff();
    report.measured_value = std::abs(after - lambda_max * before);
    report.predicted_bound = (condition_number(scale) - 1.0) * geometry_stats(a, b).d_max;
    report.tolerance = 1e-9;
    report.passed = report.measured_value <= report.predicted_bound + report.tolerance;
    return report;
}

RobustnessReport check_insertion_stability(const PointSet& a, const PointSet& b,
                                           const Vector& inserted, const ApproxConfig& cfg,
                                           std::uint64_t seed) {
    detail::require(inserted.size() == a.dim(),
                    "check_insertion_stability: dimension mismatch");
    RobustnessReport report = make_report("insertion-stability", cfg, seed);

    double delta = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < b.size(); ++j)
        delta = std::min(delta, euclidean_distance(inserted, b.point(j)));

    const PointSet grown = a.with_appended(inserted);
    const double exact_diff =
        std::abs(hausdorff_exact(grown, b).value - hausdorff_exact(a, b).value);
    report.measured_value = exact_diff;
    report.predicted_bound = delta;
    report.tolerance = 1e-12;

    report.approx_measured = std::abs(approximate_hausdorff(grown, b, cfg, seed).value -
                                      approximate_hausdorff(a, b, cfg, seed).value);
    report.approx_bound = (1.0 + contract_epsilon(cfg)) * delta + 1e-9;
    report.approx_asserted = cfg.mode == ApproxMode::Dual && contract_guaranteed(cfg);

    report.passed = exact_diff <= delta + report.tolerance &&
                    (!report.approx_asserted || report.approx_measured <= report.approx_bound);
    return report;
}

RobustnessReport check_deletion_stability(const PointSet& a, const PointSet& b, Index idx,
                                          const ApproxConfig& cfg, std::uint64_t seed) {
    detail::require(a.size() >= 2, "check_deletion_stability: cannot delete from a singleton");
    detail::require(idx >= 0 && idx < a.size(), "check_deletion_stability: index out of range");
    RobustnessReport report = make_report("deletion-stability", cfg, seed);

    double bound = 0.0;
    for (Index j = 0; j < b.size(); ++j)
        bound = std::max(bound, euclidean_distance(a.point(idx), b.point(j)));

    const PointSet shrunk = a.with_removed(idx);
    const double exact_diff =
        std::abs(hausdorff_exact(shrunk, b).value - hausdorff_exact(a, b).value);
    report.measured_value = exact_diff;
    report.predicted_bound = bound;
    report.tolerance = 1e-12;

    report.approx_measured = std::abs(approximate_hausdorff(shrunk, b, cfg, seed).value -
                                      approximate_hausdorff(a, b, cfg, seed).value);
    report.approx_bound = (1.0 + contract_epsilon(cfg)) * bound + 1e-9;
    report.approx_asserted = false;  // recorded only; no approximate claim here

    report.passed = exact_diff <= bound + report.tolerance;
    return report;
}

RobustnessReport check_move_stability(const PointSet& a, const PointSet& b, Index idx,
                                      const Vector& moved, const ApproxConfig& cfg,
                                      std::uint64_t seed) {
    detail::require(idx >= 0 && idx < a.size(), "check_move_stability: index out of range");
    detail::require(moved.size() == a.dim(), "check_move_stability: dimension mismatch");
    RobustnessReport report = make_report("move-stability", cfg, seed);

    const double bound = euclidean_distance(a.point(idx), moved);
    const PointSet perturbed = a.with_replaced(idx, moved);
    const double exact_diff =
        std::abs(hausdorff_exact(perturbed, b).value - hausdorff_exact(a, b).value);
    report.measured_value = exact_diff;
    report.predicted_bound = bound;
    report.tolerance = 1e-12;

    report.approx_measured = std::abs(approximate_hausdorff(perturbed, b, cfg, seed).value -
                                      approximate_hausdorff(a, b, cfg, seed).value);
    report.approx_bound = (1.0 + contract_epsilon(cfg)) * bound;
    report.approx_asserted = false;  // recorded only

    report.passed = exact_diff <= bound + report.tolerance;
    return report;
}

}  // namespace hdist
