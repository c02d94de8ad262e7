#pragma once

#include "hdist/approx.hpp"

#include <cstdint>
#include <string>

namespace hdist {

/// Verdict of one transformation or stability check. For invariance-style
/// checks `predicted_bound` is zero and the pass condition is
/// measured <= tolerance; for bound-style checks it is
/// measured <= predicted_bound + tolerance.
struct RobustnessReport {
    std::string check_name;
    double predicted_bound = 0.0;
    double measured_value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    // Stability checks also record the approximate-path difference; it
    // joins the verdict only when approx_asserted is true.
    double approx_measured = 0.0;
    double approx_bound = 0.0;
    bool approx_asserted = false;
    ApproxConfig config;
    std::uint64_t seed = 0;
};

/// Relative deviation tolerances for the invariance checks. The exact
/// backend is held to floating-point accuracy; approximate backends are
/// only measured against the loose default because index construction is
/// not geometrically equivariant.
struct Tolerances {
    double exact_translation = 1e-9;
    double exact_rotation = 1e-6;
    double exact_scaling = 1e-9;
    double approx_invariance = 5e-2;
};

/// |d~_H(A,B) - d~_H(A+t, B+t)| under one shared config and seed.
RobustnessReport check_translation_invariance(const PointSet& a, const PointSet& b,
                                              const Vector& t, const ApproxConfig& cfg,
                                              std::uint64_t seed, const Tolerances& tol = {});

RobustnessReport check_rotation_invariance(const PointSet& a, const PointSet& b,
                                           const Rotation& r, const ApproxConfig& cfg,
                                           std::uint64_t seed, const Tolerances& tol = {});

/// |d~_H(lambda A, lambda B) - lambda d~_H(A,B)|.
RobustnessReport check_uniform_scaling(const PointSet& a, const PointSet& b, double lambda,
                                       const ApproxConfig& cfg, std::uint64_t seed,
                                       const Tolerances& tol = {});

/// Distortion eta = |d~_H(LA, LB) - lambda_max d~_H(A,B)| against the
/// condition-number bound (kappa - 1) * D_max(A, B).
RobustnessReport check_nonuniform_scaling(const PointSet& a, const PointSet& b,
                                          const DiagonalScale& scale, const ApproxConfig& cfg,
                                          std::uint64_t seed);

/// Oracle-level |d_H(A + {a'}, B) - d_H(A, B)| against the perturbation
/// magnitude Delta = min_b ||a' - b||. The approximate difference is also
/// measured; it participates in the verdict only in dual mode with a
/// guaranteed backend, where it is held to (1 + eps) * Delta.
RobustnessReport check_insertion_stability(const PointSet& a, const PointSet& b,
                                           const Vector& inserted, const ApproxConfig& cfg,
                                           std::uint64_t seed);

/// Oracle-level deletion difference against max_b ||A[idx] - b||.
RobustnessReport check_deletion_stability(const PointSet& a, const PointSet& b, Index idx,
                                          const ApproxConfig& cfg, std::uint64_t seed);

/// Oracle-level single-point move difference against ||A[idx] - a'||.
RobustnessReport check_move_stability(const PointSet& a, const PointSet& b, Index idx,
                                      const Vector& moved, const ApproxConfig& cfg,
                                      std::uint64_t seed);

}  // namespace hdist
