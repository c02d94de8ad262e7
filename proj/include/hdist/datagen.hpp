#pragma once

#include "hdist/detail/sampling.hpp"
#include "hdist/geometry.hpp"

#include <cstdint>
#include <utility>

namespace hdist {

enum class GenFamily { UniformCube, GaussianClusters, SphereShell };

/// Recipe for one synthetic (A, B) instance. Equal specs always produce
/// bit-identical output.
struct GenSpec {
    GenFamily family = GenFamily::UniformCube;
    Index m = 1;
    Index n = 1;
    Index d = 1;
    std::uint64_t seed = 0;
    // GaussianClusters only: shared center count and per-cluster std dev.
    Index clusters = 4;
    double cluster_spread = 0.05;
};

/// Families: uniform over [0,1)^d, Gaussian mixtures around k shared
/// centers, and points on the unit sphere surface.
std::pair<PointSet, PointSet> generate_pair(const GenSpec& spec);

/// Two tight clusters roughly `gap` apart, regenerated with a smaller
/// radius until geometry_stats reports delta / d_max >= 0.9.
std::pair<PointSet, PointSet> well_separated_pair(Index d, double gap, Index m, Index n,
                                                  std::uint64_t seed);

}  // namespace hdist
