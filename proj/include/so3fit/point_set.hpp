#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "so3fit/rotation.hpp"

namespace so3fit {

/// Deterministic source of Haar-distributed rotations.  Uniform deviates are
/// drawn from the raw mt19937_64 stream, so the sequence is identical across
/// platforms for a given seed.
class HaarSampler {
public:
    explicit HaarSampler(std::uint64_t seed) : rng_(seed) {}

    /// One uniform double in [0, 1).
    double uniform();

    /// One Haar-distributed rotation (Shoemake's uniform-quaternion method).
    Rotation sample();

private:
    std::mt19937_64 rng_;
};

/**
 * A finite center set Xi with optional cached distribution statistics:
 * separation distance q (exact pairwise minimum), fill distance h
 * (probe-estimated lower bound), and mesh ratio h/q.
 */
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Rotation> points) : points_(std::move(points)) {}

    const std::vector<Rotation>& points() const { return points_; }
    const Rotation& operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const { return points_.size(); }

    bool has_stats() const { return stats_.has_value(); }
    /// Separation distance q.  Requires stats (see point_set_stats).
    double separation() const;
    /// Fill distance h (probe-approximated lower bound of the true value).
    double fill_distance() const;
    /// Mesh ratio h/q.
    double mesh_ratio() const;

    struct Stats {
        double separation;
        double fill_distance;
        double mesh_ratio;
    };
    void set_stats(const Stats& s) { stats_ = s; }

private:
    std::vector<Rotation> points_;
    std::optional<Stats> stats_;
};

/**
 * Compute q exactly by pairwise minimization and approximate h as the largest
 * min-distance-to-Xi over `probe_count` Haar-random probes (fixed internal
 * seed), refined by a shrinking random walk around the best probe.  The
 * reported h is a lower bound of the true fill distance.
 *
 * Throws DegenerateSetError (naming both indices) if two rotations coincide.
 */
PointSet point_set_stats(std::vector<Rotation> points, int probe_count);

/// Default probe count used when none is given: 20 * |Xi|.
int default_probe_count(std::size_t n_points);

enum class SampleMode { uniform, quasi_uniform };

/**
 * Draw `count` rotations.  `uniform` returns Haar-distributed points;
 * `quasi_uniform` selects them by farthest-point insertion from a larger
 * uniform pool and guarantees a measured mesh ratio <= 2.5.  Deterministic
 * under the seed.
 */
PointSet sample_points(int count, SampleMode mode, std::uint64_t seed);

} // namespace so3fit
