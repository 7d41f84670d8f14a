#include "so3fit/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "so3fit/errors.hpp"

namespace so3fit {

namespace {

/// |q1 . q2|; increasing in closeness, so usable as a distance surrogate.
double abs_quat_dot(const Rotation& a, const Rotation& b)
{
    double d = a.quaternion().coeffs().dot(b.quaternion().coeffs());
    return std::abs(d);
}

double dot_to_distance(double absdot)
{
    if(absdot > 1.0)
        absdot = 1.0;
    return 2.0 * std::acos(absdot);
}

} // namespace

double HaarSampler::uniform()
{
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

Rotation HaarSampler::sample()
{
    const double u1 = uniform(), u2 = uniform(), u3 = uniform();
    const double r1 = std::sqrt(1.0 - u1), r2 = std::sqrt(u1);
    const double a = 2.0 * M_PI * u2, b = 2.0 * M_PI * u3;
    return Rotation(Eigen::Quaterniond(
        r1 * std::sin(a), r1 * std::cos(a), r2 * std::sin(b), r2 * std::cos(b)));
}

double PointSet::separation() const
{
    if(!stats_)
        throw Error("PointSet: statistics not computed (use point_set_stats)");
    return stats_->separation;
}

double PointSet::fill_distance() const
{
    if(!stats_)
        throw Error("PointSet: statistics not computed (use point_set_stats)");
    return stats_->fill_distance;
}

double PointSet::mesh_ratio() const
{
    if(!stats_)
        throw Error("PointSet: statistics not computed (use point_set_stats)");
    return stats_->mesh_ratio;
}

int default_probe_count(std::size_t n_points)
{
    return static_cast<int>(20 * n_points);
}

namespace {

double min_distance_to_set(const std::vector<Rotation>& pts, const Rotation& y)
{
    double best = -1.0;
    for(const Rotation& p : pts)
        best = std::max(best, abs_quat_dot(p, y));
    return dot_to_distance(best);
}

} // namespace

PointSet point_set_stats(std::vector<Rotation> points, int probe_count)
{
    const std::size_t n = points.size();
    if(n < 2)
        throw InvalidArgumentError("point_set_stats: need at least 2 points");

    // exact separation distance
    double q = M_PI;
    for(std::size_t i = 0; i + 1 < n; ++i) {
        for(std::size_t j = i + 1; j < n; ++j) {
            const double d = dot_to_distance(abs_quat_dot(points[i], points[j]));
            if(d <= 0) {
                throw DegenerateSetError("point_set_stats: duplicate rotations at indices " +
                    std::to_string(i) + " and " + std::to_string(j));
            }
            q = std::min(q, d);
        }
    }

    // probe-estimated fill distance: Haar probes under a fixed internal seed,
    // then a shrinking random walk around the best probe
    HaarSampler sampler(0x5eed0f111ULL);
    double h = 0;
    Rotation best = Rotation::identity();
    for(int t = 0; t < probe_count; ++t) {
        const Rotation y = sampler.sample();
        const double d = min_distance_to_set(points, y);
        if(d > h) {
            h = d;
            best = y;
        }
    }
    double step = h;
    for(int round = 0; round < 8; ++round) {
        for(int t = 0; t < 16; ++t) {
            Eigen::Vector3d dir(sampler.uniform() - 0.5, sampler.uniform() - 0.5,
                sampler.uniform() - 0.5);
            if(dir.norm() < 1e-12)
                continue;
            dir.normalize();
            const Rotation y = best * from_axis_angle({dir, step * sampler.uniform()});
            const double d = min_distance_to_set(points, y);
            if(d > h) {
                h = d;
                best = y;
            }
        }
        step *= 0.5;
    }

    PointSet result(std::move(points));
    result.set_stats({q, h, h / q});
    return result;
}

namespace {

/// Greedy farthest-point selection of `count` points from `pool`, seeded from
/// the pool element closest to the identity.  Comparisons use the quaternion
/// dot surrogate; the selection is identical to one made with the metric.
std::vector<Rotation> farthest_point_subset(const std::vector<Rotation>& pool, int count)
{
    const std::size_t n = pool.size();
    std::vector<double> closest(n, -1.0); // max |dot| against selected set
    std::vector<Rotation> chosen;
    chosen.reserve(count);

    std::size_t first = 0;
    double bestdot = -1.0;
    for(std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(pool[i].quaternion().w());
        if(d > bestdot) {
            bestdot = d;
            first = i;
        }
    }
    chosen.push_back(pool[first]);
    for(std::size_t i = 0; i < n; ++i)
        closest[i] = abs_quat_dot(pool[i], pool[first]);

    while(static_cast<int>(chosen.size()) < count) {
        std::size_t far = 0;
        double fardot = 2.0;
        for(std::size_t i = 0; i < n; ++i) {
            if(closest[i] < fardot) {
                fardot = closest[i];
                far = i;
            }
        }
        chosen.push_back(pool[far]);
        for(std::size_t i = 0; i < n; ++i)
            closest[i] = std::max(closest[i], abs_quat_dot(pool[i], pool[far]));
    }
    return chosen;
}

} // namespace

PointSet sample_points(int count, SampleMode mode, std::uint64_t seed)
{
    if(count < 1)
        throw InvalidArgumentError("sample_points: count must be positive");

    HaarSampler sampler(seed);
    if(mode == SampleMode::uniform) {
        std::vector<Rotation> pts;
        pts.reserve(count);
        for(int i = 0; i < count; ++i)
            pts.push_back(sampler.sample());
        return PointSet(std::move(pts));
    }

    // quasi-uniform: farthest-point insertion from a uniform pool, enlarging
    // the pool until the measured mesh ratio passes.  The pool must be much
    // denser than the target set or its own gaps dominate the fill distance.
    int pool_size = std::max(48 * count, 16384);
    for(int attempt = 0; attempt < 4; ++attempt) {
        std::vector<Rotation> pool;
        pool.reserve(pool_size);
        HaarSampler pool_sampler(seed);
        for(int i = 0; i < pool_size; ++i)
            pool.push_back(pool_sampler.sample());
        PointSet result = point_set_stats(
            farthest_point_subset(pool, count), default_probe_count(count));
        if(result.mesh_ratio() <= 2.5)
            return result;
        pool_size *= 2;
    }
    throw Error("sample_points: could not reach mesh ratio <= 2.5");
}

} // namespace so3fit
