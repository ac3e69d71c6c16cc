#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "diamlimit/constants.hpp"
#include "diamlimit/distributions.hpp"
#include "diamlimit/errors.hpp"
#include "diamlimit/geometry.hpp"
#include "diamlimit/rng.hpp"

namespace diamlimit {

/// Flat row-major point storage; avoids one heap block per point.
struct PointSet {
    std::size_t dim = 0;
    std::vector<double> coords;

    PointSet() = default;
    explicit PointSet(std::size_t d) : dim(d) {}

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * dim, dim};
    }
    void append(std::span<const double> p) {
        coords.insert(coords.end(), p.begin(), p.end());
    }
    void reserve(std::size_t n) { coords.reserve(n * dim); }
};

// ---------------------------------------------------------------------------
// Distribution specifications and sampled clouds
// ---------------------------------------------------------------------------

struct UniformEllipsoidDist {};

struct PearsonIIDist {
    double beta = 0.0;
};

struct UniformPSuperDist {
    double p = 2.0;
};

using DistributionSpec = std::variant<UniformEllipsoidDist, PearsonIIDist, UniformPSuperDist>;

enum class CountMode { Fixed, Poissonized };

struct PointCloud {
    PointSet points;
    std::size_t n_requested = 0;
    CountMode mode = CountMode::Fixed;
    std::uint64_t seed = 0;
    BodySpec body;
    DistributionSpec dist;

    std::size_t size() const { return points.size(); }
    std::size_t dim() const { return points.dim; }
    std::span<const double> point(std::size_t i) const { return points.point(i); }
};

/// One Poisson(n) sample-size draw for the Poissonized cloud.
inline std::uint64_t poissonized_count(double n, RngStream& rng) {
    if (!(n > 0.0)) {
        throw InvalidSpecError("poissonized count needs n > 0");
    }
    return rpoisson(rng, n);
}

// ---------------------------------------------------------------------------
// Direct samplers
// ---------------------------------------------------------------------------

/// i.i.d. uniform points in the ellipsoid: normal direction, radius
/// U^(1/d), coordinatewise scaling by the half-axes.
inline PointCloud sample_uniform_ellipsoid(std::span<const double> half_axes,
                                           std::size_t count, RngStream& rng) {
    validate_axes(half_axes, /*require_unique_major=*/false);
    const std::size_t d = half_axes.size();
    PointCloud cloud;
    cloud.points = PointSet(d);
    cloud.points.reserve(count);
    cloud.body = Ellipsoid{{half_axes.begin(), half_axes.end()}};
    cloud.dist = UniformEllipsoidDist{};
    std::vector<double> dir(d);
    for (std::size_t i = 0; i < count; ++i) {
        runit_sphere(rng, dir);
        const double r = std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
        for (std::size_t j = 0; j < d; ++j) {
            cloud.points.coords.push_back(half_axes[j] * r * dir[j]);
        }
    }
    return cloud;
}

/// i.i.d. Pearson Type II points: direction uniform on the sphere,
/// squared radius Beta(d/2, beta+1), coordinatewise scaling. beta = 0 is
/// the uniform distribution; beta in (-1,0) piles mass at the boundary.
inline PointCloud sample_pearson2(std::span<const double> half_axes, double beta,
                                  std::size_t count, RngStream& rng) {
    validate_axes(half_axes, /*require_unique_major=*/false);
    if (!(beta > -1.0)) {
        throw BetaOutOfRangeError("pearson beta must satisfy beta > -1");
    }
    const std::size_t d = half_axes.size();
    PointCloud cloud;
    cloud.points = PointSet(d);
    cloud.points.reserve(count);
    cloud.body = Ellipsoid{{half_axes.begin(), half_axes.end()}};
    cloud.dist = PearsonIIDist{beta};
    std::vector<double> dir(d);
    for (std::size_t i = 0; i < count; ++i) {
        runit_sphere(rng, dir);
        const double r = std::sqrt(rbeta(rng, 0.5 * static_cast<double>(d), beta + 1.0));
        for (std::size_t j = 0; j < d; ++j) {
            cloud.points.coords.push_back(half_axes[j] * r * dir[j]);
        }
    }
    return cloud;
}

namespace detail {

/// Uniform point in the unit p-ball of R^d, written into `out`:
/// exp(-|t|^p)-distributed coordinates (signed Gamma(1/p)^(1/p)),
/// normalized to the p-sphere, then radius U^(1/d).
inline void runit_pball(RngStream& rng, double p, std::span<double> out) {
    const std::size_t d = out.size();
    for (;;) {
        double norm_p = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double g = std::pow(rgamma(rng, 1.0 / p), 1.0 / p);
            out[j] = rng.uniform01() < 0.5 ? -g : g;
            norm_p += std::pow(std::abs(out[j]), p);
        }
        if (norm_p <= 0.0) {
            continue;
        }
        const double scale =
            std::pow(rng.uniform01(), 1.0 / static_cast<double>(d)) /
            std::pow(norm_p, 1.0 / p);
        for (std::size_t j = 0; j < d; ++j) {
            out[j] *= scale;
        }
        return;
    }
}

} // namespace detail

/// i.i.d. uniform points in the p-superellipsoid.
inline PointCloud sample_uniform_psuperellipsoid(std::span<const double> half_axes,
                                                 double p, std::size_t count,
                                                 RngStream& rng) {
    validate_axes(half_axes, /*require_unique_major=*/false);
    if (!(p >= 1.0)) {
        throw InvalidSpecError("p-superellipsoid exponent must satisfy p >= 1");
    }
    const std::size_t d = half_axes.size();
    PointCloud cloud;
    cloud.points = PointSet(d);
    cloud.points.reserve(count);
    cloud.body = PSuperellipsoid{p, {half_axes.begin(), half_axes.end()}};
    cloud.dist = UniformPSuperDist{p};
    std::vector<double> w(d);
    for (std::size_t i = 0; i < count; ++i) {
        detail::runit_pball(rng, p, w);
        for (std::size_t j = 0; j < d; ++j) {
            cloud.points.coords.push_back(half_axes[j] * w[j]);
        }
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Convenience orchestration
// ---------------------------------------------------------------------------

/// Draws one cloud for the given body/distribution pair. In Poissonized
/// mode the realized size is Poisson(n); the same stream drives both the
/// size and the points, so (seed, parameters) pins the cloud bitwise.
inline PointCloud sample_cloud(const BodySpec& body, const DistributionSpec& dist,
                               std::size_t n, CountMode mode, RngStream& rng,
                               std::uint64_t seed_tag = 0) {
    const std::size_t count =
        mode == CountMode::Poissonized
            ? poissonized_count(static_cast<double>(n), rng)
            : n;
    PointCloud cloud = std::visit(
        [&](const auto& ds) -> PointCloud {
            using T = std::decay_t<decltype(ds)>;
            if constexpr (std::is_same_v<T, UniformEllipsoidDist>) {
                const auto& e = std::get<Ellipsoid>(body);
                return sample_uniform_ellipsoid(e.half_axes, count, rng);
            } else if constexpr (std::is_same_v<T, PearsonIIDist>) {
                const auto& e = std::get<Ellipsoid>(body);
                return sample_pearson2(e.half_axes, ds.beta, count, rng);
            } else {
                const auto& s = std::get<PSuperellipsoid>(body);
                if (s.p != ds.p) {
                    throw InvalidSpecError("distribution p does not match body p");
                }
                return sample_uniform_psuperellipsoid(s.half_axes, ds.p, count, rng);
            }
        },
        dist);
    cloud.n_requested = n;
    cloud.mode = mode;
    cloud.seed = seed_tag;
    return cloud;
}

} // namespace diamlimit
