#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "diamlimit/errors.hpp"
#include "diamlimit/rng.hpp"

namespace diamlimit {

/// One standard normal draw (Marsaglia polar method, spare discarded).
inline double rnormal(RngStream& rng) noexcept {
    for (;;) {
        const double u = 2.0 * rng.uniform01() - 1.0;
        const double v = 2.0 * rng.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

/// Fills `out` with i.i.d. standard normals, two per polar iteration.
inline void fill_normals(RngStream& rng, std::span<double> out) noexcept {
    std::size_t i = 0;
    while (i < out.size()) {
        const double u = 2.0 * rng.uniform01() - 1.0;
        const double v = 2.0 * rng.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s <= 0.0 || s >= 1.0) {
            continue;
        }
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        out[i++] = u * m;
        if (i < out.size()) {
            out[i++] = v * m;
        }
    }
}

/// Gamma(shape, 1) via Marsaglia-Tsang; shapes below 1 are boosted
/// through Gamma(shape + 1) * U^(1/shape).
inline double rgamma(RngStream& rng, double shape) {
    if (!(shape > 0.0)) {
        throw InvalidSpecError("gamma shape must be positive");
    }
    if (shape < 1.0) {
        const double boost = std::pow(rng.uniform01(), 1.0 / shape);
        return rgamma(rng, shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rnormal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

/// Beta(a, b) as a Gamma ratio.
inline double rbeta(RngStream& rng, double a, double b) {
    for (;;) {
        const double x = rgamma(rng, a);
        const double y = rgamma(rng, b);
        const double s = x + y;
        if (s > 0.0) {
            return x / s;
        }
    }
}

namespace detail {

// Sequential inversion; only sane for small means.
inline std::uint64_t rpoisson_small(RngStream& rng, double mean) noexcept {
    const double limit = std::exp(-mean);
    double prod = rng.uniform01();
    std::uint64_t k = 0;
    while (prod > limit) {
        prod *= rng.uniform01();
        ++k;
    }
    return k;
}

// Hoermann's PTRD transformed-rejection sampler, valid for mean >= 10.
inline std::uint64_t rpoisson_ptrd(RngStream& rng, double mean) noexcept {
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mu = std::log(mean);
    for (;;) {
        const double u = rng.uniform01() - 0.5;
        const double v = rng.uniform01();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::uint64_t>(kf);
        }
        if (kf < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = kf * log_mu - mean - std::lgamma(kf + 1.0);
        if (lhs <= rhs) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

} // namespace detail

/// Poisson(mean) draw.
inline std::uint64_t rpoisson(RngStream& rng, double mean) {
    if (!(mean >= 0.0)) {
        throw InvalidSpecError("poisson mean must be nonnegative");
    }
    if (mean == 0.0) {
        return 0;
    }
    return mean < 10.0 ? detail::rpoisson_small(rng, mean)
                       : detail::rpoisson_ptrd(rng, mean);
}

/// Uniform direction on the unit sphere of R^dim, written into `out`.
inline void runit_sphere(RngStream& rng, std::span<double> out) noexcept {
    for (;;) {
        fill_normals(rng, out);
        double norm2 = 0.0;
        for (double x : out) {
            norm2 += x * x;
        }
        if (norm2 > 1e-300) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& x : out) {
                x *= inv;
            }
            return;
        }
    }
}

} // namespace diamlimit
