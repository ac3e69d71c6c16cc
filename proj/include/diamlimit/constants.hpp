#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "diamlimit/errors.hpp"

namespace diamlimit {

/// Volume of the unit ball in R^m.
inline double unit_ball_volume(int m) {
    return std::exp(0.5 * m * std::log(std::numbers::pi) - std::lgamma(0.5 * m + 1.0));
}

/// Surface area of the unit sphere S^{m-1} in R^m.
inline double unit_sphere_area(int m) {
    return std::exp(std::numbers::ln2 + 0.5 * m * std::log(std::numbers::pi)
                    - std::lgamma(0.5 * m));
}

/// Volume of the ellipsoid with the given half-axes.
inline double ellipsoid_volume(std::span<const double> half_axes) {
    double v = unit_ball_volume(static_cast<int>(half_axes.size()));
    for (double a : half_axes) {
        v *= a;
    }
    return v;
}

/// Volume of the p-superellipsoid { sum (|z_k|/a_k)^p <= 1 }.
inline double psuperellipsoid_volume(double p, std::span<const double> half_axes) {
    const int d = static_cast<int>(half_axes.size());
    double log_v = d * (std::numbers::ln2 + std::lgamma(1.0 + 1.0 / p))
                   - std::lgamma(1.0 + static_cast<double>(d) / p);
    for (double a : half_axes) {
        log_v += std::log(a);
    }
    return std::exp(log_v);
}

/// Normalizing constant of the Pearson Type II density
/// c1 * (1 - z' Sigma^{-1} z)^beta on the open ellipsoid.
inline double pearson2_constant(double beta, std::span<const double> half_axes) {
    if (!(beta > -1.0)) {
        throw BetaOutOfRangeError("pearson beta must satisfy beta > -1");
    }
    const int d = static_cast<int>(half_axes.size());
    double log_c = std::lgamma(0.5 * d + beta + 1.0) - std::lgamma(beta + 1.0)
                   - 0.5 * d * std::log(std::numbers::pi);
    for (double a : half_axes) {
        log_c -= std::log(a);
    }
    return std::exp(log_c);
}

/// Constants of the bounding distribution for ellipsoids with e equal
/// major half-axes (d >= 3, 2 <= e <= d-1, Pearson parameter beta):
/// the boundary-contact tail P(1 - |Zbar| <= s) ~ a s^alpha, the
/// scale sigma, the normalizing sequence b_n = bn_prefactor * n^bn_exponent,
/// and the Weibull-type bound G(t) = 1 - exp(-t^g_exponent).
struct MultiMajorConstants {
    double a = 0.0;
    double alpha = 0.0;
    double sigma = 0.0;
    double bn_prefactor = 0.0;
    double bn_exponent = 0.0;
    double g_exponent = 0.0;

    double bn(double n) const { return bn_prefactor * std::pow(n, bn_exponent); }
    double G(double t) const {
        return t <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(t, g_exponent));
    }
    double G_inverse(double q) const {
        return std::pow(-std::log1p(-q), 1.0 / g_exponent);
    }
};

inline MultiMajorConstants multi_major_constants(int d, int e, double beta) {
    if (d < 3 || e < 2 || e > d - 1) {
        throw DimensionMismatchError("require d >= 3 and 2 <= e <= d-1");
    }
    if (!(beta > -1.0)) {
        throw BetaOutOfRangeError("beta must satisfy beta > -1");
    }
    MultiMajorConstants c;
    c.alpha = 0.5 * (d - e) + beta + 1.0;
    // a = Gamma(d/2+beta+1)/Gamma((d-e)/2+beta+2) * pi^{-e/2} * e * omega_e
    //     * 2^{(d-e)/2+beta}, with omega_e = pi^{e/2}/Gamma(e/2+1).
    const double log_a = std::lgamma(0.5 * d + beta + 1.0)
                         - std::lgamma(0.5 * (d - e) + beta + 2.0)
                         - std::lgamma(0.5 * e + 1.0) + std::log(static_cast<double>(e))
                         + (0.5 * (d - e) + beta) * std::numbers::ln2;
    c.a = std::exp(log_a);
    const double log_sigma = (e - 2) * std::numbers::ln2 + std::lgamma(0.5 * e)
                             + 2.0 * log_a + 2.0 * std::lgamma(c.alpha + 1.0)
                             - 0.5 * std::log(std::numbers::pi)
                             - std::lgamma(0.5 * (e + 1) + 2.0 * c.alpha);
    c.sigma = std::exp(log_sigma);
    c.g_exponent = 0.5 * (2.0 * d - e + 4.0 * beta + 3.0);
    c.bn_exponent = 2.0 / c.g_exponent;
    c.bn_prefactor = std::pow(0.5 * c.sigma, 1.0 / c.g_exponent);
    return c;
}

} // namespace diamlimit
