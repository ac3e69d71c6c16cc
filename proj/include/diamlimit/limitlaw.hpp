#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "diamlimit/constants.hpp"
#include "diamlimit/distributions.hpp"
#include "diamlimit/errors.hpp"
#include "diamlimit/geometry.hpp"
#include "diamlimit/sampling.hpp"

namespace diamlimit {

// ---------------------------------------------------------------------------
// State spaces and intensities of the limit Poisson processes
// ---------------------------------------------------------------------------

/// p-norm limit set P^p, carried with the half-axes that define it.
struct PNormParaboloid {
    double p = 2.0;
    std::vector<double> half_axes;
};

/// Osculating paraboloid (or its p-norm analogue) truncated at height b,
/// which makes the limit processes finite and simulable.
struct TruncatedParaboloid {
    std::variant<PoleCapGeometry, PNormParaboloid> shape;
    double b = 10.0;

    int dim() const {
        if (const auto* g = std::get_if<PoleCapGeometry>(&shape)) {
            return g->dim();
        }
        return static_cast<int>(std::get<PNormParaboloid>(shape).half_axes.size());
    }
};

struct UniformDensity {
    double p_const = 1.0;
};

/// Intensity with density alpha * (2 z1/a1 - sum (z_k/a_k)^2)^beta on the
/// ellipsoid-form paraboloid; governs Pearson Type II limits.
struct LambdaBeta {
    double alpha = 1.0;
    double beta = 0.0;
    std::vector<double> half_axes;
};

using IntensitySpec = std::variant<UniformDensity, LambdaBeta>;

namespace detail {

inline void require_ellipsoid_form(const PoleCapGeometry& geom,
                                   std::span<const double> half_axes) {
    if (std::cmp_not_equal(half_axes.size(), geom.dim())) {
        throw DimensionMismatchError("half-axes dimension does not match geometry");
    }
    for (Eigen::Index j = 0; j < geom.kappa.size(); ++j) {
        const double aj = half_axes[static_cast<std::size_t>(j) + 1];
        const double expected = half_axes[0] / (aj * aj);
        if (std::abs(geom.kappa[j] - expected) > 1e-9 * std::max(1.0, expected)) {
            throw InvalidSpecError(
                "LambdaBeta intensity requires the ellipsoid-form paraboloid");
        }
    }
}

} // namespace detail

/// Total intensity mass of the truncated region. The cross-section of
/// P(H) at height z1 is an ellipsoid with semi-axes sqrt(2 z1/kappa_j),
/// so the uniform mass integrates z1^((d-1)/2) and the LambdaBeta mass
/// integrates z1^(beta+(d-1)/2) with a Beta-function cross-section factor.
inline double paraboloid_mass(const TruncatedParaboloid& region,
                              const IntensitySpec& intensity) {
    if (!(region.b > 0.0)) {
        throw InvalidSpecError("truncation height must be positive");
    }
    const int d = region.dim();
    const double b = region.b;

    if (const auto* uni = std::get_if<UniformDensity>(&intensity)) {
        if (const auto* geom = std::get_if<PoleCapGeometry>(&region.shape)) {
            double log_det = 0.0;
            for (Eigen::Index j = 0; j < geom->kappa.size(); ++j) {
                log_det += std::log(geom->kappa[j]);
            }
            const double shape_factor =
                unit_ball_volume(d - 1) *
                std::exp(0.5 * (d - 1) * std::numbers::ln2 - 0.5 * log_det);
            return uni->p_const * shape_factor * std::pow(b, 0.5 * (d + 1)) /
                   (0.5 * (d + 1));
        }
        const auto& pp = std::get<PNormParaboloid>(region.shape);
        double axes_prod = 1.0;
        for (std::size_t k = 1; k < pp.half_axes.size(); ++k) {
            axes_prod *= pp.half_axes[k];
        }
        const double q = (d - 1) / pp.p;
        const double cross = psuperellipsoid_volume(
            pp.p, std::vector<double>(static_cast<std::size_t>(d) - 1, 1.0));
        return uni->p_const * axes_prod * cross *
               std::pow(pp.p / pp.half_axes[0], q) * std::pow(b, 1.0 + q) / (1.0 + q);
    }

    const auto& lam = std::get<LambdaBeta>(intensity);
    const auto* geom = std::get_if<PoleCapGeometry>(&region.shape);
    if (geom == nullptr) {
        throw InvalidSpecError("LambdaBeta intensity is defined on P(H) only");
    }
    detail::require_ellipsoid_form(*geom, lam.half_axes);
    if (!(lam.beta > -1.0)) {
        throw BetaOutOfRangeError("LambdaBeta beta must satisfy beta > -1");
    }
    double axes_prod = 1.0;
    for (std::size_t k = 1; k < lam.half_axes.size(); ++k) {
        axes_prod *= lam.half_axes[k];
    }
    const double half_beta_fn =
        0.5 * std::exp(std::lgamma(0.5 * (d - 1)) + std::lgamma(lam.beta + 1.0) -
                       std::lgamma(0.5 * (d - 1) + lam.beta + 1.0));
    const double height_exp = lam.beta + 0.5 * (d + 1);
    return lam.alpha * axes_prod * unit_sphere_area(d - 1) * half_beta_fn *
           std::pow(2.0 / lam.half_axes[0], lam.beta + 0.5 * (d - 1)) *
           std::pow(b, height_exp) / height_exp;
}

/// One realization of the Poisson process PRM(intensity restricted to the
/// truncated region): Poisson(mass) many i.i.d. points from the
/// normalized intensity. May be empty; callers that need points retry.
inline PointSet sample_prm(const TruncatedParaboloid& region,
                           const IntensitySpec& intensity, RngStream& rng) {
    const double mass = paraboloid_mass(region, intensity);
    const std::size_t n = rpoisson(rng, mass);
    const int d = region.dim();
    PointSet pts(static_cast<std::size_t>(d));
    pts.reserve(n);

    if (std::holds_alternative<UniformDensity>(intensity)) {
        if (const auto* geom = std::get_if<PoleCapGeometry>(&region.shape)) {
            // Height density ~ z1^((d-1)/2), then uniform in the cross section.
            std::vector<double> ball(static_cast<std::size_t>(d) - 1);
            Eigen::VectorXd v(d - 1);
            for (std::size_t i = 0; i < n; ++i) {
                const double z1 =
                    region.b * std::pow(rng.uniform01(), 2.0 / (d + 1));
                runit_sphere(rng, ball);
                const double r = std::pow(rng.uniform01(), 1.0 / (d - 1));
                for (int j = 0; j < d - 1; ++j) {
                    v[j] = std::sqrt(2.0 * z1 / geom->kappa[j]) * r *
                           ball[static_cast<std::size_t>(j)];
                }
                const Eigen::VectorXd zt = geom->U * v;
                pts.coords.push_back(z1);
                pts.coords.insert(pts.coords.end(), zt.data(), zt.data() + d - 1);
            }
            return pts;
        }
        const auto& pp = std::get<PNormParaboloid>(region.shape);
        std::vector<double> w(static_cast<std::size_t>(d) - 1);
        const double q = (d - 1) / pp.p;
        for (std::size_t i = 0; i < n; ++i) {
            const double z1 = region.b * std::pow(rng.uniform01(), 1.0 / (1.0 + q));
            detail::runit_pball(rng, pp.p, w);
            const double rho = std::pow(pp.p * z1 / pp.half_axes[0], 1.0 / pp.p);
            pts.coords.push_back(z1);
            for (int k = 1; k < d; ++k) {
                pts.coords.push_back(pp.half_axes[static_cast<std::size_t>(k)] * rho *
                                     w[static_cast<std::size_t>(k) - 1]);
            }
        }
        return pts;
    }

    const auto& lam = std::get<LambdaBeta>(intensity);
    // Height density ~ z1^(beta+(d-1)/2); the squared cross-section radius
    // fraction is Beta((d-1)/2, beta+1) and the direction is uniform.
    std::vector<double> dir(static_cast<std::size_t>(d) - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 =
            region.b * std::pow(rng.uniform01(), 1.0 / (lam.beta + 0.5 * (d + 1)));
        const double frac =
            std::sqrt(rbeta(rng, 0.5 * (d - 1), lam.beta + 1.0));
        runit_sphere(rng, dir);
        const double rho = std::sqrt(2.0 * z1 / lam.half_axes[0]);
        pts.coords.push_back(z1);
        for (int k = 1; k < d; ++k) {
            pts.coords.push_back(lam.half_axes[static_cast<std::size_t>(k)] * rho *
                                 frac * dir[static_cast<std::size_t>(k) - 1]);
        }
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Pairwise limit functionals
// ---------------------------------------------------------------------------

/// x1 + y1 - |xt - yt|^2 / (4a), the pairwise functional of the main limit.
inline double functional_G(std::span<const double> x, std::span<const double> y,
                           double a) {
    double s = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double t = x[k] - y[k];
        s += t * t;
    }
    return x[0] + y[0] - s / (4.0 * a);
}

/// x1 + y1 - |xt - yt|_p^p / (p (2 a1)^(p-1)), the p-norm variant.
inline double functional_G_p(std::span<const double> x, std::span<const double> y,
                             double a1, double p) {
    double s = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        s += std::pow(std::abs(x[k] - y[k]), p);
    }
    return x[0] + y[0] - s / (p * std::pow(2.0 * a1, p - 1.0));
}

/// Serializable choice between the two pairwise functionals.
struct PairFunctional {
    enum class Kind { Euclid, PNorm };

    Kind kind = Kind::Euclid;
    double a = 1.0;   // half-diameter (a, or a1 for the p-norm form)
    double p = 2.0;

    static PairFunctional euclid(double a) { return {Kind::Euclid, a, 2.0}; }
    static PairFunctional pnorm(double a1, double p) { return {Kind::PNorm, a1, p}; }

    double operator()(std::span<const double> x, std::span<const double> y) const {
        return kind == Kind::Euclid ? functional_G(x, y, a)
                                    : functional_G_p(x, y, a, p);
    }
};

struct LimitSample {
    std::vector<double> t_values;   // ascending, t_1 <= ... <= t_k
};

/// The k smallest functional values over the full left x right cross
/// product, ascending; these are the t_1, ..., t_k of the limit law.
inline LimitSample limit_min_k(const PointSet& left, const PointSet& right,
                               const PairFunctional& functional, std::size_t k) {
    if (k < 1) {
        throw InvalidSpecError("k must be at least 1");
    }
    if (left.size() == 0 || right.size() == 0) {
        throw EmptyProcessError("a limit process realization is empty");
    }
    if (left.size() * right.size() < k) {
        throw EmptyProcessError("fewer than k pairs in the limit realization");
    }
    // Max-heap of the k smallest values seen so far.
    std::vector<double> heap;
    heap.reserve(k);
    for (std::size_t i = 0; i < left.size(); ++i) {
        const auto x = left.point(i);
        for (std::size_t j = 0; j < right.size(); ++j) {
            const double v = functional(x, right.point(j));
            if (heap.size() < k) {
                heap.push_back(v);
                std::push_heap(heap.begin(), heap.end());
            } else if (v < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = v;
                std::push_heap(heap.begin(), heap.end());
            }
        }
    }
    std::sort(heap.begin(), heap.end());
    return LimitSample{std::move(heap)};
}

/// Single-process limit for asymmetric Pearson exponents: the slower
/// pole dominates and the functional reduces to x1 - |xt|^2 / (4 a1).
inline double one_sided_limit(const PointSet& left, double a1) {
    if (left.size() == 0) {
        throw EmptyProcessError("a limit process realization is empty");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < left.size(); ++i) {
        const auto x = left.point(i);
        double s = 0.0;
        for (std::size_t kk = 1; kk < x.size(); ++kk) {
            s += x[kk] * x[kk];
        }
        best = std::min(best, x[0] - s / (4.0 * a1));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Pole pairs and multi-axis minima
// ---------------------------------------------------------------------------

/// Everything needed to simulate one pole pair's limit variable.
struct PolePairConfig {
    TruncatedParaboloid left;
    TruncatedParaboloid right;
    IntensitySpec left_intensity;
    IntensitySpec right_intensity;
    PairFunctional functional;
};

/// One draw of (t_1, ..., t_k) for a pole pair. Empty realizations are
/// redrawn with fresh randomness; the retry count is surfaced so that it
/// can be reported instead of silently biasing results.
inline LimitSample sample_pole_pair(const PolePairConfig& cfg, std::size_t k,
                                    RngStream& rng, std::size_t* retries = nullptr) {
    for (;;) {
        PointSet left = sample_prm(cfg.left, cfg.left_intensity, rng);
        PointSet right = sample_prm(cfg.right, cfg.right_intensity, rng);
        try {
            return limit_min_k(left, right, cfg.functional, k);
        } catch (const EmptyProcessError&) {
            if (retries != nullptr) {
                ++*retries;
            }
        }
    }
}

/// Minimum over k independent pole-pair limit variables.
inline double multi_axes_limit(std::span<const PolePairConfig> configs, RngStream& rng,
                               std::size_t* retries = nullptr) {
    if (configs.empty()) {
        throw InvalidSpecError("need at least one pole pair");
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cfg : configs) {
        best = std::min(best, sample_pole_pair(cfg, 1, rng, retries).t_values[0]);
    }
    return best;
}

/// Constants and the Weibull-type bounding distribution G for ellipsoids
/// with e equal major half-axes.
inline MultiMajorConstants bounds_distribution(int d, int e, double beta) {
    return multi_major_constants(d, e, beta);
}

} // namespace diamlimit
