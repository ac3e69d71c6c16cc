#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "diamlimit/constants.hpp"
#include "diamlimit/errors.hpp"
#include "diamlimit/sampling.hpp"

namespace diamlimit {

// ---------------------------------------------------------------------------
// p-norm distances
// ---------------------------------------------------------------------------

namespace detail {

inline double abs_power(double x, double p) {
    const double a = std::abs(x);
    if (p == 2.0) return a * a;
    if (p == 1.0) return a;
    if (p == 4.0) {
        const double s = a * a;
        return s * s;
    }
    return std::pow(a, p);
}

/// sum_k |x_k - y_k|^p; comparisons run on these power sums and the
/// root is taken once at the end, so brute force and the pruned scan
/// produce bit-identical values.
inline double pair_power_sum(std::span<const double> x, std::span<const double> y,
                             double p) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += abs_power(x[k] - y[k], p);
    }
    return s;
}

inline double norm_from_power_sum(double s, double p) {
    if (p == 2.0) return std::sqrt(s);
    if (p == 1.0) return s;
    return std::pow(s, 1.0 / p);
}

} // namespace detail

inline double dist_p(std::span<const double> x, std::span<const double> y, double p = 2.0) {
    return detail::norm_from_power_sum(detail::pair_power_sum(x, y, p), p);
}

// ---------------------------------------------------------------------------
// Diameter and k largest distances
// ---------------------------------------------------------------------------

/// Exact maximum interpoint distance by the full O(n^2) pair scan.
/// Clouds with fewer than two points have diameter 0 by convention.
inline double diameter_brute(const PointSet& pts, double norm_p = 2.0) {
    const std::size_t n = pts.size();
    if (n < 2) {
        return 0.0;
    }
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto pi = pts.point(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            best = std::max(best, detail::pair_power_sum(pi, pts.point(j), norm_p));
        }
    }
    return detail::norm_from_power_sum(best, norm_p);
}

inline double diameter_brute(const PointCloud& cloud, double norm_p = 2.0) {
    return diameter_brute(cloud.points, norm_p);
}

struct TopKDistances {
    std::vector<double> values;   // descending
};

namespace detail {

/// Exact top-k pair distances via a pruned scan. Points are ranked by
/// their distance r_i from the bounding-box center; the triangle
/// inequality gives dist(i,j) <= r_i + r_j for any center, so once the
/// k-th best distance T is on the heap, every pair with
/// r_i + r_j <= T (1 - guard) can be skipped, and the descending-radius
/// order turns that into early loop exits. Worst case stays O(n^2),
/// but for pole-concentrated clouds only the extreme caps get scanned.
inline std::vector<double> top_k_power_sums(const PointSet& pts, std::size_t k,
                                            double norm_p) {
    const std::size_t n = pts.size();
    const std::size_t d = pts.dim;
    constexpr double kGuard = 1e-12;   // swallows rounding in the r_i + r_j bound

    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = pts.point(i);
        for (std::size_t c = 0; c < d; ++c) {
            lo[c] = std::min(lo[c], p[c]);
            hi[c] = std::max(hi[c], p[c]);
        }
    }
    std::vector<double> center(d);
    for (std::size_t c = 0; c < d; ++c) {
        center[c] = 0.5 * (lo[c] + hi[c]);
    }

    std::vector<double> radius(n);
    for (std::size_t i = 0; i < n; ++i) {
        radius[i] = dist_p(pts.point(i), center, norm_p);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return radius[a] > radius[b]; });

    // Min-heap of the k largest power sums seen so far.
    std::vector<double> heap;
    heap.reserve(k);
    double thresh_norm = -std::numeric_limits<double>::infinity();
    const auto offer = [&](double s) {
        if (heap.size() < k) {
            heap.push_back(s);
            std::push_heap(heap.begin(), heap.end(), std::greater<>{});
            if (heap.size() == k) {
                thresh_norm = norm_from_power_sum(heap.front(), norm_p) * (1.0 - kGuard);
            }
        } else if (s > heap.front()) {
            std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
            heap.back() = s;
            std::push_heap(heap.begin(), heap.end(), std::greater<>{});
            thresh_norm = norm_from_power_sum(heap.front(), norm_p) * (1.0 - kGuard);
        }
    };

    const bool euclid = norm_p == 2.0;
    for (std::size_t a = 0; a + 1 < n; ++a) {
        const std::size_t i = order[a];
        if (heap.size() == k && radius[i] + radius[order[a + 1]] <= thresh_norm) {
            break;
        }
        const auto pi = pts.point(i);
        const double* pi_data = pi.data();
        for (std::size_t b = a + 1; b < n; ++b) {
            const std::size_t j = order[b];
            if (heap.size() == k && radius[i] + radius[j] <= thresh_norm) {
                break;
            }
            if (euclid) {
                const double* pj = pts.point(j).data();
                double s = 0.0;
                for (std::size_t c = 0; c < d; ++c) {
                    const double t = pi_data[c] - pj[c];
                    s += t * t;
                }
                offer(s);
            } else {
                offer(pair_power_sum(pi, pts.point(j), norm_p));
            }
        }
    }

    std::sort(heap.begin(), heap.end(), std::greater<>{});
    return heap;
}

} // namespace detail

/// Same value as diameter_brute through the pruned scan.
inline double diameter_pruned(const PointSet& pts, double norm_p = 2.0) {
    if (pts.size() < 2) {
        return 0.0;
    }
    const auto best = detail::top_k_power_sums(pts, 1, norm_p);
    return detail::norm_from_power_sum(best.front(), norm_p);
}

inline double diameter_pruned(const PointCloud& cloud, double norm_p = 2.0) {
    return diameter_pruned(cloud.points, norm_p);
}

/// The k largest distances over unordered index pairs i < j, descending.
/// Ties are kept as separate entries.
inline TopKDistances k_largest(const PointSet& pts, std::size_t k, double norm_p = 2.0) {
    if (k < 1) {
        throw InvalidSpecError("k must be at least 1");
    }
    const std::size_t n = pts.size();
    if (n < 2 || n * (n - 1) / 2 < k) {
        throw NotEnoughPairsError("cloud has fewer than k point pairs");
    }
    TopKDistances top;
    top.values = detail::top_k_power_sums(pts, k, norm_p);
    for (double& v : top.values) {
        v = detail::norm_from_power_sum(v, norm_p);
    }
    return top;
}

inline TopKDistances k_largest(const PointCloud& cloud, std::size_t k, double norm_p = 2.0) {
    return k_largest(cloud.points, k, norm_p);
}

// ---------------------------------------------------------------------------
// Scaled statistics
// ---------------------------------------------------------------------------

/// Normalizing rate for the scaled statistic factor * (2a - diameter).
struct RateSpec {
    enum class Kind { Main, PearsonII, PNorm, MultiMajor };

    Kind kind = Kind::Main;
    int d = 2;
    double beta = 0.0;   // PearsonII, MultiMajor
    double p = 2.0;      // PNorm
    int e = 2;           // MultiMajor
    double two_a = 2.0;  // diameter of the underlying body

    static RateSpec main(int d, double two_a) { return {Kind::Main, d, 0.0, 2.0, 2, two_a}; }
    static RateSpec pearson(int d, double beta, double two_a) {
        return {Kind::PearsonII, d, beta, 2.0, 2, two_a};
    }
    static RateSpec pnorm(int d, double p, double two_a) {
        return {Kind::PNorm, d, 0.0, p, 2, two_a};
    }
    static RateSpec multi_major(int d, int e, double beta) {
        return {Kind::MultiMajor, d, beta, 2.0, e, 2.0};
    }
};

inline double rate_factor(const RateSpec& rate, double n) {
    switch (rate.kind) {
        case RateSpec::Kind::Main:
            return std::pow(n, 2.0 / (rate.d + 1));
        case RateSpec::Kind::PearsonII:
            return std::pow(n, 2.0 / (rate.d + 1 + 2.0 * rate.beta));
        case RateSpec::Kind::PNorm:
            return std::pow(n, rate.p / (rate.d + rate.p - 1.0));
        case RateSpec::Kind::MultiMajor:
            return multi_major_constants(rate.d, rate.e, rate.beta).bn(n);
    }
    return 0.0;
}

inline double scaled_statistic(double diam_value, double n, const RateSpec& rate) {
    return rate_factor(rate, n) * (rate.two_a - diam_value);
}

} // namespace diamlimit
