#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "diamlimit/constants.hpp"
#include "diamlimit/diameter.hpp"
#include "diamlimit/errors.hpp"
#include "diamlimit/geometry.hpp"
#include "diamlimit/limitlaw.hpp"
#include "diamlimit/sampling.hpp"

namespace diamlimit {

// ---------------------------------------------------------------------------
// Empirical distribution functions
// ---------------------------------------------------------------------------

struct Ecdf {
    std::vector<double> values;   // ascending

    static Ecdf from_samples(std::vector<double> samples) {
        std::sort(samples.begin(), samples.end());
        return Ecdf{std::move(samples)};
    }

    std::size_t count() const { return values.size(); }

    /// F(t) = #{v <= t} / count; right-continuous step function.
    double eval(double t) const {
        const auto it = std::upper_bound(values.begin(), values.end(), t);
        return static_cast<double>(it - values.begin()) /
               static_cast<double>(values.size());
    }
};

/// Exact sup-distance between two empirical CDFs, evaluated over the
/// merged jump set.
inline double ks_distance(const Ecdf& e1, const Ecdf& e2) {
    if (e1.count() == 0 || e2.count() == 0) {
        throw InvalidSpecError("ks_distance needs nonempty samples");
    }
    const auto& a = e1.values;
    const auto& b = e2.values;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double ks = 0.0;
    while (i < a.size() || j < b.size()) {
        const double v = (j >= b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        ks = std::max(ks, std::abs(static_cast<double>(i) / na -
                                   static_cast<double>(j) / nb));
    }
    return ks;
}

/// Half-width of the two-sided DKW confidence band at level 1 - alpha.
inline double dkw_band(std::size_t n, double alpha = 0.05) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// Deterministic parallel replication
// ---------------------------------------------------------------------------

/// Worker count: explicit request, else DIAMLIMIT_THREADS, else hardware.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("DIAMLIMIT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count). Results must be written into
/// index-addressed slots; the schedule then cannot affect the output.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    threads = std::min<std::size_t>(std::max(threads, 1), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                fn(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

} // namespace detail

// ---------------------------------------------------------------------------
// Convergence experiments (scaled statistics of simulated clouds)
// ---------------------------------------------------------------------------

struct ConvergenceConfig {
    BodySpec body;
    DistributionSpec dist;
    RateSpec rate;
    double n = 1000.0;
    std::size_t reps = 1000;
    CountMode mode = CountMode::Poissonized;
    double norm_p = 2.0;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    int threads = 0;
};

struct CountStats {
    double mean = 0.0;
    std::size_t min = 0;
    std::size_t max = 0;
};

struct ConvergenceResult {
    std::vector<Ecdf> ecdfs;              // one per top-k index
    std::vector<std::vector<double>> raw; // raw[i][rep], scaled statistics
    CountStats counts;
    double runtime_seconds = 0.0;
};

/// reps independent replications of the scaled diameter statistic.
/// Replication r draws everything from stream (seed, r), so the result
/// is a pure function of the config for any thread count.
inline ConvergenceResult run_convergence(const ConvergenceConfig& cfg) {
    if (cfg.reps < 1) {
        throw InvalidSpecError("need at least one replication");
    }
    detail::Stopwatch timer;
    ConvergenceResult result;
    result.raw.assign(cfg.k, std::vector<double>(cfg.reps, 0.0));
    std::vector<std::size_t> realized(cfg.reps, 0);

    parallel_for(cfg.reps, resolve_threads(cfg.threads), [&](std::size_t r) {
        RngStream rng(cfg.seed, r);
        const PointCloud cloud =
            sample_cloud(cfg.body, cfg.dist, static_cast<std::size_t>(cfg.n), cfg.mode,
                         rng, cfg.seed);
        realized[r] = cloud.size();
        if (cfg.k == 1) {
            const double diam = diameter_pruned(cloud, cfg.norm_p);
            result.raw[0][r] = scaled_statistic(diam, cfg.n, cfg.rate);
        } else {
            const TopKDistances top = k_largest(cloud, cfg.k, cfg.norm_p);
            for (std::size_t i = 0; i < cfg.k; ++i) {
                result.raw[i][r] = scaled_statistic(top.values[i], cfg.n, cfg.rate);
            }
        }
    });

    result.counts.min = *std::min_element(realized.begin(), realized.end());
    result.counts.max = *std::max_element(realized.begin(), realized.end());
    double sum = 0.0;
    for (std::size_t c : realized) {
        sum += static_cast<double>(c);
    }
    result.counts.mean = sum / static_cast<double>(cfg.reps);
    result.ecdfs.reserve(cfg.k);
    for (const auto& column : result.raw) {
        result.ecdfs.push_back(Ecdf::from_samples(column));
    }
    result.runtime_seconds = timer.seconds();
    return result;
}

// ---------------------------------------------------------------------------
// Limit-law approximation runs
// ---------------------------------------------------------------------------

struct LimitRunConfig {
    PolePairConfig pair;
    std::size_t reps = 1000;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    int threads = 0;
};

struct LimitRunResult {
    std::vector<Ecdf> ecdfs;              // one per t-index
    std::vector<std::vector<double>> raw; // raw[i][rep]
    double left_mass = 0.0;
    double right_mass = 0.0;
    std::size_t empty_retries = 0;
    double runtime_seconds = 0.0;
};

/// reps independent draws of (t_1, ..., t_k) from the truncated limit
/// processes; one ECDF per index.
inline LimitRunResult run_limit(const LimitRunConfig& cfg) {
    if (cfg.reps < 1) {
        throw InvalidSpecError("need at least one replication");
    }
    detail::Stopwatch timer;
    LimitRunResult result;
    result.left_mass = paraboloid_mass(cfg.pair.left, cfg.pair.left_intensity);
    result.right_mass = paraboloid_mass(cfg.pair.right, cfg.pair.right_intensity);
    result.raw.assign(cfg.k, std::vector<double>(cfg.reps, 0.0));
    std::atomic<std::size_t> retries{0};

    parallel_for(cfg.reps, resolve_threads(cfg.threads), [&](std::size_t r) {
        RngStream rng(cfg.seed, r);
        std::size_t local = 0;
        const LimitSample sample = sample_pole_pair(cfg.pair, cfg.k, rng, &local);
        retries.fetch_add(local);
        for (std::size_t i = 0; i < cfg.k; ++i) {
            result.raw[i][r] = sample.t_values[i];
        }
    });

    result.empty_retries = retries.load();
    result.ecdfs.reserve(cfg.k);
    for (const auto& column : result.raw) {
        result.ecdfs.push_back(Ecdf::from_samples(column));
    }
    result.runtime_seconds = timer.seconds();
    return result;
}

// ---------------------------------------------------------------------------
// Bounding-distribution checks for ellipsoids with several major axes
// ---------------------------------------------------------------------------

struct BoundsCheckConfig {
    int d = 3;
    int e = 2;
    double beta = 0.0;
    std::vector<double> half_axes;   // a_1 = ... = a_e = 1 > a_{e+1} >= ...
    double n = 10000.0;
    std::size_t reps = 2000;
    std::vector<double> t_grid;      // empty: G-quantiles 0.1 .. 0.9
    std::uint64_t seed = 0;
    int threads = 0;
};

struct BoundsBandEntry {
    double t = 0.0;
    double lower = 0.0;       // G(t)
    double upper = 0.0;       // G(t / (1 - a_{e+1}^2))
    double band = 0.0;        // 3-sigma binomial half-width
    double empirical = 0.0;   // empirical CDF of b_n (2 - M_n) at t
    bool ok = false;
};

struct BoundsCheckReport {
    MultiMajorConstants constants;
    Ecdf ecdf;
    std::vector<BoundsBandEntry> entries;
    bool all_ok = true;
    double runtime_seconds = 0.0;
};

/// Empirical CDF of b_n (2 - M_n) for fixed-n Pearson samples, compared
/// pointwise against the band [G(t), G(t / (1 - a_{e+1}^2))] widened by
/// the 3-sigma binomial error of the replication count.
inline BoundsCheckReport run_bounds_check(const BoundsCheckConfig& cfg) {
    if (std::cmp_not_equal(cfg.half_axes.size(), cfg.d)) {
        throw DimensionMismatchError("half-axes must have length d");
    }
    for (int j = 0; j < cfg.e; ++j) {
        if (std::abs(cfg.half_axes[static_cast<std::size_t>(j)] - 1.0) > 1e-12) {
            throw InvalidSpecError("the first e half-axes must equal 1");
        }
    }
    const double a_next = cfg.half_axes[static_cast<std::size_t>(cfg.e)];
    if (!(a_next < 1.0)) {
        throw InvalidSpecError("a_{e+1} must be strictly smaller than 1");
    }
    detail::Stopwatch timer;
    BoundsCheckReport report;
    report.constants = multi_major_constants(cfg.d, cfg.e, cfg.beta);

    const double bn = report.constants.bn(cfg.n);
    std::vector<double> stats(cfg.reps, 0.0);
    parallel_for(cfg.reps, resolve_threads(cfg.threads), [&](std::size_t r) {
        RngStream rng(cfg.seed, r);
        const PointCloud cloud = sample_pearson2(
            cfg.half_axes, cfg.beta, static_cast<std::size_t>(cfg.n), rng);
        stats[r] = bn * (2.0 - diameter_pruned(cloud));
    });
    report.ecdf = Ecdf::from_samples(std::move(stats));

    std::vector<double> grid = cfg.t_grid;
    if (grid.empty()) {
        for (int q = 1; q <= 9; ++q) {
            grid.push_back(report.constants.G_inverse(0.1 * q));
        }
    }
    const double shrink = 1.0 - a_next * a_next;
    for (double t : grid) {
        BoundsBandEntry entry;
        entry.t = t;
        entry.lower = report.constants.G(t);
        entry.upper = report.constants.G(t / shrink);
        const double var = std::max(entry.lower * (1.0 - entry.lower),
                                    entry.upper * (1.0 - entry.upper));
        entry.band = 3.0 * std::sqrt(var / static_cast<double>(cfg.reps));
        entry.empirical = report.ecdf.eval(t);
        entry.ok = entry.empirical >= entry.lower - entry.band &&
                   entry.empirical <= entry.upper + entry.band;
        report.all_ok = report.all_ok && entry.ok;
        report.entries.push_back(entry);
    }
    report.runtime_seconds = timer.seconds();
    return report;
}

// ---------------------------------------------------------------------------
// Scaling-map (kappa_n limit) checks
// ---------------------------------------------------------------------------

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    bool contains(std::span<const double> z) const {
        for (std::size_t j = 0; j < lo.size(); ++j) {
            if (z[j] < lo[j] || z[j] > hi[j]) {
                return false;
            }
        }
        return true;
    }
};

/// Limit measure of box B under the ellipsoid-form paraboloid:
/// m_d(B intersect P(H)) for the uniform case, Lambda_beta(B) otherwise.
/// The z1 direction integrates in closed form; the remaining d-1
/// coordinates use iterated Simpson quadrature.
inline double box_limit_measure(std::span<const double> half_axes, const Box& box,
                                std::optional<double> beta = std::nullopt,
                                int panels = 4096) {
    const std::size_t d = half_axes.size();
    if (box.lo.size() != d || box.hi.size() != d) {
        throw DimensionMismatchError("box dimension does not match half-axes");
    }
    const double a1 = half_axes[0];
    const double z1_hi = box.hi[0];
    const double z1_lo = std::max(box.lo[0], 0.0);
    if (z1_hi <= z1_lo) {
        return 0.0;
    }

    // Integrand over the cross coordinates: closed-form z1 integral of
    // 1 (uniform) or (2 z1/a1 - S)^beta with S = sum (z_k/a_k)^2.
    std::vector<double> zt(d - 1, 0.0);
    const auto slab = [&]() {
        double s = 0.0;
        for (std::size_t k = 0; k < d - 1; ++k) {
            const double t = zt[k] / half_axes[k + 1];
            s += t * t;
        }
        const double z1_min = std::max(z1_lo, 0.5 * a1 * s);
        if (z1_min >= z1_hi) {
            return 0.0;
        }
        if (!beta) {
            return z1_hi - z1_min;
        }
        const double bpow = *beta + 1.0;
        const double top = std::pow(2.0 * z1_hi / a1 - s, bpow);
        const double bottom = std::pow(std::max(2.0 * z1_min / a1 - s, 0.0), bpow);
        return 0.5 * a1 * (top - bottom) / bpow;
    };

    // Iterated composite Simpson over the d-1 cross coordinates.
    const auto integrate = [&](const auto& self, std::size_t axis) -> double {
        if (axis == d - 1) {
            return slab();
        }
        const double lo = box.lo[axis + 1];
        const double hi = box.hi[axis + 1];
        if (hi <= lo) {
            return 0.0;
        }
        const int n = panels;   // even
        const double h = (hi - lo) / n;
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            zt[axis] = lo + h * i;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * self(self, axis + 1);
        }
        return acc * h / 3.0;
    };
    return integrate(integrate, 0);
}

struct ScalingCheckConfig {
    std::vector<double> half_axes;
    DistributionSpec dist;   // uniform or Pearson II
    double n = 1e5;
    std::size_t draws = 2'000'000;
    Box box;                 // defaults to [0,2] x [-1,1]^{d-1}
    std::uint64_t seed = 0;
    int threads = 0;
};

struct ScalingCheckReport {
    double estimate = 0.0;     // n * fraction of draws mapped into the box
    double limit = 0.0;        // p m_d(B cap P(H)) or alpha Lambda_beta(B)
    double mc_sd = 0.0;
    std::size_t hits = 0;
    std::size_t draws = 0;
    bool within_3sigma = false;
    double runtime_seconds = 0.0;
};

/// Monte Carlo check of the kappa_n convergence: draw body samples,
/// shift the left pole cap to the origin frame, apply the scaling map
/// T_n(z) = (n^{2 nu} z1, n^{nu} zt), and compare n * P(T_n(V) in B)
/// with the limit measure of B.
inline ScalingCheckReport run_scaling_map_check(const ScalingCheckConfig& cfg) {
    const std::size_t d = cfg.half_axes.size();
    validate_axes(cfg.half_axes, /*require_unique_major=*/true);
    const bool pearson = std::holds_alternative<PearsonIIDist>(cfg.dist);
    if (!pearson && !std::holds_alternative<UniformEllipsoidDist>(cfg.dist)) {
        throw InvalidSpecError("scaling-map check supports uniform and Pearson only");
    }
    const double beta = pearson ? std::get<PearsonIIDist>(cfg.dist).beta : 0.0;
    const double nu = 1.0 / (d + 1 + (pearson ? 2.0 * beta : 0.0));

    Box box = cfg.box;
    if (box.lo.empty()) {
        box.lo.assign(d, -1.0);
        box.hi.assign(d, 1.0);
        box.lo[0] = 0.0;
        box.hi[0] = 2.0;
    }

    detail::Stopwatch timer;
    const int threads = resolve_threads(cfg.threads);
    const std::size_t chunks = std::max<std::size_t>(64, static_cast<std::size_t>(threads));
    const std::size_t per_chunk = (cfg.draws + chunks - 1) / chunks;
    std::vector<std::size_t> chunk_hits(chunks, 0);
    std::vector<std::size_t> chunk_draws(chunks, 0);

    const double pow1 = std::pow(cfg.n, 2.0 * nu);
    const double pow2 = std::pow(cfg.n, nu);
    parallel_for(chunks, threads, [&](std::size_t c) {
        RngStream rng(cfg.seed, c);
        const std::size_t todo =
            std::min(per_chunk, cfg.draws - std::min(cfg.draws, c * per_chunk));
        std::vector<double> mapped(d);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < todo; ++i) {
            const PointCloud one =
                pearson ? sample_pearson2(cfg.half_axes, beta, 1, rng)
                        : sample_uniform_ellipsoid(cfg.half_axes, 1, rng);
            const auto z = one.point(0);
            mapped[0] = pow1 * (cfg.half_axes[0] + z[0]);
            for (std::size_t k = 1; k < d; ++k) {
                mapped[k] = pow2 * z[k];
            }
            if (box.contains(mapped)) {
                ++hits;
            }
        }
        chunk_hits[c] = hits;
        chunk_draws[c] = todo;
    });

    ScalingCheckReport report;
    for (std::size_t c = 0; c < chunks; ++c) {
        report.hits += chunk_hits[c];
        report.draws += chunk_draws[c];
    }
    const double q = static_cast<double>(report.hits) / static_cast<double>(report.draws);
    report.estimate = cfg.n * q;
    report.mc_sd = cfg.n * std::sqrt(q * (1.0 - q) / static_cast<double>(report.draws));
    const double density = pearson
                               ? pearson2_constant(beta, cfg.half_axes)
                               : 1.0 / ellipsoid_volume(cfg.half_axes);
    const double measure =
        box_limit_measure(cfg.half_axes, box,
                          pearson ? std::optional<double>(beta) : std::nullopt);
    report.limit = density * measure;
    report.within_3sigma = std::abs(report.estimate - report.limit) <= 3.0 * report.mc_sd;
    report.runtime_seconds = timer.seconds();
    return report;
}

} // namespace diamlimit
