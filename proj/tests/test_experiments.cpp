#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "diamlimit/experiments.hpp"
#include "support/oracles.hpp"

using namespace diamlimit;
using Catch::Approx;

namespace {

const std::vector<double> kEllipse{1.0, 0.5};

ConvergenceConfig small_convergence(CountMode mode, std::uint64_t seed) {
    ConvergenceConfig cfg;
    cfg.body = Ellipsoid{kEllipse};
    cfg.dist = UniformEllipsoidDist{};
    cfg.rate = RateSpec::main(2, 2.0);
    cfg.n = 300.0;
    cfg.reps = 2000;
    cfg.mode = mode;
    cfg.seed = seed;
    return cfg;
}

LimitRunConfig ellipse_limit(double b, std::uint64_t seed, std::size_t k = 1) {
    LimitRunConfig cfg;
    cfg.pair.left = TruncatedParaboloid{ellipsoid_polecap(kEllipse), b};
    cfg.pair.right = cfg.pair.left;
    cfg.pair.left_intensity = UniformDensity{2.0 / std::numbers::pi};
    cfg.pair.right_intensity = cfg.pair.left_intensity;
    cfg.pair.functional = PairFunctional::euclid(1.0);
    cfg.reps = 5000;
    cfg.k = k;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("ecdf evaluation is a right-continuous CDF") {
    const Ecdf e = Ecdf::from_samples({3.0, 1.0, 2.0, 2.0});
    REQUIRE(e.values == std::vector<double>{1.0, 2.0, 2.0, 3.0});
    REQUIRE(e.eval(0.5) == 0.0);
    REQUIRE(e.eval(1.0) == Approx(0.25));
    REQUIRE(e.eval(2.0) == Approx(0.75));   // counts both ties
    REQUIRE(e.eval(10.0) == 1.0);
    double prev = 0.0;
    for (double t = 0.0; t <= 4.0; t += 0.01) {
        REQUIRE(e.eval(t) >= prev);
        prev = e.eval(t);
    }
}

TEST_CASE("ks_distance hand values") {
    const Ecdf a = Ecdf::from_samples({0.0});
    const Ecdf b = Ecdf::from_samples({1.0});
    REQUIRE(ks_distance(a, a) == 0.0);
    REQUIRE(ks_distance(a, b) == Approx(1.0));
    const Ecdf c = Ecdf::from_samples({0.0, 1.0});
    const Ecdf d = Ecdf::from_samples({0.5});
    REQUIRE(ks_distance(c, d) == Approx(0.5));
}

TEST_CASE("ks_distance behaves like a metric on step functions") {
    RngStream rng(81, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> xs;
        std::vector<double> ys;
        std::vector<double> zs;
        for (int i = 0; i < 40; ++i) {
            xs.push_back(rng.uniform(-1.0, 1.0));
            ys.push_back(rng.uniform(-1.0, 2.0));
            zs.push_back(rng.uniform(-2.0, 1.0));
        }
        const Ecdf fx = Ecdf::from_samples(xs);
        const Ecdf fy = Ecdf::from_samples(ys);
        const Ecdf fz = Ecdf::from_samples(zs);
        const double dxy = ks_distance(fx, fy);
        const double dyx = ks_distance(fy, fx);
        REQUIRE(dxy == Approx(dyx));
        REQUIRE(ks_distance(fx, fx) == 0.0);
        REQUIRE(dxy <= ks_distance(fx, fz) + ks_distance(fz, fy) + 1e-12);
    }
}

TEST_CASE("dkw band halves when reps quadruple") {
    REQUIRE(dkw_band(2000) == Approx(dkw_band(1000) / std::sqrt(2.0)));
    REQUIRE(dkw_band(4000) == Approx(dkw_band(1000) / 2.0));
}

TEST_CASE("run_convergence basics and determinism") {
    ConvergenceConfig cfg = small_convergence(CountMode::Poissonized, 5);
    cfg.reps = 1;
    const auto single = run_convergence(cfg);
    REQUIRE(single.ecdfs.size() == 1);
    REQUIRE(single.ecdfs[0].count() == 1);

    cfg.reps = 200;
    cfg.threads = 1;
    const auto serial = run_convergence(cfg);
    cfg.threads = 2;
    const auto parallel = run_convergence(cfg);
    REQUIRE(serial.raw == parallel.raw);
    REQUIRE(serial.counts.min <= serial.counts.max);
    REQUIRE(serial.counts.mean == Approx(300.0).epsilon(0.05));
}

TEST_CASE("fixed and poissonized statistics are KS-close") {
    const auto poi = run_convergence(small_convergence(CountMode::Poissonized, 6));
    const auto fix = run_convergence(small_convergence(CountMode::Fixed, 7));
    REQUIRE(ks_distance(poi.ecdfs[0], fix.ecdfs[0]) <= 0.05);
}

TEST_CASE("run_limit ordering, determinism, and retry accounting") {
    LimitRunConfig cfg = ellipse_limit(10.0, 8, 3);
    cfg.reps = 1500;
    const auto result = run_limit(cfg);
    REQUIRE(result.ecdfs.size() == 3);
    REQUIRE(result.left_mass == Approx(18.9803344911247).epsilon(1e-9));
    // per replication t_1 <= t_2 <= t_3, so the marginal CDFs are ordered
    for (double t = 0.0; t <= 4.0; t += 0.25) {
        REQUIRE(result.ecdfs[0].eval(t) >= result.ecdfs[1].eval(t));
        REQUIRE(result.ecdfs[1].eval(t) >= result.ecdfs[2].eval(t));
    }
    REQUIRE(result.empty_retries == 0);   // mass ~ 19: empties are astronomically rare

    cfg.threads = 2;
    const auto again = run_limit(cfg);
    REQUIRE(again.raw == result.raw);

    // tiny mass forces empty realizations; they must be retried and counted
    LimitRunConfig tiny = ellipse_limit(0.05, 9, 1);
    tiny.reps = 200;
    const auto sparse = run_limit(tiny);
    REQUIRE(sparse.empty_retries > 0);
    REQUIRE(sparse.ecdfs[0].count() == 200);
}

TEST_CASE("truncation stability of the limit approximation") {
    const auto b10 = run_limit(ellipse_limit(10.0, 10));
    const auto b15 = run_limit(ellipse_limit(15.0, 11));
    REQUIRE(ks_distance(b10.ecdfs[0], b15.ecdfs[0]) <= 0.02);
}

TEST_CASE("lambda_0 limit run collapses to the uniform one") {
    LimitRunConfig uni = ellipse_limit(10.0, 12);
    LimitRunConfig lam = ellipse_limit(10.0, 13);
    lam.pair.left_intensity = LambdaBeta{2.0 / std::numbers::pi, 0.0, kEllipse};
    lam.pair.right_intensity = lam.pair.left_intensity;
    const auto a = run_limit(uni);
    const auto b = run_limit(lam);
    REQUIRE(a.left_mass == Approx(b.left_mass).epsilon(1e-12));
    REQUIRE(ks_distance(a.ecdfs[0], b.ecdfs[0]) <= 0.02);
}

TEST_CASE("run_bounds_check structure and determinism") {
    BoundsCheckConfig cfg;
    cfg.half_axes = {1.0, 1.0, 0.5};
    cfg.n = 500.0;
    cfg.reps = 200;
    cfg.seed = 14;
    const auto report = run_bounds_check(cfg);
    REQUIRE(report.entries.size() == 9);   // default G-quantile grid
    for (const auto& entry : report.entries) {
        REQUIRE(entry.lower <= entry.upper + 1e-12);
        REQUIRE(entry.band > 0.0);
        REQUIRE(entry.empirical >= 0.0);
        REQUIRE(entry.empirical <= 1.0);
    }
    const auto again = run_bounds_check(cfg);
    REQUIRE(again.ecdf.values == report.ecdf.values);

    BoundsCheckConfig bad = cfg;
    bad.half_axes = {1.0, 0.9, 0.5};
    REQUIRE_THROWS_AS(run_bounds_check(bad), InvalidSpecError);
    bad = cfg;
    bad.e = 3;
    REQUIRE_THROWS_AS(run_bounds_check(bad), InvalidSpecError);
}

TEST_CASE("bounds entries at t = 0") {
    const auto c = multi_major_constants(3, 2, 0.0);
    REQUIRE(c.G(0.0) == 0.0);
    BoundsCheckConfig cfg;
    cfg.half_axes = {1.0, 1.0, 0.5};
    cfg.n = 200.0;
    cfg.reps = 50;
    cfg.t_grid = {0.0};
    const auto report = run_bounds_check(cfg);
    REQUIRE(report.entries[0].lower == 0.0);
    REQUIRE(report.entries[0].upper == 0.0);
    REQUIRE(report.entries[0].empirical == 0.0);
    REQUIRE(report.entries[0].ok);
}

TEST_CASE("box_limit_measure agrees with an independent midpoint rule") {
    Box box;
    box.lo = {0.0, -1.0};
    box.hi = {2.0, 1.0};
    // uniform: area of B cap P(H) for the reference ellipse is 8/3
    const double uniform = box_limit_measure(kEllipse, box);
    REQUIRE(uniform == Approx(8.0 / 3.0).epsilon(1e-6));
    REQUIRE(oracles::box_measure_midpoint(kEllipse, box, std::nullopt, 4000) ==
            Approx(uniform).epsilon(1e-4));

    const double lam2 = box_limit_measure(kEllipse, box, 2.0);
    REQUIRE(lam2 == Approx(1024.0 / 105.0).epsilon(1e-6));   // hand integral
    REQUIRE(oracles::box_measure_midpoint(kEllipse, box, 2.0, 4000) ==
            Approx(lam2).epsilon(1e-4));

    Box outside;
    outside.lo = {-2.0, -1.0};
    outside.hi = {-0.5, 1.0};
    REQUIRE(box_limit_measure(kEllipse, outside) == 0.0);
}

TEST_CASE("run_scaling_map_check is deterministic and reports sane fields") {
    ScalingCheckConfig cfg;
    cfg.half_axes = kEllipse;
    cfg.dist = UniformEllipsoidDist{};
    cfg.n = 1e5;
    cfg.draws = 400000;
    cfg.seed = 15;
    const auto report = run_scaling_map_check(cfg);
    REQUIRE(report.draws == 400000);
    REQUIRE(report.limit ==
            Approx((2.0 / std::numbers::pi) * 8.0 / 3.0).epsilon(1e-5));
    REQUIRE(report.mc_sd > 0.0);
    const auto again = run_scaling_map_check(cfg);
    REQUIRE(again.hits == report.hits);

    // a box strictly left of the paraboloid support catches nothing
    ScalingCheckConfig off = cfg;
    off.draws = 100000;
    off.box.lo = {-3.0, -0.5};
    off.box.hi = {-1.0, 0.5};
    const auto miss = run_scaling_map_check(off);
    REQUIRE(miss.limit == 0.0);
    REQUIRE(miss.hits == 0);
}
