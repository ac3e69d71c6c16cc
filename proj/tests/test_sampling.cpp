#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "diamlimit/sampling.hpp"
#include "support/oracles.hpp"

using namespace diamlimit;
using Catch::Approx;

namespace {

const std::vector<double> kEllipse{1.0, 0.5};

double normalized_radius(std::span<const double> z, const std::vector<double>& axes) {
    double q = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double t = z[j] / axes[j];
        q += t * t;
    }
    return std::sqrt(q);
}

std::vector<double> radius_marginal(const PointSet& pts,
                                    const std::vector<double>& axes) {
    std::vector<double> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.push_back(normalized_radius(pts.point(i), axes));
    }
    return out;
}

std::vector<double> radius_marginal(const PointCloud& cloud,
                                    const std::vector<double>& axes) {
    return radius_marginal(cloud.points, axes);
}

} // namespace

TEST_CASE("uniform ellipsoid sampler basics") {
    RngStream rng(31, 0);
    REQUIRE(sample_uniform_ellipsoid(kEllipse, 0, rng).size() == 0);

    const auto cloud = sample_uniform_ellipsoid(kEllipse, 100000, rng);
    std::size_t positive = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        REQUIRE(contains(cloud.body, cloud.point(i)));
        positive += cloud.point(i)[0] > 0.0 ? 1 : 0;
    }
    const double frac = static_cast<double>(positive) / static_cast<double>(cloud.size());
    REQUIRE(std::abs(frac - 0.5) < 3.0 * std::sqrt(0.25 / 1e5));
}

TEST_CASE("uniform ellipsoid matches the box-rejection oracle") {
    RngStream rng(32, 0);
    RngStream rng_oracle(32, 1);
    const auto direct = sample_uniform_ellipsoid(kEllipse, 100000, rng);
    const auto oracle = oracles::reject_uniform_ellipsoid(kEllipse, 100000, rng_oracle);
    REQUIRE(oracles::ks_raw(oracles::marginal(direct, 0), oracles::marginal(oracle, 0)) <=
            0.01);
    REQUIRE(oracles::ks_raw(oracles::marginal(direct, 1), oracles::marginal(oracle, 1)) <=
            0.01);
}

TEST_CASE("pearson beta = 0 reduces to the uniform law") {
    RngStream rng_a(33, 0);
    RngStream rng_b(33, 1);
    const auto pearson = sample_pearson2(kEllipse, 0.0, 100000, rng_a);
    const auto uniform = sample_uniform_ellipsoid(kEllipse, 100000, rng_b);
    REQUIRE(oracles::ks_raw(radius_marginal(pearson, kEllipse),
                            radius_marginal(uniform, kEllipse)) <= 0.01);
}

TEST_CASE("pearson beta = 2 squared-radius moment") {
    RngStream rng(34, 0);
    const auto cloud = sample_pearson2(kEllipse, 2.0, 100000, rng);
    double sum = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double r = normalized_radius(cloud.point(i), kEllipse);
        sum += r * r;
    }
    const double mean = sum / static_cast<double>(cloud.size());
    // R^2 ~ Beta(1, 3): mean 1/4, var 3/80
    REQUIRE(std::abs(mean - 0.25) < 3.0 * std::sqrt(0.0375 / 1e5));
}

TEST_CASE("pearson beta = -0.5 is finite, interior, and oracle-close") {
    const std::vector<double> axes{1.0, 0.5, 0.5};
    RngStream rng(35, 0);
    RngStream rng_oracle(35, 1);
    const std::size_t n = 20000;
    const auto direct = sample_pearson2(axes, -0.5, n, rng);
    for (std::size_t i = 0; i < direct.size(); ++i) {
        const auto z = direct.point(i);
        for (double v : z) {
            REQUIRE(std::isfinite(v));
        }
        REQUIRE(normalized_radius(z, axes) < 1.0);
    }
    const auto oracle = oracles::reject_pearson2(axes, -0.5, n, rng_oracle);
    REQUIRE(oracles::ks_raw(radius_marginal(direct, axes),
                            radius_marginal(oracle, axes)) <= 0.02);
}

TEST_CASE("p-superellipsoid at p = 2 agrees with the ellipsoid sampler") {
    RngStream rng_a(36, 0);
    RngStream rng_b(36, 1);
    const auto super = sample_uniform_psuperellipsoid(kEllipse, 2.0, 100000, rng_a);
    const auto uniform = sample_uniform_ellipsoid(kEllipse, 100000, rng_b);
    REQUIRE(oracles::ks_raw(oracles::marginal(super, 0), oracles::marginal(uniform, 0)) <=
            0.01);
    REQUIRE(oracles::ks_raw(oracles::marginal(super, 1), oracles::marginal(uniform, 1)) <=
            0.01);
}

TEST_CASE("p = 1 cross-polytope membership and symmetry") {
    const std::vector<double> axes{1.0, 1.0};
    RngStream rng(37, 0);
    const auto cloud = sample_uniform_psuperellipsoid(axes, 1.0, 100000, rng);
    std::size_t quadrant = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto z = cloud.point(i);
        REQUIRE(std::abs(z[0]) + std::abs(z[1]) <= 1.0 + 1e-9);
        quadrant += (z[0] > 0.0 && z[1] > 0.0) ? 1 : 0;
    }
    const double frac = static_cast<double>(quadrant) / static_cast<double>(cloud.size());
    REQUIRE(std::abs(frac - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / 1e5));
}

TEST_CASE("p = 4 matches the box-rejection oracle") {
    RngStream rng(38, 0);
    RngStream rng_oracle(38, 1);
    const auto direct = sample_uniform_psuperellipsoid(kEllipse, 4.0, 100000, rng);
    const auto oracle = oracles::reject_uniform_psuper(kEllipse, 4.0, 100000, rng_oracle);
    REQUIRE(oracles::ks_raw(oracles::marginal(direct, 0), oracles::marginal(oracle, 0)) <=
            0.01);
}

TEST_CASE("poissonized_count moments") {
    RngStream rng(39, 0);
    const int n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(poissonized_count(1000.0, rng));
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    REQUIRE(mean > 996.8);
    REQUIRE(mean < 1003.2);
    REQUIRE(var / mean > 0.97);
    REQUIRE(var / mean < 1.03);
    REQUIRE(poissonized_count(1.0, rng) >= 0);
    REQUIRE_THROWS_AS(poissonized_count(0.0, rng), InvalidSpecError);
}

TEST_CASE("identical seeds give bitwise identical clouds") {
    for (int variant = 0; variant < 3; ++variant) {
        RngStream a(77, 5);
        RngStream b(77, 5);
        PointCloud ca;
        PointCloud cb;
        switch (variant) {
            case 0:
                ca = sample_uniform_ellipsoid(kEllipse, 500, a);
                cb = sample_uniform_ellipsoid(kEllipse, 500, b);
                break;
            case 1:
                ca = sample_pearson2(kEllipse, -0.5, 500, a);
                cb = sample_pearson2(kEllipse, -0.5, 500, b);
                break;
            default:
                ca = sample_uniform_psuperellipsoid(kEllipse, 1.5, 500, a);
                cb = sample_uniform_psuperellipsoid(kEllipse, 1.5, 500, b);
                break;
        }
        REQUIRE(ca.points.coords == cb.points.coords);
    }
}

TEST_CASE("sample_cloud honors the count mode") {
    RngStream rng(40, 0);
    const BodySpec body = Ellipsoid{kEllipse};
    const auto fixed = sample_cloud(body, UniformEllipsoidDist{}, 123, CountMode::Fixed,
                                    rng, 40);
    REQUIRE(fixed.size() == 123);
    REQUIRE(fixed.mode == CountMode::Fixed);

    std::size_t differing = 0;
    for (int i = 0; i < 10; ++i) {
        RngStream r(41, static_cast<std::uint64_t>(i));
        const auto poi = sample_cloud(body, UniformEllipsoidDist{}, 123,
                                      CountMode::Poissonized, r, 41);
        differing += poi.size() != 123 ? 1 : 0;
    }
    REQUIRE(differing > 0);

    RngStream r(42, 0);
    REQUIRE_THROWS_AS(
        sample_cloud(body, PearsonIIDist{-1.5}, 10, CountMode::Fixed, r, 42),
        BetaOutOfRangeError);
}
