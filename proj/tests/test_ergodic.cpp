#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "singhyp/ergodic.hpp"
#include "singhyp/experiments.hpp"
#include "singhyp/stats.hpp"

using namespace singhyp;
using doctest::Approx;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDimAffine = 1.6309297535714573; // 1 + log 2 / log 3
} // namespace

TEST_CASE("least squares line fit") {
    auto fit = least_squares({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
    CHECK(fit.slope == Approx(2.0).epsilon(1e-13));
    CHECK(fit.intercept == Approx(1.0).epsilon(1e-13));
    CHECK(fit.r2 == Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(least_squares({1.0}, {2.0}), DegenerateSeries);
    CHECK_THROWS_AS(least_squares({1.0, 1.0}, {2.0, 3.0}), DegenerateSeries);
}

TEST_CASE("censored medians treat misses as infinite") {
    CHECK(median_with_censoring({1.0, 2.0, 3.0}, 3) == 2.0);
    CHECK(median_with_censoring({1.0, 2.0, 3.0}, 4) == Approx(2.5).epsilon(1e-15));
    CHECK(median_with_censoring({1.0, 2.0}, 4) == kInf);
    CHECK(median_with_censoring({}, 2) == kInf);
    CHECK(median_with_censoring({5.0}, 1) == 5.0);
}

TEST_CASE("orbit samples are deterministic and in range") {
    auto F = make_affine_skew();
    auto a = sample_orbit(F, 9, 2, 100, 5000);
    auto b = sample_orbit(F, 9, 2, 100, 5000);
    auto c = sample_orbit(F, 9, 3, 100, 5000);
    REQUIRE(a.pts.size() == 5000);
    bool same = true, diff = false, in_range = true;
    for (std::size_t i = 0; i < a.pts.size(); ++i) {
        same = same && a.pts[i].x == b.pts[i].x && a.pts[i].y == b.pts[i].y;
        diff = diff || a.pts[i].x != c.pts[i].x;
        in_range = in_range && a.pts[i].x >= 0.0 && a.pts[i].x <= 1.0 &&
                   a.pts[i].y >= 0.0 && a.pts[i].y <= 1.0;
    }
    CHECK(same);
    CHECK(diff);
    CHECK(in_range);
}

TEST_CASE("orbit equidistributes over the base") {
    auto orbit = sample_orbit(make_affine_skew(), 4, 0, 1000, 200000);
    double mx = 0.0, my = 0.0;
    for (auto p : orbit.pts) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(orbit.pts.size());
    my /= static_cast<double>(orbit.pts.size());
    CHECK(mx == Approx(0.5).epsilon(0.02));
    CHECK(my == Approx(0.5).epsilon(0.02)); // attractor measure is symmetric
}

TEST_CASE("stationary correlations of sawtooth against sine") {
    auto orbit = sample_orbit(make_affine_skew(), 11, 0, 1000, 1000000);
    auto s = correlation_series(sawtooth_observable(), sine_observable(), orbit, 12);
    REQUIRE(s.corr.size() == 13);
    // |C_n| = 2^{-n} / (2 pi) for the doubling base.
    CHECK(s.corr[0] == Approx(1.0 / (2.0 * M_PI)).epsilon(0.02));
    CHECK(s.corr[1] == Approx(1.0 / (4.0 * M_PI)).epsilon(0.03));
    CHECK(s.rate == Approx(0.5).epsilon(0.1));
    CHECK(s.r2 > 0.95);
    CHECK(s.noise_floor > 0.0);
}

TEST_CASE("bump correlations on the contracting model decay") {
    auto F = make_lorenz_model({0.75, 2.0, 0.25});
    auto orbit = sample_orbit(F, 12, 0, 1000, 300000);
    auto s = correlation_series(bump_observable(), bump_observable(), orbit, 25);
    CHECK(s.corr[0] > 0.0);
    CHECK(s.rate > 0.0);
    CHECK(s.rate < 1.0);
}

TEST_CASE("hitting times on the interval") {
    auto T = make_doubling();
    CHECK(hitting_time(T, 0.3, 0.6, 0.01, 1000) == 1);
    CHECK_THROWS_AS(hitting_time(T, 0.3, 0.61, 0.001, 50), NotHit);
    CHECK_THROWS_AS(hitting_time(T, 0.3, 0.6, -1.0, 10), std::invalid_argument);
}

TEST_CASE("hitting times on the square") {
    auto F = make_affine_skew();
    Point2 start{0.3, 0.6};
    CHECK(hitting_time(F, start, F.eval(start), 1e-9, 10) == 1);

    auto stream = F.stream(13, 0);
    long long tau = hitting_time(*stream, Point2{0.5 - 1e-3, 0.25}, 0.05, 1000000, false);
    CHECK(tau >= 1);
}

TEST_CASE("hitting scaling on the doubling base") {
    auto F = make_affine_skew(); // base-only metric ignores the fiber
    auto rep = loglaw_exponent(F, true, {0.37, 0.5}, {0.125, 0.0625, 0.03125, 0.015625},
                               80, 1000000, 21, 2);
    CHECK(rep.kept_radii.size() == 4);
    CHECK(rep.slope == Approx(1.0).epsilon(0.2));
    CHECK(rep.r2 > 0.9);

    auto rerun = loglaw_exponent(F, true, {0.37, 0.5}, {0.125, 0.0625, 0.03125, 0.015625},
                                 80, 1000000, 21, 1);
    CHECK(rerun.slope == rep.slope); // worker count cannot change the result
}

TEST_CASE("all radii missing raises") {
    auto F = make_affine_skew();
    CHECK_THROWS_AS(
        loglaw_exponent(F, false, {0.37, 0.21}, {1e-5, 1e-6}, 12, 20, 5, 2),
        AllMissing);
}

TEST_CASE("local dimension of the affine skew") {
    auto F = make_affine_skew();
    auto orbit = sample_orbit(F, 6, 0, 1000, 1000000);
    auto rep = local_dimension(orbit, orbit.pts[500000], {0.0625, 0.03125, 0.015625, 0.0078125},
                               30);
    CHECK(rep.slope == Approx(kDimAffine).epsilon(0.15));
    CHECK(rep.radii_used.size() >= 2);
    CHECK_THROWS_AS(
        local_dimension(orbit, orbit.pts[1], {0.0625, 0.03125}, 2000000000ULL),
        SparseBall);
}

TEST_CASE("dimension formula is exact for constant log-rates") {
    auto F = make_affine_skew();
    auto orbit = sample_orbit(F, 5, 0, 100, 10000);
    auto rep = dimension_formula(F, orbit);
    CHECK(rep.psi_mean == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(rep.phi_mean == Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(rep.entropy == rep.psi_mean);
    CHECK(rep.dimension == Approx(kDimAffine).epsilon(1e-12));
}

TEST_CASE("dimension formula on the contracting model") {
    auto F = make_lorenz_model({0.75, 2.0, 0.25});
    auto orbit = sample_orbit(F, 5, 0, 1000, 200000);
    auto rep = dimension_formula(F, orbit);
    CHECK(rep.psi_mean > 0.4);
    CHECK(rep.psi_mean < 0.9);
    CHECK(rep.phi_mean > rep.psi_mean); // contraction beats expansion here
    CHECK(rep.dimension > 1.0);
    CHECK(rep.dimension < 2.0);
}

TEST_CASE("birkhoff health report") {
    auto F = make_affine_skew();
    auto orbit = sample_orbit(F, 5, 0, 1000, 100000);
    auto rep = integrability_report(F, orbit);
    // psi and phi are constant (log 2, log 3), so the drift is pure
    // accumulated rounding over 1e5 terms.
    CHECK(std::abs(rep.psi_drift) <= 1e-10);
    CHECK(std::abs(rep.phi_drift) <= 1e-10);
    CHECK_FALSE(rep.psi_heavy);
    CHECK_FALSE(rep.has_tau);

    std::function<double(Point2)> roof = [](Point2) { return 1.0; };
    auto with_roof = integrability_report(F, orbit, &roof);
    CHECK(with_roof.has_tau);
    CHECK(with_roof.tau_mean == Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(with_roof.tau_drift) <= 1e-14);
}
