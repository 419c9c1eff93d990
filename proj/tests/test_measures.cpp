#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "singhyp/ergodic.hpp"
#include "singhyp/measures.hpp"

using namespace singhyp;
using doctest::Approx;

TEST_CASE("w1 closed forms on empirical pairs") {
    auto mu = Measure1D::empirical({0.0, 1.0});
    auto nu = Measure1D::empirical({0.5, 0.5});
    CHECK(w1_distance(mu, nu) == Approx(0.5).epsilon(1e-15));
    CHECK(w1_distance(mu, mu) == 0.0);
    CHECK(w1_distance(mu, nu) == w1_distance(nu, mu));
}

TEST_CASE("w1 between grid densities integrates the CDF gap") {
    std::vector<double> half(1024, 0.0);
    for (std::size_t i = 0; i < 512; ++i) half[i] = 2.0;
    auto a = Measure1D::lebesgue(1024);
    auto b = Measure1D::grid(std::move(half));
    CHECK(w1_distance(a, b) == Approx(0.25).epsilon(1e-13));
    CHECK(w1_distance(a, Measure1D::lebesgue(64)) == Approx(0.0).epsilon(1e-13));
}

TEST_CASE("w1 mixed empirical against Lebesgue") {
    auto mu = Measure1D::empirical({0.25, 0.75});
    // |step CDF - x| integrates to exactly 1/8.
    CHECK(w1_distance(mu, Measure1D::lebesgue(4)) == Approx(0.125).epsilon(1e-13));
}

TEST_CASE("w1 resamples unequal empirical counts by quantiles") {
    auto mu = Measure1D::empirical({0.0, 1.0});
    auto nu = Measure1D::empirical({0.5});
    CHECK(w1_distance(mu, nu) == Approx(0.5).epsilon(1e-13));
}

TEST_CASE("variation distance") {
    std::vector<double> half(64, 0.0);
    for (std::size_t i = 0; i < 32; ++i) half[i] = 2.0;
    CHECK(variation_distance(Measure1D::lebesgue(64), Measure1D::grid(half)) ==
          Approx(1.0).epsilon(1e-13));

    auto a = Measure1D::empirical({0.1, 0.2});
    auto b = Measure1D::empirical({0.8, 0.9});
    CHECK(variation_distance(a, b, 2) == Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(variation_distance(a, b), std::invalid_argument);
}

TEST_CASE("measure construction guards") {
    CHECK_THROWS_AS(Measure1D::grid({2.0, 2.0}), MassMismatch);
    CHECK_THROWS_AS(Measure1D::empirical({}), std::invalid_argument);
    CHECK_THROWS_AS(Measure1D::empirical({1.5}), std::invalid_argument);
}

TEST_CASE("pushforward of clouds and densities") {
    auto T = make_doubling();
    auto one = pushforward(T, Measure1D::empirical({0.3}), 1);
    CHECK(one.measure.samples()[0] == Approx(0.6).epsilon(1e-15));
    auto two = pushforward(T, Measure1D::empirical({0.3}), 2);
    CHECK(two.measure.samples()[0] == Approx(0.2).epsilon(1e-12));

    auto res = pushforward(T, Measure1D::lebesgue(128), 3);
    CHECK(variation_distance(res.measure, Measure1D::lebesgue(128)) ==
          Approx(0.0).epsilon(1e-12));

    auto nudged = pushforward(T, Measure1D::empirical({0.5}), 1);
    CHECK(nudged.nudges >= 1);
}

TEST_CASE("pushforward on the square") {
    auto F = make_affine_skew();
    Measure2D mu{{{0.3, 0.6}}};
    auto res = pushforward(F, mu, 1);
    CHECK(res.measure.pts[0].x == Approx(0.6).epsilon(1e-15));
    CHECK(res.measure.pts[0].y == Approx(0.2).epsilon(1e-15));
}

TEST_CASE("disintegration regroups the cloud exactly") {
    auto F = make_affine_skew();
    auto orbit = sample_orbit(F, 3, 0, 1000, 20000);
    Measure2D mu{orbit.pts};
    auto d = disintegrate(mu, 8);

    double mass = 0.0;
    for (double m : d.mass) mass += m;
    CHECK(mass == Approx(1.0).epsilon(1e-12));
    for (char c : d.defaulted) CHECK(c == 0); // the base orbit fills every strip

    Observable2D g;
    g.f = [](double x, double y) { return x + 2.0 * y * y; };
    CHECK(reassemble_integral(d, g) == Approx(integral(mu, g)).epsilon(1e-12));
}

TEST_CASE("empty strips fall back to Lebesgue and are flagged") {
    Measure2D mu{{{0.1, 0.5}, {0.2, 0.3}}};
    auto d = disintegrate(mu, 4);
    CHECK(d.mass[0] == Approx(1.0).epsilon(1e-15));
    CHECK(d.defaulted[0] == 0);
    CHECK(d.defaulted[2] == 1);
    CHECK(d.conditionals[2].kind() == Measure1D::Kind::Grid);
}

TEST_CASE("two-layer product bound") {
    auto F = make_affine_skew();
    auto o1 = sample_orbit(F, 3, 1, 1000, 4000);
    auto o2 = sample_orbit(F, 3, 2, 1000, 4000);
    Observable2D g;
    g.f = [](double x, double y) { return 0.5 * x + 0.25 * std::sin(3.0 * y); };
    g.sup_hint = 0.75;
    g.lip_y_hint = 0.75;
    auto rep = prod_inequality_check(Measure2D{o1.pts}, Measure2D{o2.pts}, g, 16);
    CHECK(rep.holds);
    CHECK(rep.lhs <= rep.bound + 1e-9);
}

TEST_CASE("marginal projection integrates fibers") {
    Observable2D f;
    f.f = [](double x, double y) { return x + y; };
    auto pf = project_pi(f, 64);
    CHECK(pf(0.3) == Approx(0.8).epsilon(1e-12)); // exact for fiberwise linear
    Observable2D fq;
    fq.f = [](double, double y) { return y * y; };
    CHECK(project_pi(fq, 2048)(0.5) == Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("quantile interpolation") {
    std::vector<double> s = {0.0, 0.5, 1.0};
    CHECK(empirical_quantile(s, 0.0) == 0.0);
    CHECK(empirical_quantile(s, 1.0) == 1.0);
    CHECK(empirical_quantile(s, 0.5) == Approx(0.5).epsilon(1e-15));
}
