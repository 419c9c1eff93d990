#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "singhyp/norms.hpp"

using namespace singhyp;
using doctest::Approx;

namespace {
const Observable1D kId{[](double x) { return x; }, {}, true};
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

TEST_CASE("universal p-variation exact on tagged observables") {
    for (double p : {1.0, 2.0, 3.0}) {
        auto rep = universal_p_variation(kId, p);
        CHECK(rep.value == Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(rep.is_lower_bound);
    }

    Observable1D hump{[](double x) { return x * (1.0 - x); }, {0.5}, false};
    CHECK(universal_p_variation(hump, 1.0).value == Approx(0.5).epsilon(1e-12));
    // Two monotone runs of height 1/4: (2 * (1/4)^2)^{1/2}.
    CHECK(universal_p_variation(hump, 2.0).value ==
          Approx(0.25 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("universal variation lower bound catches jumps") {
    Observable1D step{[](double x) { return x < 0.5 ? 0.0 : 1.0; }, {}, false};
    auto rep = universal_p_variation(step, 1.0, 4096);
    CHECK(rep.value == Approx(1.0).epsilon(1e-12));
    CHECK(rep.is_lower_bound);
}

TEST_CASE("oscillation over balls") {
    CHECK(oscillation(kId, 0.1, 0.5) == Approx(0.2).epsilon(1e-12));
    CHECK(oscillation(kId, 0.1, 0.0) == Approx(0.1).epsilon(1e-12));
    CHECK(oscillation(kId, 0.1, 1.0) == Approx(0.1).epsilon(1e-12));
}

TEST_CASE("oscillation radii are validated") {
    CHECK_THROWS_AS(osc_profile(kId, {0.6}, 1.0), InvalidEpsilon);
    CHECK_THROWS_AS(osc_profile(kId, {0.0}, 1.0), InvalidEpsilon);
    CHECK_THROWS_AS(osc_profile(kId, {-0.1}, 1.0), InvalidEpsilon);
}

TEST_CASE("graded variation of the identity") {
    auto radii = default_radii();
    // eps^{-1} * integral of osc(id, eps) = 2 - eps; the ladder bottoms out
    // near 1e-3, so the supremum estimate sits just under 2.
    CHECK(var_p_r(kId, 1.0, 1.0, radii) == Approx(2.0).epsilon(0.01));
    // r = 0 keeps the raw L1 oscillation mass; largest radius dominates.
    CHECK(var_p_r(kId, 1.0, 0.0, radii) == Approx(0.75).epsilon(0.01));
}

TEST_CASE("default radius ladder") {
    auto radii = default_radii();
    REQUIRE(radii.size() >= 2);
    CHECK(radii.front() == 0.5);
    // The ladder halves while staying at or above min_eps.
    CHECK(radii.back() >= 1e-3);
    CHECK(radii.back() < 2e-3);
    for (std::size_t i = 1; i < radii.size(); ++i)
        CHECK(radii[i] == Approx(0.5 * radii[i - 1]).epsilon(1e-15));
}

TEST_CASE("comparison chain holds on tagged observables") {
    auto radii = default_radii();
    Observable1D zig{[](double x) { return std::abs(x - 0.3) - std::abs(x - 0.7); },
                     {0.3, 0.7},
                     false};
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        auto chain = compare_variations(zig, p, radii, 256, 128);
        CHECK(chain.holds);
        CHECK(chain.var_1r <= chain.var_pr + 1e-9);
        CHECK(chain.var_pr <= std::pow(2.0, 1.0 / p) * chain.var_p + 1e-9);
    }
}

TEST_CASE("sup norm embedding into the graded norm") {
    auto radii = default_radii();
    for (double r : {0.0, 0.5, 1.0}) {
        double lhs = lp_norm(kId, kInf);
        double rhs = std::pow(kOscRadiusCap, r - 1.0) * norm_p_r(kId, 1.0, r, radii);
        CHECK(lhs <= rhs + 1e-9);
    }
    CHECK(lp_norm(kId, kInf) == Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(kId, 1.0) == Approx(0.5).epsilon(1e-6));
    CHECK(lp_norm(kId, 2.0) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("horizontal variation picks the worst fiber per pair") {
    Observable2D fx;
    fx.f = [](double x, double) { return x; };
    CHECK(horizontal_variation(fx) == Approx(1.0).epsilon(1e-12));

    Observable2D fy;
    fy.f = [](double, double y) { return y; };
    CHECK(horizontal_variation(fy) == Approx(0.0).epsilon(1e-15));

    Observable2D jump;
    jump.f = [](double x, double) { return x < 0.5 ? 0.0 : 1.0; };
    CHECK(horizontal_variation(jump) == Approx(1.0).epsilon(1e-12));

    Observable2D wedge; // jump visible only near y = 1
    wedge.f = [](double x, double y) { return x < 0.5 ? 0.0 : y; };
    CHECK(horizontal_variation(wedge) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vertical lip norm is sup plus fiber slope") {
    Observable2D f;
    f.f = [](double x, double y) { return x + 0.5 * y; };
    CHECK(vertical_lip_norm(f) == Approx(2.0).epsilon(1e-9));
    f.sup_hint = 1.5;
    f.lip_y_hint = 0.5;
    CHECK(vertical_lip_norm(f) == 2.0);
}
