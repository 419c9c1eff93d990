#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "singhyp/flow.hpp"

using namespace singhyp;
using doctest::Approx;

namespace {
const SingularityParams kSp{1.0, -2.0, -0.75};
} // namespace

TEST_CASE("linearized flow frozen values") {
    auto p = linear_flow(kSp, {1.0, 1.0, 1.0}, std::log(2.0));
    CHECK(p[0] == Approx(2.0).epsilon(1e-14));
    CHECK(p[1] == Approx(0.25).epsilon(1e-14));
    CHECK(p[2] == Approx(0.5946035575013605).epsilon(1e-14)); // 2^{-3/4}

    auto q = linear_flow(kSp, {0.3, -0.2, 0.7}, 0.0);
    CHECK(q[0] == 0.3);
    CHECK(q[1] == -0.2);
    CHECK(q[2] == 0.7);
}

TEST_CASE("saddle rates are validated") {
    CHECK(kSp.alpha() == Approx(0.75).epsilon(1e-15));
    CHECK(kSp.beta() == Approx(2.0).epsilon(1e-15));
    // l2 < l3 ordering violated
    CHECK_THROWS_AS(singular_return({1.0, -0.5, -2.0}, 0.5, 0.5), InvalidParams);
    // weak contraction stronger than the expansion
    CHECK_THROWS_AS(singular_return({1.0, -3.0, -1.5}, 0.5, 0.5), InvalidParams);
    // no expansion at all
    CHECK_THROWS_AS(singular_return({-1.0, -3.0, -0.5}, 0.5, 0.5), InvalidParams);
}

TEST_CASE("singular return map frozen values") {
    auto ret = singular_return(kSp, 0.25, 0.1);
    CHECK(ret.u == Approx(0.00625).epsilon(1e-14));      // x2 |x1|^beta
    CHECK(ret.v == Approx(0.3535533905932738).epsilon(1e-14)); // |x1|^alpha
    CHECK(ret.side == 1);

    auto neg = singular_return(kSp, -0.25, 0.1);
    CHECK(neg.u == Approx(0.00625).epsilon(1e-14));
    CHECK(neg.side == -1);

    CHECK_THROWS_AS(singular_return(kSp, 0.0, 0.5), OnStableManifold);
    CHECK_THROWS_AS(singular_return(kSp, 1.5, 0.5), std::invalid_argument);

    CHECK(singular_return_time(kSp, 0.1) == Approx(2.3025850929940455).epsilon(1e-14));
    CHECK_THROWS_AS(singular_return_time(kSp, 0.0), OnStableManifold);
}

TEST_CASE("passage-time integral matches the closed form") {
    CHECK(return_time_integral_closed(kSp, 0.1) ==
          Approx(0.6605170185988092).epsilon(1e-15));
    CHECK(std::abs(return_time_integral(kSp, 0.1) -
                   return_time_integral_closed(kSp, 0.1)) <= 1e-10);
    CHECK(std::abs(return_time_integral(kSp, 1.0) -
                   return_time_integral_closed(kSp, 1.0)) <= 1e-10);
    CHECK_THROWS_AS(return_time_integral(kSp, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(return_time_integral(kSp, 1.5), std::invalid_argument);
}

TEST_CASE("roof factories") {
    auto S = make_constant_roof(make_affine_skew(), 1.0);
    CHECK(S.roof_floor == 1.0);
    CHECK(S.roof_at({0.3, 0.6}) == 1.0);
    CHECK_FALSE(S.params.has_value());
    CHECK_THROWS_AS(make_constant_roof(make_affine_skew(), 0.0), InvalidParams);

    auto L = make_lorenz_roof(kSp, make_lorenz_model({0.75, 2.0, 0.25}), 1.0);
    CHECK(L.roof_floor == Approx(1.6931471805599454).epsilon(1e-14)); // tau0 + log 2
    CHECK(L.roof_at({0.3, 0.5}) == Approx(2.6094379124341005).epsilon(1e-14));
    CHECK(L.roof_at({0.5 + 1e-9, 0.5}) > 20.0);
    REQUIRE(L.params.has_value());
    CHECK(L.params->l1 == 1.0);
    CHECK_THROWS_AS(make_lorenz_roof(kSp, make_affine_skew(), -1.0), InvalidParams);
}

TEST_CASE("flow evolution steps roof by roof") {
    auto S = make_constant_roof(make_affine_skew(), 1.0);
    Point2 q{0.3, 0.6};
    auto moved = flow_evolve(S, {q, 0.25}, 2.5);
    Point2 expect = S.base.eval(S.base.eval(q));
    CHECK(moved.q.x == Approx(expect.x).epsilon(1e-12));
    CHECK(moved.q.y == Approx(expect.y).epsilon(1e-12));
    CHECK(moved.s == Approx(0.75).epsilon(1e-12));

    auto still = flow_evolve(S, {q, 0.25}, 0.0);
    CHECK(still.q.x == q.x);
    CHECK(still.s == 0.25);

    CHECK_THROWS_AS(flow_evolve(S, {q, 1.5}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(flow_evolve(S, {q, 0.25}, -1.0), std::invalid_argument);
}

TEST_CASE("flow metric") {
    FlowPoint a{{0.2, 0.3}, 0.5};
    FlowPoint b{{0.4, 0.3}, 0.45};
    CHECK(flow_dist(a, b) == Approx(0.2).epsilon(1e-15));
    FlowPoint c{{0.21, 0.3}, 0.9};
    CHECK(flow_dist(a, c) == Approx(0.4).epsilon(1e-12));
}

TEST_CASE("flow hitting time on a shared vertical segment") {
    auto S = make_constant_roof(make_affine_skew(), 1.0);
    Point2 q{0.3, 0.6};
    // Same base point, so the first window opens at lo = s_target - r - s0.
    double tau = flow_hitting_time(S, {q, 0.1}, {q, 0.5}, 0.05, 100.0);
    CHECK(tau == Approx(0.35).epsilon(1e-12));

    CHECK_THROWS_AS(flow_hitting_time(S, {q, 0.1}, {{0.5, 0.5}, 0.5}, 0.05, 100.0),
                    OnStableManifold);
    CHECK_THROWS_AS(flow_hitting_time(S, {q, 0.1}, {q, 0.98}, 0.05, 100.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(flow_hitting_time(S, {q, 0.0}, {q, 0.5}, 0.05, 0.1), NotHit);
}

TEST_CASE("flow hitting-time scaling against the section") {
    auto S = make_constant_roof(make_affine_skew(), 1.0);
    auto rep = flow_loglaw(S, {{0.37, 0.21}, 0.5}, {0.125, 0.0625, 0.03125}, 30, 100000.0,
                           17, 2, 1000);
    REQUIRE(rep.kept_radii.size() == 3);
    // Coarse radii and 30 samples only bracket the exponent; the tight
    // tolerance run lives in the acceptance suite.
    CHECK(rep.slope > 1.0);
    CHECK(rep.slope < 3.0);
    CHECK(std::abs(rep.slope - rep.section_slope) < 0.5);

    auto rerun = flow_loglaw(S, {{0.37, 0.21}, 0.5}, {0.125, 0.0625, 0.03125}, 30,
                             100000.0, 17, 1, 1000);
    CHECK(rerun.slope == rep.slope); // deterministic across worker counts

    CHECK_THROWS_AS(
        flow_loglaw(S, {{0.37, 0.21}, 0.5}, {0.125, 0.0625}, 12, 3.0, 17, 2, 10),
        AllMissing);
}

TEST_CASE("mixing guard for logarithmic roofs") {
    // Valid saddle, but l1 + l2 >= 0 breaks the correlation-summability
    // hypothesis behind the flow hitting statistics.
    SingularityParams weak{1.0, -0.8, -0.75};
    auto S = make_lorenz_roof(weak, make_affine_skew(), 1.0);
    CHECK_THROWS_AS(
        flow_loglaw(S, {{0.37, 0.21}, 1.0}, {0.0625, 0.03125}, 12, 1000.0, 17, 2, 10),
        InvalidParams);
}
