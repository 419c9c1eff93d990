#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "singhyp/transfer.hpp"

using namespace singhyp;
using doctest::Approx;

namespace {

DensityGrid linear_density(std::size_t n) {
    DensityGrid f;
    f.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.v[i] = f.midpoint(i) + 0.5;
    return f;
}

} // namespace

TEST_CASE("transfer step on the doubling map is exact on dyadic grids") {
    auto T = make_doubling();
    auto u = DensityGrid::uniform(64);
    CHECK(l1_distance(pf_apply(T, u), u) == Approx(0.0).epsilon(1e-15));

    auto f = linear_density(1024);
    auto Pf = pf_apply(T, f);
    CHECK(Pf.mass() == Approx(1.0).epsilon(1e-13));
    // Branch preimages of bin i sit in bins i/2 and i/2 + n/2.
    DensityGrid expect;
    expect.v.resize(1024);
    for (std::size_t i = 0; i < 1024; ++i)
        expect.v[i] = 0.5 * (f.v[i / 2] + f.v[i / 2 + 512]);
    CHECK(l1_distance(Pf, expect) == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("transfer operator annihilates the first Fourier mode") {
    auto T = make_doubling();
    Observable1D wave{[](double x) { return std::cos(2.0 * M_PI * x); }, {}, false};
    auto img = pf_apply(T, wave);
    for (int i = 0; i <= 100; ++i)
        CHECK(std::abs(img(static_cast<double>(i) / 100.0)) <= 1e-13);
}

TEST_CASE("ulam rows of the doubling map at 8 bins") {
    auto P = ulam_matrix(make_doubling(), 8);
    REQUIRE(P.n == 8);
    CHECK(P.row_sum_err <= 1e-12);
    for (std::size_t i = 0; i < 8; ++i) {
        REQUIRE(P.rows[i].size() == 2);
        std::uint32_t c0 = (2 * i) % 8, c1 = (2 * i + 1) % 8;
        CHECK(P.rows[i][0].first == c0);
        CHECK(P.rows[i][1].first == c1);
        CHECK(P.rows[i][0].second == Approx(0.5).epsilon(1e-13));
        CHECK(P.rows[i][1].second == Approx(0.5).epsilon(1e-13));
    }
}

TEST_CASE("invariant density of Lebesgue-preserving maps") {
    for (auto T : {make_doubling(), make_tent()}) {
        auto rep = invariant_density(ulam_matrix(T, 256));
        CHECK(l1_distance(rep.density, DensityGrid::uniform(256)) <= 1e-10);
        CHECK(rep.leading_eigenvalue == Approx(1.0).epsilon(1e-12));
        CHECK(rep.residual <= 1e-12);
        CHECK_FALSE(rep.maybe_periodic);
    }
}

TEST_CASE("doubling matrix annihilates the mass-zero subspace") {
    // On a dyadic grid the binned doubling operator is exact; eight steps send
    // every mean-zero vector to zero, so the sub-dominant modulus is 0.
    auto rep = invariant_density(ulam_matrix(make_doubling(), 256));
    CHECK(rep.second_modulus == 0.0);
    CHECK_FALSE(rep.maybe_periodic);
}

TEST_CASE("second modulus recovers a known eigenvalue") {
    // Two-state chain with eigenvalues 1 and exactly 1/2.
    UlamOperator P;
    P.n = 2;
    P.rows = {{{0, 0.75}, {1, 0.25}}, {{0, 0.25}, {1, 0.75}}};
    auto rep = invariant_density(P);
    CHECK(rep.leading_eigenvalue == Approx(1.0).epsilon(1e-12));
    CHECK(rep.second_modulus == Approx(0.5).epsilon(1e-9));
    CHECK_FALSE(rep.maybe_periodic);
}

TEST_CASE("period-two chain is flagged") {
    UlamOperator P;
    P.n = 2;
    P.rows = {{{1, 1.0}}, {{0, 1.0}}};
    auto rep = invariant_density(P);
    CHECK(rep.second_modulus == Approx(1.0).epsilon(1e-9));
    CHECK(rep.maybe_periodic);
}

TEST_CASE("lorenz base density is a proper fixed point") {
    auto L = make_lorenz_base(0.75);
    auto rep = invariant_density(ulam_matrix(L, 512));
    CHECK(rep.density.mass() == Approx(1.0).epsilon(1e-9));
    CHECK(rep.residual <= 1e-10);
    double mn = 1e300;
    for (double v : rep.density.v) mn = std::min(mn, v);
    CHECK(mn >= 0.0);
    // Exact-operator residual is discretization-limited, not zero.
    CHECK(pf_residual(L, rep.density) <= 0.05);
}

TEST_CASE("mass vectors evolve stochastically") {
    auto P = ulam_matrix(make_tent(), 32);
    std::vector<double> mass(32, 1.0 / 32.0);
    auto next = apply_to_mass(P, mass);
    double total = 0.0;
    for (double m : next) total += m;
    CHECK(total == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("coarsening averages bin pairs") {
    DensityGrid f{{1.0, 3.0, 2.0, 0.0}};
    auto c = coarsen(f, 2);
    REQUIRE(c.bins() == 2);
    CHECK(c.v[0] == 2.0);
    CHECK(c.v[1] == 1.0);
    CHECK_THROWS_AS(coarsen(f, 3), GridMismatch);
    CHECK_THROWS_AS(l1_distance(f, c), GridMismatch);
}

TEST_CASE("equilibrium convergence rate of the doubling map") {
    auto T = make_doubling();
    Observable1D g{[](double x) { return x; }, {}, true};
    auto fit = convergence_rate(T, linear_density(512), g, 20);
    REQUIRE(fit.values.size() == 21);
    // a_0 = |integral x(x+1/2) - 1/2| = 1/12 up to the grid projection error.
    CHECK(fit.values[0] == Approx(1.0 / 12.0).epsilon(1e-5));
    CHECK(fit.values[1] / fit.values[0] == Approx(0.5).epsilon(1e-3));
    CHECK(fit.rate == Approx(0.5).epsilon(0.02));
    // The grid projection bends the last kept lags slightly, so the log-linear
    // fit is close to, but not exactly, a line.
    CHECK(fit.r2 > 0.99);
    CHECK(fit.noise_floor > 0.0);
}

TEST_CASE("decay fit helper recovers exact geometries") {
    std::vector<int> lags = {1, 2, 3, 4, 5, 6};
    std::vector<double> values;
    for (int n : lags) values.push_back(3.0 * std::pow(0.5, n));
    auto [rate, r2] = fit_decay_rate(lags, values);
    CHECK(rate == Approx(0.5).epsilon(1e-12));
    CHECK(r2 == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regularity-loss probe on the doubling map") {
    auto probe = lasota_yorke_probe(make_doubling(), 1.0, 20, 42);
    CHECK(probe.beta_hat <= 0.6);
    CHECK(probe.c_hat >= 0.0);
    CHECK(probe.lhs.size() == 20);
    CHECK(probe.var_part.size() == 20);
    CHECK(probe.mass_part.size() == 20);
}
