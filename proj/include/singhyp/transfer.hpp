#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "singhyp/maps.hpp"
#include "singhyp/norms.hpp"

namespace singhyp {

/// Piecewise-constant density on a uniform grid over [0,1].
struct DensityGrid {
    std::vector<double> v;

    std::size_t bins() const { return v.size(); }
    double mass() const;
    double midpoint(std::size_t i) const {
        return (static_cast<double>(i) + 0.5) / static_cast<double>(v.size());
    }
    /// Piecewise-constant lookup.
    double at(double x) const;
    static DensityGrid uniform(std::size_t n) { return DensityGrid{std::vector<double>(n, 1.0)}; }
};

/// L1 distance between densities on a common grid.
double l1_distance(const DensityGrid& a, const DensityGrid& b);

/// Average consecutive bins down to a coarser grid (factor must divide bins).
DensityGrid coarsen(const DensityGrid& f, std::size_t factor);

/// Transfer operator by direct branch-preimage evaluation at bin midpoints.
/// Branch weights 1/|T'| with the +inf derivative sentinel contributing 0.
DensityGrid pf_apply(const PiecewiseExpandingMap& T, const DensityGrid& f);

/// Same operator acting on function observables (lazy, exact pointwise).
Observable1D pf_apply(const PiecewiseExpandingMap& T, const Observable1D& f);

/// L1 residual of f under one exact transfer step, |Pf - f|_1.
double pf_residual(const PiecewiseExpandingMap& T, const DensityGrid& f);

/// Row-stochastic Ulam discretization. rows[i] lists (column, probability)
/// built from exact branch-preimage interval intersections; row_sum_err is
/// the largest |row sum - 1| before normalization.
struct UlamOperator {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
    double row_sum_err = 0.0;
};

UlamOperator ulam_matrix(const PiecewiseExpandingMap& T, std::size_t n);

/// Distribution step rho' = rho P (mass vectors, not densities).
std::vector<double> apply_to_mass(const UlamOperator& P, const std::vector<double>& mass);

struct SpectralReport {
    DensityGrid density;          // fixed density of the Ulam operator
    double residual = 0.0;        // L1 fixed-point residual
    double leading_eigenvalue = 1.0;
    double second_modulus = 0.0;  // deflated power-iteration estimate
    std::size_t iterations = 0;
    bool maybe_periodic = false;  // second modulus indistinguishable from 1
};

SpectralReport invariant_density(const UlamOperator& P, double tol = 1e-12,
                                 std::size_t max_iter = 100000);

struct DecayFit {
    std::vector<double> values;   // a_n for n = 0..N
    std::vector<int> fit_lags;    // lags used by the regression
    double rate = 0.0;            // fitted per-step factor
    double r2 = 0.0;
    double noise_floor = 0.0;
};

/// Correlation-against-Lebesgue sequence a_n = |int g P^n f0 dm - mu(g) m(f0)|
/// with a log-linear fit of the decay rate. The first two lags and points
/// below 100 machine epsilons are excluded from the fit window.
DecayFit convergence_rate(const PiecewiseExpandingMap& T, const DensityGrid& f0,
                          const Observable1D& g, int max_lag);

struct LyProbe {
    double beta_hat = 1.0;
    double c_hat = 0.0;
    std::vector<double> lhs;       // |Pf|_{1,1/p} per trial
    std::vector<double> var_part;  // var_{1,1/p}(f) per trial
    std::vector<double> mass_part; // |f|_1 per trial
};

/// Empirical regularity-loss probe on random piecewise-linear test densities:
/// beta_hat is the worst observed ratio var_{1,1/p}(Pf) / var_{1,1/p}(f), and
/// c_hat the smallest offset making |Pf|_{1,1/p} <= beta_hat var_{1,1/p}(f) + c_hat
/// hold on every trial.
LyProbe lasota_yorke_probe(const PiecewiseExpandingMap& T, double p, int trials,
                           std::uint64_t seed);

/// Least-squares fit of log(values) against lag, restricted to fit_lags.
/// Returns (rate, r2).
std::pair<double, double> fit_decay_rate(const std::vector<int>& lags,
                                         const std::vector<double>& values);

} // namespace singhyp
