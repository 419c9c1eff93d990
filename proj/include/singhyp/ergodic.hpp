#pragma once

#include <cstdint>
#include <vector>

#include "singhyp/maps.hpp"
#include "singhyp/norms.hpp"

namespace singhyp {

struct Orbit {
    std::vector<Point2> pts;
    long long nudges = 0;
};

/// Deterministic orbit sample: random start from (seed, stream), burn_in
/// discarded iterates, then `length` recorded points. Throws TooManyCutHits
/// if more than 0.1% of the iterates needed cut nudging.
Orbit sample_orbit(const SkewProductMap& F, std::uint64_t seed, std::uint64_t stream,
                   std::size_t burn_in, std::size_t length);

struct DecaySeries {
    std::vector<int> lags;         // 0..max_lag
    std::vector<double> corr;      // |C_hat(n)|
    std::vector<int> fit_lags;
    double rate = 0.0;
    double r2 = 0.0;
    double noise_floor = 0.0;      // 4 sd(f*g) / sqrt(M)
};

/// Stationary correlations along one orbit, with a log-linear decay fit over
/// the pre-noise-floor window: lags 1..k where k+1 is the first lag at or
/// below the Monte Carlo floor. Later isolated exceedances are noise maxima,
/// not signal, and never enter the fit.
DecaySeries correlation_series(const Observable2D& f, const Observable2D& g,
                               const Orbit& orbit, int max_lag);

/// First entry time (n >= 1) of the forward orbit of `start` into the closed
/// sup-ball B_r(target). Plain FP iteration; cut landings are nudged.
long long hitting_time(const PiecewiseExpandingMap& T, double start, double target,
                       double r, long long horizon);
long long hitting_time(const SkewProductMap& F, Point2 start, Point2 target,
                       double r, long long horizon);

/// Stream-based variant for sampled starts (exact dynamics on shift bases).
/// base_only restricts the metric to the first coordinate.
long long hitting_time(OrbitStream& stream, Point2 target, double r,
                       long long horizon, bool base_only);

struct LoglawReport {
    std::vector<double> radii;               // requested, descending
    std::vector<double> miss_fraction;       // per requested radius
    std::vector<double> kept_radii;
    std::vector<double> median_log_tau;      // per kept radius
    std::vector<std::vector<long long>> taus; // per requested radius, -1 = miss
    double slope = 0.0;                      // d median log tau / d(-log r)
    double r2 = 0.0;
};

/// Hitting-time scaling scan: orbit-sampled starts, censored medians per
/// radius (misses count as +infinity), radii with more than 20% misses are
/// dropped, and the kept medians are regressed against -log r.
LoglawReport loglaw_exponent(const SkewProductMap& F, bool base_only, Point2 target,
                             std::vector<double> radii, std::size_t samples,
                             long long horizon, std::uint64_t seed, unsigned workers,
                             std::size_t burn_in = 10000);

struct DimensionReport {
    std::vector<double> radii_used;
    std::vector<double> counts;          // orbit visits per used radius
    std::vector<double> dropped_radii;   // fewer than min_visits hits
    double slope = 0.0;                  // local dimension estimate
    double r2 = 0.0;
};

/// Slope of log(ball occupation frequency) against log r at x0. Radii with
/// fewer than min_visits orbit visits are excluded; fewer than two usable
/// radii raises SparseBall.
DimensionReport local_dimension(const Orbit& orbit, Point2 x0,
                                std::vector<double> radii, std::size_t min_visits = 30);

struct FormulaReport {
    double psi_mean = 0.0;   // Birkhoff mean of log |T'(x)|
    double phi_mean = 0.0;   // Birkhoff mean of -log |dG/dy|
    double entropy = 0.0;    // equals psi_mean for these systems
    double dimension = 0.0;  // 1 + psi_mean / phi_mean
};

/// Dimension through the expansion/contraction log-rate means along an orbit.
FormulaReport dimension_formula(const SkewProductMap& F, const Orbit& orbit);

struct IntegrabilityReport {
    double psi_mean = 0.0, phi_mean = 0.0, tau_mean = 0.0;
    double psi_drift = 0.0, phi_drift = 0.0, tau_drift = 0.0; // last-quarter drift
    bool psi_heavy = false, phi_heavy = false, tau_heavy = false;
    bool has_tau = false;
};

/// Birkhoff-average health check for the log-rate observables and an
/// optional roof function. Drift compares the last-quarter mean with the
/// full mean; the heavy flag fires when a single summand dwarfs the mean.
IntegrabilityReport integrability_report(const SkewProductMap& F, const Orbit& orbit,
                                         const std::function<double(Point2)>* roof = nullptr);

} // namespace singhyp
