#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "singhyp/maps.hpp"

namespace singhyp {

/// Saddle rates at the singular point: l2 < l3 < 0 < -l3 < l1.
/// The first coordinate expands with rate l1, the second contracts with the
/// strong rate l2 and the third with the weak rate l3.
struct SingularityParams {
    double l1, l2, l3;

    double alpha() const { return -l3 / l1; } // base exponent, in (0,1)
    double beta() const { return -l2 / l1; }  // fiber exponent, > alpha
};

void validate(const SingularityParams& sp);

/// Componentwise exponential solution of the linearized vector field.
std::array<double, 3> linear_flow(const SingularityParams& sp, std::array<double, 3> p,
                                  double t);

struct ReturnPoint {
    double u;  // strong-stable coordinate on the exit plane
    double v;  // weak-stable coordinate on the exit plane
    int side;  // sign of the entry coordinate x1
};

/// Exact transit map from the entry plane {x3 = 1} to the exit planes
/// {x1 = +-1}: (x1, x2) -> (x2 |x1|^beta, |x1|^alpha). Throws
/// OnStableManifold at x1 = 0.
ReturnPoint singular_return(const SingularityParams& sp, double x1, double x2);

/// Transit time -log|x1| / l1; diverges logarithmically at the stable manifold.
double singular_return_time(const SingularityParams& sp, double x1);

/// Integral of the transit time over [-delta, delta], by panelwise
/// Gauss-Legendre over a dyadic grading toward the singularity.
double return_time_integral(const SingularityParams& sp, double delta);

/// Closed form of the same integral: 2 delta (1 - log delta) / l1.
double return_time_integral_closed(const SingularityParams& sp, double delta);

struct FlowPoint {
    Point2 q;       // base point
    double s = 0.0; // height below the roof, 0 <= s < roof(q)
};

/// Suspension of a skew product under a positive roof function.
struct SuspensionFlow {
    SkewProductMap base;
    std::function<double(Point2)> roof;
    double roof_floor = 0.0; // strictly positive lower bound of the roof
    std::optional<SingularityParams> params;

    double roof_at(Point2 q) const { return roof(q); }
};

/// Constant roof c > 0.
SuspensionFlow make_constant_roof(const SkewProductMap& F, double c);

/// Logarithmic roof tau0 + (-log|x - c|)/l1 over the cut c of a one-cut base.
SuspensionFlow make_lorenz_roof(const SingularityParams& sp, const SkewProductMap& F,
                                double tau0);

/// Advance t >= 0 units of flow time (height increases, base steps at roof
/// crossings). Cut landings during crossings are nudged like orbit samplers.
FlowPoint flow_evolve(const SuspensionFlow& S, FlowPoint p, double t);

/// Metric on the suspension: max of base sup-distance and height gap.
double flow_dist(const FlowPoint& a, const FlowPoint& b);

/// First time t >= 0 with flow_t(start) inside B_r(target). The target
/// height must sit at least r away from the floor and the local roof.
double flow_hitting_time(const SuspensionFlow& S, FlowPoint start, FlowPoint target,
                         double r, double horizon);

struct FlowLoglawReport {
    std::vector<double> radii;
    std::vector<double> miss_fraction;
    std::vector<double> kept_radii;
    std::vector<double> median_log_tau;       // flow hitting times
    std::vector<double> section_median_log;   // base-map hitting times, same starts
    double slope = 0.0;                       // flow exponent
    double section_slope = 0.0;               // base-map exponent
    double r2 = 0.0;
    double section_r2 = 0.0;
};

/// Log-law scan for the suspension flow, with the section (base map) scan on
/// the same starts for comparison. Requires l1 + l2 < 0 when singularity
/// rates are attached to the flow.
FlowLoglawReport flow_loglaw(const SuspensionFlow& S, FlowPoint target,
                             std::vector<double> radii, std::size_t samples,
                             double horizon, std::uint64_t seed, unsigned workers,
                             std::size_t burn_in = 10000);

} // namespace singhyp
