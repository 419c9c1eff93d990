#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "singhyp/errors.hpp"

namespace singhyp {

/// Oscillation radii are capped at A = 1/2; B_A(1/2) already covers [0,1].
inline constexpr double kOscRadiusCap = 0.5;

/// Scalar observable on [0,1]. If breakpoints is nonempty, h is continuous
/// and monotone between consecutive listed points (endpoints 0 and 1 are
/// implied), which makes variation computations exact.
struct Observable1D {
    std::function<double(double)> f;
    std::vector<double> breakpoints;

    double operator()(double x) const { return f(x); }
    bool tagged() const { return !breakpoints.empty() || monotone_whole; }
    bool monotone_whole = false; // tag for globally monotone h with no breakpoints
};

/// Observable on the unit square. Hints, when nonnegative, are trusted exact
/// values supplied by the caller (sup norm, full and vertical Lipschitz
/// constants) and let estimators skip sampling.
struct Observable2D {
    std::function<double(double, double)> f;
    double sup_hint = -1.0;
    double lip_hint = -1.0;
    double lip_y_hint = -1.0;

    double operator()(double x, double y) const { return f(x, y); }
};

struct VariationReport {
    double value = 0.0;
    bool is_lower_bound = true;          // false when the tag makes it exact
    std::vector<double> witness;         // subdivision attaining value
};

/// Universal p-variation: sup over finite subdivisions of the l^p norm of
/// successive differences. Exact for tagged observables (the supremum is
/// attained on the monotonicity turning points); otherwise a grid lower
/// bound that is nondecreasing under refinement of nested grids.
VariationReport universal_p_variation(const Observable1D& h, double p,
                                      std::size_t grid_size = 4096);

/// Variation along x with a free fiber coordinate per subdivision pair:
/// sup over x-subdivisions of sum_i max_y |f(x_i,y) - f(x_{i+1},y)|.
/// Grid lower bound, nondecreasing under refinement.
double horizontal_variation(const Observable2D& f, std::size_t x_grid = 2048,
                            std::size_t y_grid = 64);

/// sup |f| + vertical Lipschitz constant. Uses hints when present,
/// otherwise grid difference quotients.
double vertical_lip_norm(const Observable2D& f, std::size_t grid = 1024);

/// Oscillation of h over the ball B_eps(x) intersected with [0,1]:
/// max - min over a regular sample grid in the ball (ball endpoints included).
double oscillation(const Observable1D& h, double eps, double x,
                   std::size_t ball_samples = 512);

/// L^p norm in x of the oscillation profile, one value per radius.
/// p may be infinity. Radii must lie in (0, kOscRadiusCap].
std::vector<double> osc_profile(const Observable1D& h, const std::vector<double>& radii,
                                double p, std::size_t x_grid = 512,
                                std::size_t ball_samples = 512);

/// sup over the supplied radii of eps^{-r} * osc_p(h, eps). Lower bound of
/// the supremum over all eps in (0, A].
double var_p_r(const Observable1D& h, double p, double r, const std::vector<double>& radii,
               std::size_t x_grid = 512, std::size_t ball_samples = 512);

/// var_p_r plus the L^p norm of h (midpoint quadrature on quad_grid bins).
double norm_p_r(const Observable1D& h, double p, double r, const std::vector<double>& radii,
                std::size_t x_grid = 512, std::size_t ball_samples = 512,
                std::size_t quad_grid = 4096);

/// L^p norm of h itself on [0,1] (midpoint quadrature; p may be infinity).
double lp_norm(const Observable1D& h, double p, std::size_t quad_grid = 4096);

struct VariationChain {
    double var_1r;   // var_{1,1/p}
    double var_pr;   // var_{p,1/p}
    double var_p;    // universal p-variation
    bool holds;      // var_1r <= var_pr <= 2^{1/p} var_p within slack
};

/// Evaluates the comparison chain between graded oscillation variations and
/// the universal p-variation.
VariationChain compare_variations(const Observable1D& h, double p,
                                  const std::vector<double>& radii,
                                  std::size_t x_grid = 512,
                                  std::size_t ball_samples = 512,
                                  double slack = 1e-9);

/// Geometric radius ladder A, A/2, ..., down to at least min_eps.
std::vector<double> default_radii(double min_eps = 1e-3);

} // namespace singhyp
