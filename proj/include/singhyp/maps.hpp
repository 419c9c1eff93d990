#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "singhyp/errors.hpp"
#include "singhyp/rng.hpp"

namespace singhyp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// sup metric on the unit square; diam(Q) = 1.
inline double dist_sup(Point2 a, Point2 b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// Absolute half-width of the dead zone around each cut line.
inline constexpr double kCutTol = 4.0 * DBL_EPSILON;

/// Nudge applied to samples that land inside the dead zone.
inline constexpr double kNudge = 1e-9;

/// One monotone C^1 branch of a piecewise expanding interval map.
/// Domain is the open interval (lo, hi); img_lo/img_hi are the closure of
/// the branch image. deriv may return +-inf where |T'| diverges at a cut.
struct Branch {
    double lo = 0.0, hi = 1.0;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<double(double)> inverse; // empty: invert by bisection
    bool increasing = true;
    double img_lo = 0.0, img_hi = 1.0;
};

struct Preimage {
    int branch;
    double x;
    double abs_deriv; // |T'(x)|, +inf sentinel allowed
};

class PiecewiseExpandingMap {
  public:
    PiecewiseExpandingMap(std::string family, std::vector<double> interior_cuts,
                          std::vector<Branch> branches, double expansion_floor,
                          bool dyadic_shift = false);

    /// Branch containing x; throws UndefinedAtCut within kCutTol of a cut.
    int branch_index(double x) const;

    double eval(double x) const;
    /// Signed derivative T'(x); one-sided limits at branch ends, inf allowed.
    double deriv(double x) const;
    double eval_on_branch(int b, double x) const { return branches_[b].eval(x); }

    /// All branch preimages of y with |T'| weights, ordered by branch.
    std::vector<Preimage> preimages(double y) const;

    const std::vector<double>& interior_cuts() const { return cuts_; }
    std::size_t branch_count() const { return branches_.size(); }
    const Branch& branch(int b) const { return branches_[b]; }
    double expansion_floor() const { return expansion_floor_; }
    const std::string& family() const { return family_; }
    /// True for binary-shift bases whose double-precision orbits collapse;
    /// orbit sampling then uses the exact bit-reservoir stepper.
    bool dyadic_shift() const { return dyadic_shift_; }

  private:
    std::string family_;
    std::vector<double> cuts_;     // interior cuts only
    std::vector<double> edges_;    // 0, cuts..., 1
    std::vector<Branch> branches_;
    double expansion_floor_;
    bool dyadic_shift_;
};

/// Stateful orbit generator. point() is the current state; advance() applies
/// the map once. Implementations must be deterministic given (seed, stream).
class OrbitStream {
  public:
    virtual ~OrbitStream() = default;
    virtual Point2 point() const = 0;
    virtual void advance() = 0;
    virtual long long nudges() const = 0;
};

class SkewProductMap {
  public:
    using FiberFn = std::function<double(int, double, double)>; // (branch, x, y)

    SkewProductMap(std::string family, PiecewiseExpandingMap base, FiberFn g,
                   FiberFn g_dx, FiberFn g_dy, double contraction);

    Point2 eval(Point2 p) const;
    double fiber(double x, double y) const;
    double fiber_dx(double x, double y) const;
    double fiber_dy(double x, double y) const;
    double fiber_on_branch(int b, double x, double y) const { return g_(b, x, y); }

    const PiecewiseExpandingMap& base() const { return base_; }
    double contraction() const { return lambda_; }
    const std::string& family() const { return family_; }

    /// Deterministic orbit stream for (seed, stream); exact bit-reservoir
    /// dynamics for dyadic-shift bases, plain FP iteration otherwise.
    std::unique_ptr<OrbitStream> stream(std::uint64_t seed, std::uint64_t stream_id) const;

  private:
    std::string family_;
    PiecewiseExpandingMap base_;
    FiberFn g_, g_dx_, g_dy_;
    double lambda_;
};

struct LorenzModelParams {
    double alpha; // base branch exponent, in (1/2, 1)
    double beta;  // fiber exponent, >= 1
    double kappa; // fiber contraction rate, in (0, 1/4]
};

PiecewiseExpandingMap make_doubling();
PiecewiseExpandingMap make_tent();
PiecewiseExpandingMap make_lorenz_base(double alpha);

SkewProductMap make_lorenz_model(const LorenzModelParams& p);
SkewProductMap make_affine_skew();

/// Diameter of the n-th image of the vertical leaf {x0} x [0,1], measured
/// with leaf_points equispaced fiber samples. Throws OrbitHitsCut if the
/// base orbit of x0 lands in a cut dead zone before step n.
double leaf_diameter_decay(const SkewProductMap& F, double x0, int n,
                           std::size_t leaf_points = 1000);

/// Invert a monotone branch by bisection (|T(x) - y| driven below tol).
double bisect_branch(const Branch& b, double y, double tol = 1e-12, int max_iter = 200);

} // namespace singhyp
