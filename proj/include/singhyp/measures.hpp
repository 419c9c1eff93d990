#pragma once

#include <cstddef>
#include <vector>

#include "singhyp/maps.hpp"
#include "singhyp/norms.hpp"

namespace singhyp {

/// Probability measure on [0,1]: either an empirical cloud (equal weights,
/// stored sorted) or a piecewise-constant density on a uniform grid.
/// Total mass 1 is enforced at construction (1e-12 for grids).
class Measure1D {
  public:
    enum class Kind { Empirical, Grid };

    static Measure1D empirical(std::vector<double> samples);
    static Measure1D grid(std::vector<double> density);
    /// Uniform (Lebesgue) density on `bins` bins.
    static Measure1D lebesgue(std::size_t bins);

    Kind kind() const { return kind_; }
    const std::vector<double>& samples() const { return samples_; }
    const std::vector<double>& density() const { return density_; }
    std::size_t size() const {
        return kind_ == Kind::Empirical ? samples_.size() : density_.size();
    }
    double total_mass() const;
    double mean() const;

  private:
    Kind kind_;
    std::vector<double> samples_;
    std::vector<double> density_;
};

/// Empirical probability measure on the unit square.
struct Measure2D {
    std::vector<Point2> pts;
};

/// Wasserstein-1 distance, exact on the stored representations. Equal-count
/// empirical pairs use the sorted-samples closed form; unequal counts first
/// resample the smaller cloud to the larger by quantile interpolation
/// (documented surrogate); grid and mixed pairs integrate |CDF1 - CDF2|
/// exactly over the union breakpoints.
double w1_distance(const Measure1D& a, const Measure1D& b);

/// L1 distance between densities on a common grid. Empirical inputs are
/// binned to `bins` first (required nonzero when any input is empirical).
double variation_distance(const Measure1D& a, const Measure1D& b, std::size_t bins = 0);

/// Quantile function by linear interpolation of sorted samples.
double empirical_quantile(const std::vector<double>& sorted, double p);

struct Pushforward1Result {
    Measure1D measure;
    long long nudges = 0;
};
/// n-fold image of mu under T. Empirical clouds iterate samplewise with cut
/// nudging; grid densities go through the transfer operator and are
/// renormalized to unit mass afterwards.
Pushforward1Result pushforward(const PiecewiseExpandingMap& T, const Measure1D& mu, int n);

struct Pushforward2Result {
    Measure2D measure;
    long long nudges = 0;
};
Pushforward2Result pushforward(const SkewProductMap& F, const Measure2D& mu, int n);

/// Binned disintegration over vertical strips: strip masses plus the
/// conditional fiber measure per strip. Empty strips default to Lebesgue on
/// the fiber and are flagged. bin_pts keeps the raw points per strip so
/// integrals reassemble by pure regrouping.
struct Disintegration {
    std::vector<double> edges;                  // B+1 strip edges
    std::vector<double> mass;                   // strip masses, sum 1
    std::vector<Measure1D> conditionals;        // per strip
    std::vector<char> defaulted;                // 1 where Lebesgue convention used
    std::vector<std::vector<Point2>> bin_pts;
};

Disintegration disintegrate(const Measure2D& mu, std::size_t bins);

/// Mean of g under mu (plain cloud average).
double integral(const Measure2D& mu, const Observable2D& g);

/// Same integral assembled strip by strip from the disintegration.
double reassemble_integral(const Disintegration& d, const Observable2D& g);

/// Fiber average x -> integral of f(x, t) dt by composite trapezoid with
/// `grid` panels. Error O(grid^-2) for fiberwise C^2 integrands.
Observable1D project_pi(const Observable2D& f, std::size_t grid = 2048);

struct ProductBoundReport {
    double lhs;        // |mean g under mu1 - mean g under mu2|
    double eps;        // strip-averaged conditional W1, weighted by mu1 strips
    double delta;      // L1 distance of binned marginals
    double g_norm;     // sup |g| + vertical Lipschitz constant
    double bound;      // g_norm * (eps + delta)
    bool holds;
};

/// Checks the two-layer comparison bound: integrals of a fiberwise Lipschitz
/// observable differ by at most g_norm * (conditional W1 average + marginal
/// variation distance).
ProductBoundReport prod_inequality_check(const Measure2D& mu1, const Measure2D& mu2,
                                         const Observable2D& g, std::size_t bins,
                                         double slack = 1e-9);

} // namespace singhyp
