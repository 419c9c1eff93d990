#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "singhyp/errors.hpp"

namespace singhyp {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = a + b x with coefficient of determination.
inline LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DegenerateSeries("need at least two points to fit a line");
    auto n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DegenerateSeries("degenerate abscissa set");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0, ybar = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = fit.intercept + fit.slope * xs[i];
        ss_res += (ys[i] - f) * (ys[i] - f);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

/// Median of `total` values of which only the finite ones are listed; the
/// missing ones count as +infinity. Exact while fewer than half are missing.
inline double median_with_censoring(std::vector<double> finite, std::size_t total) {
    std::sort(finite.begin(), finite.end());
    std::size_t mid = total / 2;
    if (mid >= finite.size()) return std::numeric_limits<double>::infinity();
    if (total % 2 == 1 || mid == 0) return finite[mid];
    return 0.5 * (finite[mid - 1] + finite[mid]);
}

} // namespace singhyp
