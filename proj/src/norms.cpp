#include "singhyp/norms.hpp"

#include <algorithm>
#include <cmath>

namespace singhyp {

namespace {

bool is_inf(double p) { return std::isinf(p); }

// Collapse a chain of values to its alternating local extrema. For p >= 1
// the supremum of (sum |delta|^p)^{1/p} over subsequences of the chain is
// attained there: same-sign increments merge (superadditivity of t^p) and
// turning points must be kept.
void collapse_extrema(const std::vector<double>& xs, const std::vector<double>& vs,
                      std::vector<double>& ex_x, std::vector<double>& ex_v) {
    ex_x.clear();
    ex_v.clear();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!ex_v.empty() && vs[i] == ex_v.back()) continue;
        if (ex_v.size() >= 2) {
            double a = ex_v[ex_v.size() - 2], b = ex_v.back(), c = vs[i];
            if ((b - a > 0.0) == (c - b > 0.0)) {
                ex_v.back() = c;
                ex_x.back() = xs[i];
                continue;
            }
        }
        ex_v.push_back(vs[i]);
        ex_x.push_back(xs[i]);
    }
}

double p_sum(const std::vector<double>& vals, double p) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        double d = std::abs(vals[i + 1] - vals[i]);
        s += std::pow(d, p);
    }
    return std::pow(s, 1.0 / p);
}

void check_radii(const std::vector<double>& radii) {
    if (radii.empty()) throw InvalidEpsilon("empty radius list");
    for (double e : radii)
        if (!(e > 0.0 && e <= kOscRadiusCap))
            throw InvalidEpsilon("oscillation radius must lie in (0, 1/2], got " + std::to_string(e));
}

} // namespace

std::vector<double> default_radii(double min_eps) {
    std::vector<double> out;
    for (double e = kOscRadiusCap; e >= min_eps; e *= 0.5) out.push_back(e);
    return out;
}

VariationReport universal_p_variation(const Observable1D& h, double p, std::size_t grid_size) {
    if (!(p >= 1.0)) throw std::invalid_argument("p-variation needs p >= 1");
    std::vector<double> xs;
    if (h.tagged()) {
        xs.push_back(0.0);
        for (double b : h.breakpoints)
            if (b > 0.0 && b < 1.0) xs.push_back(b);
        xs.push_back(1.0);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    } else {
        if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
        xs.resize(grid_size + 1);
        for (std::size_t i = 0; i <= grid_size; ++i)
            xs[i] = static_cast<double>(i) / static_cast<double>(grid_size);
    }
    std::vector<double> vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = h(xs[i]);

    VariationReport rep;
    std::vector<double> ex_x, ex_v;
    collapse_extrema(xs, vs, ex_x, ex_v);
    rep.value = ex_v.size() < 2 ? 0.0 : p_sum(ex_v, p);
    rep.is_lower_bound = !h.tagged();
    rep.witness = std::move(ex_x);
    return rep;
}

double horizontal_variation(const Observable2D& f, std::size_t x_grid, std::size_t y_grid) {
    if (x_grid < 2 || y_grid < 2) throw std::invalid_argument("grids must be >= 2");
    // Each subdivision pair owns its fiber coordinate, so the inner max is
    // taken independently per pair; finer x-grids never decrease the sum.
    std::vector<double> ys(y_grid);
    for (std::size_t j = 0; j < y_grid; ++j)
        ys[j] = static_cast<double>(j) / static_cast<double>(y_grid - 1);
    double total = 0.0;
    double x_prev = 0.0;
    for (std::size_t i = 1; i <= x_grid; ++i) {
        double x_next = static_cast<double>(i) / static_cast<double>(x_grid);
        double best = 0.0;
        for (double y : ys)
            best = std::max(best, std::abs(f(x_prev, y) - f(x_next, y)));
        total += best;
        x_prev = x_next;
    }
    return total;
}

double vertical_lip_norm(const Observable2D& f, std::size_t grid) {
    double sup, lip_y;
    if (f.sup_hint >= 0.0 && f.lip_y_hint >= 0.0) {
        sup = f.sup_hint;
        lip_y = f.lip_y_hint;
    } else {
        if (grid < 2) throw std::invalid_argument("grid must be >= 2");
        sup = 0.0;
        lip_y = 0.0;
        double dy = 1.0 / static_cast<double>(grid - 1);
        for (std::size_t i = 0; i < grid; ++i) {
            double x = static_cast<double>(i) / static_cast<double>(grid - 1);
            double prev = f(x, 0.0);
            sup = std::max(sup, std::abs(prev));
            for (std::size_t j = 1; j < grid; ++j) {
                double y = static_cast<double>(j) * dy;
                double v = f(x, y);
                sup = std::max(sup, std::abs(v));
                lip_y = std::max(lip_y, std::abs(v - prev) / dy);
                prev = v;
            }
        }
        if (f.sup_hint >= 0.0) sup = f.sup_hint;
        if (f.lip_y_hint >= 0.0) lip_y = f.lip_y_hint;
    }
    return sup + lip_y;
}

double oscillation(const Observable1D& h, double eps, double x, std::size_t ball_samples) {
    if (!(eps > 0.0 && eps <= kOscRadiusCap))
        throw InvalidEpsilon("oscillation radius must lie in (0, 1/2]");
    double lo = std::max(0.0, x - eps);
    double hi = std::min(1.0, x + eps);
    std::size_t n = std::max<std::size_t>(2, ball_samples);
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (std::size_t k = 0; k < n; ++k) {
        double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        double v = h(t);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    return mx - mn;
}

std::vector<double> osc_profile(const Observable1D& h, const std::vector<double>& radii,
                                double p, std::size_t x_grid, std::size_t ball_samples) {
    check_radii(radii);
    if (!is_inf(p) && !(p >= 1.0)) throw std::invalid_argument("p must be >= 1 or infinity");
    std::vector<double> out;
    out.reserve(radii.size());
    for (double eps : radii) {
        if (is_inf(p)) {
            double mx = 0.0;
            for (std::size_t i = 0; i < x_grid; ++i) {
                double x = (static_cast<double>(i) + 0.5) / static_cast<double>(x_grid);
                mx = std::max(mx, oscillation(h, eps, x, ball_samples));
            }
            out.push_back(mx);
        } else {
            double acc = 0.0;
            for (std::size_t i = 0; i < x_grid; ++i) {
                double x = (static_cast<double>(i) + 0.5) / static_cast<double>(x_grid);
                acc += std::pow(oscillation(h, eps, x, ball_samples), p);
            }
            out.push_back(std::pow(acc / static_cast<double>(x_grid), 1.0 / p));
        }
    }
    return out;
}

double var_p_r(const Observable1D& h, double p, double r, const std::vector<double>& radii,
               std::size_t x_grid, std::size_t ball_samples) {
    auto prof = osc_profile(h, radii, p, x_grid, ball_samples);
    double best = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k)
        best = std::max(best, std::pow(radii[k], -r) * prof[k]);
    return best;
}

double lp_norm(const Observable1D& h, double p, std::size_t quad_grid) {
    if (is_inf(p)) {
        double mx = 0.0;
        for (std::size_t i = 0; i <= quad_grid; ++i)
            mx = std::max(mx, std::abs(h(static_cast<double>(i) / static_cast<double>(quad_grid))));
        return mx;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < quad_grid; ++i) {
        double x = (static_cast<double>(i) + 0.5) / static_cast<double>(quad_grid);
        acc += std::pow(std::abs(h(x)), p);
    }
    return std::pow(acc / static_cast<double>(quad_grid), 1.0 / p);
}

double norm_p_r(const Observable1D& h, double p, double r, const std::vector<double>& radii,
                std::size_t x_grid, std::size_t ball_samples, std::size_t quad_grid) {
    return var_p_r(h, p, r, radii, x_grid, ball_samples) + lp_norm(h, p, quad_grid);
}

VariationChain compare_variations(const Observable1D& h, double p,
                                  const std::vector<double>& radii, std::size_t x_grid,
                                  std::size_t ball_samples, double slack) {
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
    VariationChain c{};
    double r = 1.0 / p;
    c.var_1r = var_p_r(h, 1.0, r, radii, x_grid, ball_samples);
    c.var_pr = var_p_r(h, p, r, radii, x_grid, ball_samples);
    c.var_p = universal_p_variation(h, p).value;
    c.holds = (c.var_1r <= c.var_pr + slack) &&
              (c.var_pr <= std::pow(2.0, 1.0 / p) * c.var_p + slack);
    return c;
}

} // namespace singhyp
