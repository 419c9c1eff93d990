#include "singhyp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "singhyp/transfer.hpp"

namespace singhyp {

namespace {

// Right-continuous CDF evaluations for the union-breakpoint sweep. Between
// consecutive breakpoints both CDFs are linear (constant for empirical
// clouds), so |F1 - F2| integrates exactly piece by piece.
struct Cdf {
    const Measure1D* m;
    std::vector<double> prefix; // grid only: prefix masses

    explicit Cdf(const Measure1D& mu) : m(&mu) {
        if (mu.kind() == Measure1D::Kind::Grid) {
            const auto& v = mu.density();
            prefix.assign(v.size() + 1, 0.0);
            for (std::size_t i = 0; i < v.size(); ++i)
                prefix[i + 1] = prefix[i] + v[i] / static_cast<double>(v.size());
        }
    }

    double at_right(double t) const { return value(t, /*strict=*/false); }
    double at_left(double t) const { return value(t, /*strict=*/true); }

  private:
    double value(double t, bool strict) const {
        if (m->kind() == Measure1D::Kind::Empirical) {
            const auto& s = m->samples();
            auto it = strict ? std::lower_bound(s.begin(), s.end(), t)
                             : std::upper_bound(s.begin(), s.end(), t);
            return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
        }
        const auto& v = m->density();
        double n = static_cast<double>(v.size());
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return prefix.back();
        auto i = static_cast<std::size_t>(t * n);
        if (i >= v.size()) i = v.size() - 1;
        return prefix[i] + v[i] * (t - static_cast<double>(i) / n);
    }
};

void append_breakpoints(const Measure1D& m, std::vector<double>& pts) {
    if (m.kind() == Measure1D::Kind::Empirical) {
        pts.insert(pts.end(), m.samples().begin(), m.samples().end());
    } else {
        std::size_t n = m.density().size();
        for (std::size_t i = 1; i < n; ++i)
            pts.push_back(static_cast<double>(i) / static_cast<double>(n));
    }
}

double cdf_gap_integral(const Measure1D& a, const Measure1D& b) {
    std::vector<double> pts{0.0, 1.0};
    append_breakpoints(a, pts);
    append_breakpoints(b, pts);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Cdf fa(a), fb(b);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        double lo = pts[k], hi = pts[k + 1];
        if (hi <= 0.0 || lo >= 1.0) continue;
        double w = hi - lo;
        double d0 = fa.at_right(lo) - fb.at_right(lo);
        double d1 = fa.at_left(hi) - fb.at_left(hi);
        if (d0 == 0.0 && d1 == 0.0) continue;
        if (d0 * d1 >= 0.0) {
            total += 0.5 * (std::abs(d0) + std::abs(d1)) * w;
        } else {
            total += 0.5 * w * (d0 * d0 + d1 * d1) / (std::abs(d0) + std::abs(d1));
        }
    }
    return total;
}

double sorted_mean_abs_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc / static_cast<double>(a.size());
}

std::vector<double> bin_empirical(const std::vector<double>& samples, std::size_t bins) {
    std::vector<double> density(bins, 0.0);
    double w = 1.0 / static_cast<double>(samples.size());
    for (double s : samples) {
        auto i = static_cast<std::size_t>(s * static_cast<double>(bins));
        if (i >= bins) i = bins - 1;
        density[i] += w * static_cast<double>(bins);
    }
    return density;
}

double nudge_off_cuts(const PiecewiseExpandingMap& T, double x, long long& count) {
    for (double c : T.interior_cuts()) {
        if (std::abs(x - c) <= kCutTol) {
            x = (x >= c) ? c + kNudge : c - kNudge;
            ++count;
        }
    }
    return x;
}

} // namespace

Measure1D Measure1D::empirical(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("empirical measure needs samples");
    for (double s : samples)
        if (!(s >= 0.0 && s <= 1.0))
            throw std::invalid_argument("empirical sample outside [0,1]");
    std::sort(samples.begin(), samples.end());
    Measure1D m;
    m.kind_ = Kind::Empirical;
    m.samples_ = std::move(samples);
    return m;
}

Measure1D Measure1D::grid(std::vector<double> density) {
    if (density.empty()) throw std::invalid_argument("grid measure needs bins");
    double mass = 0.0;
    for (double v : density) {
        if (!(v >= 0.0)) throw std::invalid_argument("grid density must be nonnegative");
        mass += v;
    }
    mass /= static_cast<double>(density.size());
    if (std::abs(mass - 1.0) > 1e-12)
        throw MassMismatch("grid density mass " + std::to_string(mass) + " != 1");
    Measure1D m;
    m.kind_ = Kind::Grid;
    m.density_ = std::move(density);
    return m;
}

Measure1D Measure1D::lebesgue(std::size_t bins) {
    return grid(std::vector<double>(bins, 1.0));
}

double Measure1D::total_mass() const {
    if (kind_ == Kind::Empirical) return 1.0;
    double mass = std::accumulate(density_.begin(), density_.end(), 0.0);
    return mass / static_cast<double>(density_.size());
}

double Measure1D::mean() const {
    if (kind_ == Kind::Empirical)
        return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
               static_cast<double>(samples_.size());
    double acc = 0.0;
    std::size_t n = density_.size();
    for (std::size_t i = 0; i < n; ++i)
        acc += density_[i] * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return acc / static_cast<double>(n);
}

double empirical_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample set");
    double pos = p * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double w1_distance(const Measure1D& a, const Measure1D& b) {
    if (std::abs(a.total_mass() - b.total_mass()) > 1e-12)
        throw MassMismatch("W1 requires equal total mass");
    bool ea = a.kind() == Measure1D::Kind::Empirical;
    bool eb = b.kind() == Measure1D::Kind::Empirical;
    if (ea && eb) {
        const auto& sa = a.samples();
        const auto& sb = b.samples();
        if (sa.size() == sb.size()) return sorted_mean_abs_gap(sa, sb);
        const auto& small = sa.size() < sb.size() ? sa : sb;
        const auto& large = sa.size() < sb.size() ? sb : sa;
        std::vector<double> resampled(large.size());
        for (std::size_t i = 0; i < large.size(); ++i) {
            double p = (static_cast<double>(i) + 0.5) / static_cast<double>(large.size());
            resampled[i] = empirical_quantile(small, p);
        }
        std::sort(resampled.begin(), resampled.end());
        return sorted_mean_abs_gap(resampled, large);
    }
    return cdf_gap_integral(a, b);
}

double variation_distance(const Measure1D& a, const Measure1D& b, std::size_t bins) {
    std::vector<double> da, db;
    bool ga = a.kind() == Measure1D::Kind::Grid;
    bool gb = b.kind() == Measure1D::Kind::Grid;
    if (ga && gb) {
        if (a.density().size() != b.density().size())
            throw GridMismatch("variation distance needs a common grid");
        da = a.density();
        db = b.density();
    } else {
        std::size_t n = ga ? a.density().size() : (gb ? b.density().size() : bins);
        if (n == 0)
            throw std::invalid_argument("bin count required to compare empirical measures");
        da = ga ? a.density() : bin_empirical(a.samples(), n);
        db = gb ? b.density() : bin_empirical(b.samples(), n);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) acc += std::abs(da[i] - db[i]);
    return acc / static_cast<double>(da.size());
}

Pushforward1Result pushforward(const PiecewiseExpandingMap& T, const Measure1D& mu, int n) {
    if (n < 0) throw std::invalid_argument("pushforward count must be nonnegative");
    if (mu.kind() == Measure1D::Kind::Empirical) {
        std::vector<double> pts = mu.samples();
        long long nudges = 0;
        for (int k = 0; k < n; ++k) {
            for (auto& x : pts) {
                x = nudge_off_cuts(T, x, nudges);
                x = std::min(1.0, std::max(0.0, T.eval(x)));
            }
        }
        return {Measure1D::empirical(std::move(pts)), nudges};
    }
    DensityGrid f{mu.density()};
    for (int k = 0; k < n; ++k) f = pf_apply(T, f);
    double mass = f.mass();
    if (mass <= 0.0) throw MassMismatch("pushforward density lost all mass");
    for (auto& v : f.v) v /= mass;
    return {Measure1D::grid(std::move(f.v)), 0};
}

Pushforward2Result pushforward(const SkewProductMap& F, const Measure2D& mu, int n) {
    if (n < 0) throw std::invalid_argument("pushforward count must be nonnegative");
    Measure2D out = mu;
    long long nudges = 0;
    for (int k = 0; k < n; ++k) {
        for (auto& p : out.pts) {
            p.x = nudge_off_cuts(F.base(), p.x, nudges);
            p = F.eval(p);
            p.x = std::min(1.0, std::max(0.0, p.x));
            p.y = std::min(1.0, std::max(0.0, p.y));
        }
    }
    return {std::move(out), nudges};
}

Disintegration disintegrate(const Measure2D& mu, std::size_t bins) {
    if (bins == 0) throw std::invalid_argument("need at least one strip");
    if (mu.pts.empty()) throw std::invalid_argument("empty measure");
    Disintegration d;
    d.edges.resize(bins + 1);
    for (std::size_t j = 0; j <= bins; ++j)
        d.edges[j] = static_cast<double>(j) / static_cast<double>(bins);
    d.bin_pts.assign(bins, {});
    for (const auto& p : mu.pts) {
        auto j = static_cast<std::size_t>(p.x * static_cast<double>(bins));
        if (j >= bins) j = bins - 1;
        d.bin_pts[j].push_back(p);
    }
    double n = static_cast<double>(mu.pts.size());
    d.mass.resize(bins);
    d.defaulted.resize(bins);
    d.conditionals.reserve(bins);
    for (std::size_t j = 0; j < bins; ++j) {
        d.mass[j] = static_cast<double>(d.bin_pts[j].size()) / n;
        if (d.bin_pts[j].empty()) {
            // Convention: strips carrying no mass get the Lebesgue fiber.
            d.defaulted[j] = 1;
            d.conditionals.push_back(Measure1D::lebesgue(1));
        } else {
            d.defaulted[j] = 0;
            std::vector<double> ys;
            ys.reserve(d.bin_pts[j].size());
            for (const auto& p : d.bin_pts[j]) ys.push_back(p.y);
            d.conditionals.push_back(Measure1D::empirical(std::move(ys)));
        }
    }
    return d;
}

double integral(const Measure2D& mu, const Observable2D& g) {
    double acc = 0.0;
    for (const auto& p : mu.pts) acc += g(p.x, p.y);
    return acc / static_cast<double>(mu.pts.size());
}

double reassemble_integral(const Disintegration& d, const Observable2D& g) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d.bin_pts.size(); ++j) {
        if (d.bin_pts[j].empty()) continue;
        double strip = 0.0;
        for (const auto& p : d.bin_pts[j]) strip += g(p.x, p.y);
        acc += d.mass[j] * (strip / static_cast<double>(d.bin_pts[j].size()));
    }
    return acc;
}

Observable1D project_pi(const Observable2D& f, std::size_t grid) {
    if (grid < 2) throw std::invalid_argument("quadrature grid must be >= 2");
    auto fn = f.f;
    auto g = static_cast<double>(grid);
    Observable1D out;
    out.f = [fn, g](double x) {
        double acc = 0.5 * (fn(x, 0.0) + fn(x, 1.0));
        for (std::size_t k = 1; k < static_cast<std::size_t>(g); ++k)
            acc += fn(x, static_cast<double>(k) / g);
        return acc / g;
    };
    return out;
}

ProductBoundReport prod_inequality_check(const Measure2D& mu1, const Measure2D& mu2,
                                         const Observable2D& g, std::size_t bins,
                                         double slack) {
    Disintegration d1 = disintegrate(mu1, bins);
    Disintegration d2 = disintegrate(mu2, bins);
    ProductBoundReport rep{};
    rep.lhs = std::abs(integral(mu1, g) - integral(mu2, g));
    rep.eps = 0.0;
    for (std::size_t j = 0; j < bins; ++j) {
        if (d1.mass[j] == 0.0) continue;
        rep.eps += d1.mass[j] * w1_distance(d1.conditionals[j], d2.conditionals[j]);
    }
    rep.delta = 0.0;
    for (std::size_t j = 0; j < bins; ++j) rep.delta += std::abs(d1.mass[j] - d2.mass[j]);
    rep.g_norm = vertical_lip_norm(g);
    rep.bound = rep.g_norm * (rep.eps + rep.delta);
    rep.holds = rep.lhs <= rep.bound + slack;
    return rep;
}

} // namespace singhyp
