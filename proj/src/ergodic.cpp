#include "singhyp/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "singhyp/parallel.hpp"
#include "singhyp/stats.hpp"
#include "singhyp/transfer.hpp"

namespace singhyp {

namespace {

double nudged(const PiecewiseExpandingMap& T, double x, long long& count) {
    for (double c : T.interior_cuts()) {
        if (std::abs(x - c) <= kCutTol) {
            x = (x >= c) ? c + kNudge : c - kNudge;
            ++count;
        }
    }
    return x;
}

Point2 step_nudged(const SkewProductMap& F, Point2 p, long long& count) {
    p.x = nudged(F.base(), p.x, count);
    p = F.eval(p);
    p.x = std::min(1.0, std::max(0.0, p.x));
    p.y = std::min(1.0, std::max(0.0, p.y));
    return p;
}

} // namespace

Orbit sample_orbit(const SkewProductMap& F, std::uint64_t seed, std::uint64_t stream,
                   std::size_t burn_in, std::size_t length) {
    if (length == 0) throw std::invalid_argument("orbit length must be positive");
    auto s = F.stream(seed, stream);
    for (std::size_t k = 0; k < burn_in; ++k) s->advance();
    Orbit o;
    o.pts.reserve(length);
    for (std::size_t k = 0; k < length; ++k) {
        o.pts.push_back(s->point());
        s->advance();
    }
    o.nudges = s->nudges();
    auto budget = static_cast<long long>(0.001 * static_cast<double>(burn_in + length));
    if (o.nudges > budget)
        throw TooManyCutHits(std::to_string(o.nudges) + " cut nudges over " +
                             std::to_string(burn_in + length) + " iterates");
    return o;
}

DecaySeries correlation_series(const Observable2D& f, const Observable2D& g,
                               const Orbit& orbit, int max_lag) {
    std::size_t m = orbit.pts.size();
    if (max_lag < 1 || m < static_cast<std::size_t>(4 * max_lag))
        throw InsufficientOrbit("orbit too short for the requested lags");
    std::vector<double> fv(m), gv(m);
    for (std::size_t k = 0; k < m; ++k) {
        fv[k] = f(orbit.pts[k].x, orbit.pts[k].y);
        gv[k] = g(orbit.pts[k].x, orbit.pts[k].y);
    }
    double fbar = 0.0, gbar = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        fbar += fv[k];
        gbar += gv[k];
    }
    fbar /= static_cast<double>(m);
    gbar /= static_cast<double>(m);

    double prod_mean = 0.0, prod_sq = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        double p = fv[k] * gv[k];
        prod_mean += p;
        prod_sq += p * p;
    }
    prod_mean /= static_cast<double>(m);
    prod_sq /= static_cast<double>(m);
    double sd = std::sqrt(std::max(0.0, prod_sq - prod_mean * prod_mean));

    DecaySeries series;
    // The iid 3-sigma floor undershoots: the lagged products are serially
    // correlated, which inflates the variance of their mean by about 2x.
    series.noise_floor = 4.0 * sd / std::sqrt(static_cast<double>(m));
    for (int lag = 0; lag <= max_lag; ++lag) {
        std::size_t count = m - static_cast<std::size_t>(lag);
        double acc = 0.0;
        for (std::size_t k = 0; k < count; ++k)
            acc += fv[k] * gv[k + static_cast<std::size_t>(lag)];
        acc = acc / static_cast<double>(count) - fbar * gbar;
        series.lags.push_back(lag);
        series.corr.push_back(std::abs(acc));
    }
    // Contiguous pre-floor window: once the series touches the floor, every
    // later lag is unresolvable, and isolated exceedances there are the maxima
    // of many noise draws rather than signal.
    std::vector<int> lags;
    std::vector<double> vals;
    for (int lag = 1; lag <= max_lag; ++lag) {
        double v = series.corr[static_cast<std::size_t>(lag)];
        if (v <= series.noise_floor) break;
        lags.push_back(lag);
        vals.push_back(v);
    }
    if (lags.size() < 2)
        throw DegenerateSeries("correlation series has fewer than two lags above the floor");
    auto [rate, r2] = fit_decay_rate(lags, vals);
    series.fit_lags = std::move(lags);
    series.rate = rate;
    series.r2 = r2;
    return series;
}

long long hitting_time(const PiecewiseExpandingMap& T, double start, double target,
                       double r, long long horizon) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    long long nudges = 0;
    double x = start;
    for (long long n = 1; n <= horizon; ++n) {
        x = nudged(T, x, nudges);
        x = std::min(1.0, std::max(0.0, T.eval(x)));
        if (std::abs(x - target) <= r) return n;
    }
    throw NotHit(horizon);
}

long long hitting_time(const SkewProductMap& F, Point2 start, Point2 target,
                       double r, long long horizon) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    long long nudges = 0;
    Point2 p = start;
    for (long long n = 1; n <= horizon; ++n) {
        p = step_nudged(F, p, nudges);
        if (dist_sup(p, target) <= r) return n;
    }
    throw NotHit(horizon);
}

long long hitting_time(OrbitStream& stream, Point2 target, double r,
                       long long horizon, bool base_only) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    for (long long n = 1; n <= horizon; ++n) {
        stream.advance();
        Point2 p = stream.point();
        double d = base_only ? std::abs(p.x - target.x) : dist_sup(p, target);
        if (d <= r) return n;
    }
    throw NotHit(horizon);
}

LoglawReport loglaw_exponent(const SkewProductMap& F, bool base_only, Point2 target,
                             std::vector<double> radii, std::size_t samples,
                             long long horizon, std::uint64_t seed, unsigned workers,
                             std::size_t burn_in) {
    if (radii.empty()) throw std::invalid_argument("need at least one radius");
    if (samples < 10) throw std::invalid_argument("need at least 10 samples");
    std::sort(radii.begin(), radii.end(), std::greater<>());
    std::size_t nr = radii.size();

    std::vector<std::vector<long long>> taus(nr, std::vector<long long>(samples, -1));
    parallel_for(samples, workers, [&](std::size_t s) {
        auto stream = F.stream(seed, s);
        for (std::size_t k = 0; k < burn_in; ++k) stream->advance();
        std::size_t next_radius = 0;
        for (long long n = 1; n <= horizon && next_radius < nr; ++n) {
            stream->advance();
            Point2 p = stream->point();
            double d = base_only ? std::abs(p.x - target.x) : dist_sup(p, target);
            while (next_radius < nr && d <= radii[next_radius]) {
                taus[next_radius][s] = n;
                ++next_radius;
            }
        }
    });

    LoglawReport rep;
    rep.radii = radii;
    rep.taus = taus;
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < nr; ++j) {
        std::size_t missing = 0;
        std::vector<double> logs;
        for (std::size_t s = 0; s < samples; ++s) {
            if (taus[j][s] < 0)
                ++missing;
            else
                logs.push_back(std::log(static_cast<double>(taus[j][s])));
        }
        double miss = static_cast<double>(missing) / static_cast<double>(samples);
        rep.miss_fraction.push_back(miss);
        if (miss > 0.2) continue;
        double med = median_with_censoring(std::move(logs), samples);
        if (!std::isfinite(med)) continue;
        rep.kept_radii.push_back(radii[j]);
        rep.median_log_tau.push_back(med);
        xs.push_back(-std::log(radii[j]));
        ys.push_back(med);
    }
    if (rep.kept_radii.empty()) throw AllMissing("every radius exceeded the miss budget");
    if (rep.kept_radii.size() >= 2) {
        auto fit = least_squares(xs, ys);
        rep.slope = fit.slope;
        rep.r2 = fit.r2;
    }
    return rep;
}

DimensionReport local_dimension(const Orbit& orbit, Point2 x0, std::vector<double> radii,
                                std::size_t min_visits) {
    if (radii.empty()) throw std::invalid_argument("need at least one radius");
    std::sort(radii.begin(), radii.end(), std::greater<>());
    std::vector<double> counts(radii.size(), 0.0);
    for (const auto& p : orbit.pts) {
        double d = dist_sup(p, x0);
        for (std::size_t j = 0; j < radii.size() && d <= radii[j]; ++j) counts[j] += 1.0;
    }
    DimensionReport rep;
    std::vector<double> xs, ys;
    auto m = static_cast<double>(orbit.pts.size());
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (counts[j] < static_cast<double>(min_visits)) {
            rep.dropped_radii.push_back(radii[j]);
            continue;
        }
        rep.radii_used.push_back(radii[j]);
        rep.counts.push_back(counts[j]);
        xs.push_back(std::log(radii[j]));
        ys.push_back(std::log(counts[j] / m));
    }
    if (rep.radii_used.size() < 2)
        throw SparseBall("fewer than two radii reached the visit threshold");
    auto fit = least_squares(xs, ys);
    rep.slope = fit.slope;
    rep.r2 = fit.r2;
    return rep;
}

FormulaReport dimension_formula(const SkewProductMap& F, const Orbit& orbit) {
    if (orbit.pts.empty()) throw InsufficientOrbit("empty orbit");
    double psi = 0.0, phi = 0.0;
    long long nudges = 0;
    for (const auto& p : orbit.pts) {
        double x = nudged(F.base(), p.x, nudges);
        psi += std::log(std::abs(F.base().deriv(x)));
        double gy = std::abs(F.fiber_dy(x, p.y));
        if (gy < 1e-300)
            throw DegenerateFiber("fiber derivative vanished at x = " + std::to_string(x));
        phi -= std::log(gy);
    }
    auto m = static_cast<double>(orbit.pts.size());
    FormulaReport rep;
    rep.psi_mean = psi / m;
    rep.phi_mean = phi / m;
    rep.entropy = rep.psi_mean;
    rep.dimension = 1.0 + rep.psi_mean / rep.phi_mean;
    return rep;
}

namespace {

struct RunningStats {
    double mean = 0.0, drift = 0.0;
    bool heavy = false;
};

RunningStats birkhoff_stats(const std::vector<double>& vals) {
    RunningStats st;
    auto m = static_cast<double>(vals.size());
    double total = 0.0, max_abs = 0.0;
    for (double v : vals) {
        total += v;
        max_abs = std::max(max_abs, std::abs(v));
    }
    st.mean = total / m;
    std::size_t q = vals.size() - vals.size() / 4;
    double tail = 0.0;
    for (std::size_t k = q; k < vals.size(); ++k) tail += vals[k];
    double tail_mean = tail / static_cast<double>(vals.size() - q);
    st.drift = std::abs(tail_mean - st.mean) / std::max(std::abs(st.mean), 1e-12);
    st.heavy = max_abs > 10.0 * std::abs(st.mean) * std::log(m);
    return st;
}

} // namespace

IntegrabilityReport integrability_report(const SkewProductMap& F, const Orbit& orbit,
                                         const std::function<double(Point2)>* roof) {
    if (orbit.pts.size() < 8) throw InsufficientOrbit("orbit too short");
    std::vector<double> psi, phi, tau;
    psi.reserve(orbit.pts.size());
    phi.reserve(orbit.pts.size());
    long long nudges = 0;
    for (const auto& p : orbit.pts) {
        double x = nudged(F.base(), p.x, nudges);
        psi.push_back(std::log(std::abs(F.base().deriv(x))));
        double gy = std::abs(F.fiber_dy(x, p.y));
        if (gy < 1e-300) throw DegenerateFiber("fiber derivative vanished");
        phi.push_back(-std::log(gy));
        if (roof) tau.push_back((*roof)(Point2{x, p.y}));
    }
    IntegrabilityReport rep;
    auto ps = birkhoff_stats(psi);
    rep.psi_mean = ps.mean;
    rep.psi_drift = ps.drift;
    rep.psi_heavy = ps.heavy;
    auto ph = birkhoff_stats(phi);
    rep.phi_mean = ph.mean;
    rep.phi_drift = ph.drift;
    rep.phi_heavy = ph.heavy;
    if (roof) {
        auto tt = birkhoff_stats(tau);
        rep.tau_mean = tt.mean;
        rep.tau_drift = tt.drift;
        rep.tau_heavy = tt.heavy;
        rep.has_tau = true;
    } else {
        rep.tau_mean = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

} // namespace singhyp
