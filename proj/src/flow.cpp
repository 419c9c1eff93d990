#include "singhyp/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "singhyp/parallel.hpp"
#include "singhyp/stats.hpp"

namespace singhyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode[4] = {0.1834346424956498, 0.5255324099163290,
                               0.7966664774136267, 0.9602898564975362};
constexpr double kGlWeight[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

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

// Targets over a cut line sit on the local stable manifold of the roof
// singularity; hitting-time queries reject them.
void check_target_off_cuts(const SuspensionFlow& S, Point2 q) {
    for (double c : S.base.base().interior_cuts())
        if (std::abs(q.x - c) <= kCutTol)
            throw OnStableManifold("target base point lies on a cut line");
}

} // namespace

void validate(const SingularityParams& sp) {
    if (!(sp.l1 > 0.0) || !(sp.l3 < 0.0) || !(sp.l2 < sp.l3))
        throw InvalidParams("saddle rates must satisfy l2 < l3 < 0 < l1");
    if (!(-sp.l3 < sp.l1))
        throw InvalidParams("weak contraction must be beaten by the expansion (-l3 < l1)");
}

std::array<double, 3> linear_flow(const SingularityParams& sp, std::array<double, 3> p,
                                  double t) {
    return {p[0] * std::exp(sp.l1 * t), p[1] * std::exp(sp.l2 * t),
            p[2] * std::exp(sp.l3 * t)};
}

ReturnPoint singular_return(const SingularityParams& sp, double x1, double x2) {
    validate(sp);
    if (x1 == 0.0) throw OnStableManifold("entry point sits on the local stable manifold");
    if (std::abs(x1) > 1.0)
        throw std::invalid_argument("entry coordinate must satisfy |x1| <= 1");
    double a = std::abs(x1);
    ReturnPoint r;
    r.u = x2 * std::pow(a, sp.beta());
    r.v = std::pow(a, sp.alpha());
    r.side = x1 > 0.0 ? 1 : -1;
    return r;
}

double singular_return_time(const SingularityParams& sp, double x1) {
    validate(sp);
    if (x1 == 0.0) throw OnStableManifold("entry point sits on the local stable manifold");
    if (std::abs(x1) > 1.0)
        throw std::invalid_argument("entry coordinate must satisfy |x1| <= 1");
    return -std::log(std::abs(x1)) / sp.l1;
}

double return_time_integral(const SingularityParams& sp, double delta) {
    validate(sp);
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("delta must lie in (0, 1]");
    // Integrand is even, so integrate over (0, delta] and double. The dyadic
    // panels [delta 2^{-k-1}, delta 2^{-k}] keep the log resolvable near 0;
    // the remaining mass below the last panel is under 1e-16 of the total.
    double sum = 0.0;
    double b = delta;
    for (int k = 0; k < 60; ++k) {
        double a = 0.5 * b;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < 4; ++i) {
            sum += half * kGlWeight[i] * (-std::log(mid + half * kGlNode[i]));
            sum += half * kGlWeight[i] * (-std::log(mid - half * kGlNode[i]));
        }
        b = a;
    }
    return 2.0 * sum / sp.l1;
}

double return_time_integral_closed(const SingularityParams& sp, double delta) {
    validate(sp);
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("delta must lie in (0, 1]");
    return 2.0 * delta * (1.0 - std::log(delta)) / sp.l1;
}

SuspensionFlow make_constant_roof(const SkewProductMap& F, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw InvalidParams("constant roof must be positive and finite");
    SuspensionFlow S{F, [c](Point2) { return c; }, c, std::nullopt};
    return S;
}

SuspensionFlow make_lorenz_roof(const SingularityParams& sp, const SkewProductMap& F,
                                double tau0) {
    validate(sp);
    if (!(tau0 >= 0.0) || !std::isfinite(tau0))
        throw InvalidParams("roof offset must be finite and nonnegative");
    const auto& cuts = F.base().interior_cuts();
    if (cuts.size() != 1)
        throw InvalidParams("logarithmic roof needs a base with exactly one cut");
    double cut = cuts[0];
    double l1 = sp.l1;
    // Roof diverges at the cut; steppers keep orbits nudged away from it.
    auto roof = [cut, l1, tau0](Point2 q) { return tau0 - std::log(std::abs(q.x - cut)) / l1; };
    double reach = std::max(cut, 1.0 - cut);
    SuspensionFlow S{F, roof, tau0 - std::log(reach) / l1, sp};
    return S;
}

FlowPoint flow_evolve(const SuspensionFlow& S, FlowPoint p, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("flow time must be finite and nonnegative");
    if (!(p.s >= 0.0) || !(p.s < S.roof_at(p.q)))
        throw std::invalid_argument("height must satisfy 0 <= s < roof(q)");
    long long nudges = 0;
    double seg = S.roof_at(p.q) - p.s;
    while (t >= seg) {
        t -= seg;
        p.q = step_nudged(S.base, p.q, nudges);
        p.s = 0.0;
        seg = S.roof_at(p.q);
    }
    p.s += t;
    return p;
}

double flow_dist(const FlowPoint& a, const FlowPoint& b) {
    return std::max(dist_sup(a.q, b.q), std::abs(a.s - b.s));
}

double flow_hitting_time(const SuspensionFlow& S, FlowPoint start, FlowPoint target,
                         double r, double horizon) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon must be positive and finite");
    check_target_off_cuts(S, target.q);
    if (!(target.s - r >= 0.0) || !(target.s + r <= S.roof_at(target.q)))
        throw std::invalid_argument("target ball must clear the floor and the roof");
    if (!(start.s >= 0.0) || !(start.s < S.roof_at(start.q)))
        throw std::invalid_argument("height must satisfy 0 <= s < roof(q)");
    long long nudges = 0;
    Point2 q = start.q;
    double h = start.s;
    double t_acc = 0.0;
    while (t_acc <= horizon) {
        double seg = S.roof_at(q) - h;
        if (dist_sup(q, target.q) <= r) {
            // Heights reached before the next crossing are [h, h + seg).
            double lo = std::max(0.0, target.s - r - h);
            double hi = target.s + r - h;
            if (hi >= 0.0 && lo < seg) {
                double t = t_acc + lo;
                if (t <= horizon) return t;
                break;
            }
        }
        t_acc += seg;
        q = step_nudged(S.base, q, nudges);
        h = 0.0;
    }
    throw NotHit(static_cast<long long>(horizon));
}

FlowLoglawReport flow_loglaw(const SuspensionFlow& S, FlowPoint target,
                             std::vector<double> radii, std::size_t samples,
                             double horizon, std::uint64_t seed, unsigned workers,
                             std::size_t burn_in) {
    if (radii.empty()) throw std::invalid_argument("need at least one radius");
    if (samples < 10) throw std::invalid_argument("need at least 10 samples");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon must be positive and finite");
    std::sort(radii.begin(), radii.end(), std::greater<>());
    if (!(radii.back() > 0.0)) throw std::invalid_argument("radii must be positive");
    check_target_off_cuts(S, target.q);
    double r_max = radii.front();
    if (!(target.s - r_max >= 0.0) || !(target.s + r_max <= S.roof_at(target.q)))
        throw std::invalid_argument("target ball must clear the floor and the roof");
    if (S.params) {
        const auto& sp = *S.params;
        if (!(sp.l1 + sp.l2 < 0.0))
            throw InvalidParams("strong contraction must dominate the expansion (l1 + l2 < 0)");
    }
    std::size_t nr = radii.size();

    std::vector<std::vector<double>> flow_tau(nr, std::vector<double>(samples, kInf));
    std::vector<std::vector<double>> sect_tau(nr, std::vector<double>(samples, kInf));
    parallel_for(samples, workers, [&](std::size_t s) {
        auto stream = S.base.stream(seed, s);
        for (std::size_t k = 0; k < burn_in; ++k) stream->advance();
        Point2 q = stream->point();
        double t_acc = 0.0;
        double h = 0.0; // heights restart at 0 after each crossing
        std::size_t next_flow = 0, next_sect = 0;
        long long n = 0;
        while ((next_flow < nr || next_sect < nr) && t_acc <= horizon) {
            double seg = S.roof_at(q) - h;
            double d = dist_sup(q, target.q);
            while (next_flow < nr && d <= radii[next_flow]) {
                double lo = std::max(0.0, target.s - radii[next_flow] - h);
                double hi = target.s + radii[next_flow] - h;
                if (!(hi >= 0.0 && lo < seg && t_acc + lo <= horizon)) break;
                flow_tau[next_flow][s] = t_acc + lo;
                ++next_flow;
            }
            if (n >= 1) {
                while (next_sect < nr && d <= radii[next_sect]) {
                    sect_tau[next_sect][s] = static_cast<double>(n);
                    ++next_sect;
                }
            }
            t_acc += seg;
            stream->advance();
            q = stream->point();
            h = 0.0;
            ++n;
        }
    });

    FlowLoglawReport rep;
    rep.radii = radii;
    std::vector<double> xs, flow_med, sect_med;
    for (std::size_t j = 0; j < nr; ++j) {
        std::size_t miss_f = 0, miss_s = 0;
        std::vector<double> logs_f, logs_s;
        for (std::size_t s = 0; s < samples; ++s) {
            if (std::isfinite(flow_tau[j][s]))
                logs_f.push_back(std::log(flow_tau[j][s]));
            else
                ++miss_f;
            if (std::isfinite(sect_tau[j][s]))
                logs_s.push_back(std::log(sect_tau[j][s]));
            else
                ++miss_s;
        }
        double frac_f = static_cast<double>(miss_f) / static_cast<double>(samples);
        double frac_s = static_cast<double>(miss_s) / static_cast<double>(samples);
        rep.miss_fraction.push_back(frac_f);
        if (frac_f > 0.2 || frac_s > 0.2) continue;
        double med_f = median_with_censoring(std::move(logs_f), samples);
        double med_s = median_with_censoring(std::move(logs_s), samples);
        if (!std::isfinite(med_f) || !std::isfinite(med_s)) continue;
        rep.kept_radii.push_back(radii[j]);
        rep.median_log_tau.push_back(med_f);
        rep.section_median_log.push_back(med_s);
        xs.push_back(-std::log(radii[j]));
        flow_med.push_back(med_f);
        sect_med.push_back(med_s);
    }
    if (rep.kept_radii.empty()) throw AllMissing("every radius exceeded the miss budget");
    if (rep.kept_radii.size() >= 2) {
        auto ff = least_squares(xs, flow_med);
        rep.slope = ff.slope;
        rep.r2 = ff.r2;
        auto sf = least_squares(xs, sect_med);
        rep.section_slope = sf.slope;
        rep.section_r2 = sf.r2;
    }
    return rep;
}

} // namespace singhyp
