#include "singhyp/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace singhyp {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

PiecewiseExpandingMap::PiecewiseExpandingMap(std::string family, std::vector<double> interior_cuts,
                                             std::vector<Branch> branches, double expansion_floor,
                                             bool dyadic_shift)
    : family_(std::move(family)), cuts_(std::move(interior_cuts)),
      branches_(std::move(branches)), expansion_floor_(expansion_floor),
      dyadic_shift_(dyadic_shift) {
    if (branches_.size() != cuts_.size() + 1)
        throw InvalidParams("branch count must be cut count + 1");
    if (!std::is_sorted(cuts_.begin(), cuts_.end()))
        throw InvalidParams("cuts must be strictly increasing");
    for (double c : cuts_)
        if (!(c > 0.0 && c < 1.0)) throw InvalidParams("interior cuts must lie in (0,1)");
    if (!(expansion_floor_ > 1.0))
        throw InvalidParams("inf |T'| must exceed 1, got " + std::to_string(expansion_floor_));
    edges_.reserve(cuts_.size() + 2);
    edges_.push_back(0.0);
    edges_.insert(edges_.end(), cuts_.begin(), cuts_.end());
    edges_.push_back(1.0);
}

int PiecewiseExpandingMap::branch_index(double x) const {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("map evaluated outside [0,1]");
    for (double c : cuts_)
        if (std::abs(x - c) <= kCutTol)
            throw UndefinedAtCut("point within cut tolerance of " + std::to_string(c));
    auto it = std::upper_bound(cuts_.begin(), cuts_.end(), x);
    return static_cast<int>(it - cuts_.begin());
}

double PiecewiseExpandingMap::eval(double x) const {
    return branches_[branch_index(x)].eval(x);
}

double PiecewiseExpandingMap::deriv(double x) const {
    return branches_[branch_index(x)].deriv(x);
}

std::vector<Preimage> PiecewiseExpandingMap::preimages(double y) const {
    if (!(y >= 0.0 && y <= 1.0))
        throw std::invalid_argument("preimage query outside [0,1]");
    std::vector<Preimage> out;
    for (std::size_t b = 0; b < branches_.size(); ++b) {
        const Branch& br = branches_[b];
        if (y < br.img_lo || y > br.img_hi) continue;
        double x = br.inverse ? br.inverse(y) : bisect_branch(br, y);
        x = std::min(br.hi, std::max(br.lo, x));
        out.push_back({static_cast<int>(b), x, std::abs(br.deriv(x))});
    }
    return out;
}

double bisect_branch(const Branch& b, double y, double tol, int max_iter) {
    double lo = b.lo, hi = b.hi;
    auto val = [&](double x) { return b.increasing ? b.eval(x) - y : y - b.eval(x); };
    for (int i = 0; i < max_iter; ++i) {
        double mid = 0.5 * (lo + hi);
        double v = val(mid);
        if (std::abs(b.eval(mid) - y) <= tol) return mid;
        if (v < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= tol) break;
    }
    return 0.5 * (lo + hi);
}

SkewProductMap::SkewProductMap(std::string family, PiecewiseExpandingMap base, FiberFn g,
                               FiberFn g_dx, FiberFn g_dy, double contraction)
    : family_(std::move(family)), base_(std::move(base)), g_(std::move(g)),
      g_dx_(std::move(g_dx)), g_dy_(std::move(g_dy)), lambda_(contraction) {
    if (!(lambda_ > 0.0 && lambda_ < 1.0))
        throw InvalidParams("fiber contraction rate must lie in (0,1)");
}

Point2 SkewProductMap::eval(Point2 p) const {
    if (!(p.y >= 0.0 && p.y <= 1.0))
        throw std::invalid_argument("fiber coordinate outside [0,1]");
    int b = base_.branch_index(p.x);
    return {base_.eval_on_branch(b, p.x), g_(b, p.x, p.y)};
}

double SkewProductMap::fiber(double x, double y) const {
    return g_(base_.branch_index(x), x, y);
}

double SkewProductMap::fiber_dx(double x, double y) const {
    return g_dx_(base_.branch_index(x), x, y);
}

double SkewProductMap::fiber_dy(double x, double y) const {
    return g_dy_(base_.branch_index(x), x, y);
}

namespace {

// Plain floating-point orbit: adequate away from binary-shift arithmetic.
// Points inside a cut dead zone are nudged kNudge toward the branch interior
// and the event is counted.
class FpStream final : public OrbitStream {
  public:
    FpStream(const SkewProductMap* F, std::uint64_t seed, std::uint64_t stream_id) : F_(F) {
        Rng rng(seed, stream_id);
        p_.x = rng.next_double();
        p_.y = rng.next_double();
        dodge_cut();
    }

    Point2 point() const override { return p_; }

    void advance() override {
        p_ = F_->eval(p_);
        p_.x = clamp01(p_.x);
        p_.y = clamp01(p_.y);
        dodge_cut();
    }

    long long nudges() const override { return nudges_; }

  private:
    void dodge_cut() {
        for (double c : F_->base().interior_cuts()) {
            if (std::abs(p_.x - c) <= kCutTol) {
                p_.x = (p_.x >= c) ? c + kNudge : c - kNudge;
                ++nudges_;
            }
        }
    }

    const SkewProductMap* F_;
    Point2 p_;
    long long nudges_ = 0;
};

// Exact orbit of a random point under a binary-shift base. Doubles are dyadic
// rationals, so naive iteration of 2x mod 1 collapses to 0 within 53 steps;
// instead keep a 53-bit window over an i.i.d. bit stream and shift one fresh
// bit in per step. The fiber coordinate updates through the branch picked by
// the window's top bit.
class BitReservoirStream final : public OrbitStream {
  public:
    BitReservoirStream(const SkewProductMap* F, std::uint64_t seed, std::uint64_t stream_id)
        : F_(F), rng_(seed, stream_id) {
        w_ = rng_.next_u64() & kMask;
        y_ = rng_.next_double();
    }

    Point2 point() const override { return {static_cast<double>(w_) * 0x1.0p-53, y_}; }

    void advance() override {
        int branch = static_cast<int>((w_ >> 52) & 1ULL);
        Point2 p = point();
        y_ = clamp01(F_->fiber_on_branch(branch, p.x, y_));
        w_ = ((w_ << 1) | static_cast<std::uint64_t>(rng_.next_bit())) & kMask;
    }

    long long nudges() const override { return 0; }

  private:
    static constexpr std::uint64_t kMask = (1ULL << 53) - 1ULL;
    const SkewProductMap* F_;
    Rng rng_;
    std::uint64_t w_;
    double y_;
};

} // namespace

std::unique_ptr<OrbitStream> SkewProductMap::stream(std::uint64_t seed, std::uint64_t stream_id) const {
    if (base_.dyadic_shift())
        return std::make_unique<BitReservoirStream>(this, seed, stream_id);
    return std::make_unique<FpStream>(this, seed, stream_id);
}

PiecewiseExpandingMap make_doubling() {
    Branch b0{0.0, 0.5,
              [](double x) { return 2.0 * x; },
              [](double) { return 2.0; },
              [](double y) { return 0.5 * y; },
              true, 0.0, 1.0};
    Branch b1{0.5, 1.0,
              [](double x) { return 2.0 * x - 1.0; },
              [](double) { return 2.0; },
              [](double y) { return 0.5 * (y + 1.0); },
              true, 0.0, 1.0};
    return PiecewiseExpandingMap("doubling", {0.5}, {b0, b1}, 2.0, /*dyadic_shift=*/true);
}

PiecewiseExpandingMap make_tent() {
    Branch b0{0.0, 0.5,
              [](double x) { return 2.0 * x; },
              [](double) { return 2.0; },
              [](double y) { return 0.5 * y; },
              true, 0.0, 1.0};
    Branch b1{0.5, 1.0,
              [](double x) { return 2.0 - 2.0 * x; },
              [](double) { return -2.0; },
              [](double y) { return 1.0 - 0.5 * y; },
              false, 0.0, 1.0};
    return PiecewiseExpandingMap("tent", {0.5}, {b0, b1}, 2.0);
}

PiecewiseExpandingMap make_lorenz_base(double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw InvalidParams("base exponent must lie in (1/2,1); inf |T'| = 2*alpha");
    Branch left{0.0, 0.5,
                [alpha](double x) { return 1.0 - std::pow(1.0 - 2.0 * x, alpha); },
                [alpha](double x) { return 2.0 * alpha * std::pow(1.0 - 2.0 * x, alpha - 1.0); },
                [alpha](double y) { return 0.5 * (1.0 - std::pow(1.0 - y, 1.0 / alpha)); },
                true, 0.0, 1.0};
    Branch right{0.5, 1.0,
                 [alpha](double x) { return std::pow(2.0 * x - 1.0, alpha); },
                 [alpha](double x) { return 2.0 * alpha * std::pow(2.0 * x - 1.0, alpha - 1.0); },
                 [alpha](double y) { return 0.5 * (1.0 + std::pow(y, 1.0 / alpha)); },
                 true, 0.0, 1.0};
    return PiecewiseExpandingMap("lorenz-base", {0.5}, {left, right}, 2.0 * alpha);
}

SkewProductMap make_lorenz_model(const LorenzModelParams& p) {
    if (!(p.alpha > 0.5 && p.alpha < 1.0))
        throw InvalidParams("alpha must lie in (1/2,1)");
    if (!(p.beta >= 1.0))
        throw InvalidParams("beta must be >= 1 so the fiber x-derivative stays bounded");
    if (!(p.kappa > 0.0 && p.kappa <= 0.25))
        throw InvalidParams("kappa must lie in (0, 1/4]");
    double beta = p.beta, kappa = p.kappa;
    auto g = [kappa, beta](int b, double x, double y) {
        double s = (b == 1) ? 1.0 : -1.0;
        double w = std::abs(2.0 * x - 1.0);
        return 0.5 + 0.25 * s + kappa * (y - 0.5) * std::pow(w, beta);
    };
    auto g_dx = [kappa, beta](int, double x, double y) {
        double w = std::abs(2.0 * x - 1.0);
        return kappa * (y - 0.5) * beta * std::pow(w, beta - 1.0) * 2.0 * sgn(2.0 * x - 1.0);
    };
    auto g_dy = [kappa, beta](int, double x, double) {
        return kappa * std::pow(std::abs(2.0 * x - 1.0), beta);
    };
    return SkewProductMap("lorenz", make_lorenz_base(p.alpha), g, g_dx, g_dy, p.kappa);
}

SkewProductMap make_affine_skew() {
    // Disjoint strip images [0,1/3] and [2/3,1]; fiber rate exactly 1/3.
    auto g = [](int b, double, double y) { return (y + 2.0 * b) / 3.0; };
    auto g_dx = [](int, double, double) { return 0.0; };
    auto g_dy = [](int, double, double) { return 1.0 / 3.0; };
    return SkewProductMap("affine-skew", make_doubling(), g, g_dx, g_dy, 1.0 / 3.0);
}

double leaf_diameter_decay(const SkewProductMap& F, double x0, int n, std::size_t leaf_points) {
    if (n < 0) throw std::invalid_argument("iterate count must be nonnegative");
    if (leaf_points < 2) throw std::invalid_argument("need at least 2 leaf points");
    std::vector<double> ys(leaf_points);
    for (std::size_t j = 0; j < leaf_points; ++j)
        ys[j] = static_cast<double>(j) / static_cast<double>(leaf_points - 1);
    double x = x0;
    for (int k = 0; k < n; ++k) {
        int b;
        try {
            b = F.base().branch_index(x);
        } catch (const UndefinedAtCut&) {
            throw OrbitHitsCut("leaf base orbit hit a cut at step " + std::to_string(k));
        }
        for (auto& y : ys) y = F.fiber_on_branch(b, x, y);
        x = clamp01(F.base().eval_on_branch(b, x));
    }
    auto [mn, mx] = std::minmax_element(ys.begin(), ys.end());
    return *mx - *mn;
}

} // namespace singhyp
