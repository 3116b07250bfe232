#include "hodokit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hodokit/errors.hpp"

namespace hodokit {

namespace {

constexpr double kStateCap = 1e120;  // abort before cosh-type growth overflows

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output weights of the method's quartic interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

FourVector rhs(double coupling_ratio, double theta, const FourVector& w) {
    return coupling_ratio * omega_apply(theta, w);
}

double mixed_error_norm(const FourVector& err, const FourVector& y0, const FourVector& y1,
                        double atol, double rtol) {
    const auto component = [&](double e, double v0, double v1) {
        const double sk = atol + rtol * std::max(std::abs(v0), std::abs(v1));
        return (e / sk) * (e / sk);
    };
    const double s = component(err.t, y0.t, y1.t) + component(err.x, y0.x, y1.x) +
                     component(err.y, y0.y, y1.y) + component(err.z, y0.z, y1.z);
    return std::sqrt(s / 4.0);
}

void validate(const IntegratorConfig& cfg) {
    const auto tol_ok = [](double t) { return t > 0.0 && t <= 1e-2; };
    if (!tol_ok(cfg.rel_tol) || !tol_ok(cfg.abs_tol))
        throw std::invalid_argument("IntegratorConfig: tolerances must lie in (0, 1e-2]");
    if (!(cfg.max_step > 0.0))
        throw std::invalid_argument("IntegratorConfig: max_step must be positive");
    if (cfg.max_steps <= 0)
        throw std::invalid_argument("IntegratorConfig: max_steps must be positive");
    if (cfg.fixed_step < 0.0)
        throw std::invalid_argument("IntegratorConfig: fixed_step must be non-negative");
}

}  // namespace

FourVector DenseSolution::operator()(double theta) const {
    const double lo = std::min(lo_, hi_);
    const double hi = std::max(lo_, hi_);
    const double slack = 1e-9 * (1.0 + hi - lo);
    if (theta < lo - slack || theta > hi + slack)
        throw std::out_of_range("DenseSolution: theta outside the integrated span");
    const double th = std::clamp(theta, lo, hi);

    // Locate the accepted step containing th (segments are ordered in the
    // direction of integration).
    std::size_t idx;
    if (forward_) {
        auto it = std::upper_bound(segments_.begin(), segments_.end(), th,
                                   [](double v, const Segment& s) { return v < s.t0; });
        idx = it == segments_.begin() ? 0 : static_cast<std::size_t>(it - segments_.begin() - 1);
    } else {
        auto it = std::upper_bound(segments_.begin(), segments_.end(), th,
                                   [](double v, const Segment& s) { return v > s.t0; });
        idx = it == segments_.begin() ? 0 : static_cast<std::size_t>(it - segments_.begin() - 1);
    }
    const Segment& s = segments_[idx];
    const double sfrac = (th - s.t0) / s.h;
    const double s1 = 1.0 - sfrac;
    // rc1 + s*(rc2 + s1*(rc3 + s*(rc4 + s1*rc5)))
    const FourVector inner = s.rc3 + sfrac * (s.rc4 + s1 * s.rc5);
    return s.rc1 + sfrac * (s.rc2 + s1 * inner);
}

DenseSolution integrate(const SystemParams& p, const FourVector& w_start, Interval span,
                        const IntegratorConfig& cfg) {
    validate(cfg);
    if (!w_start.is_finite()) throw UnphysicalParameters("integrate: non-finite start vector");
    if (!std::isfinite(span.lo) || !std::isfinite(span.hi))
        throw std::invalid_argument("integrate: span must be finite");
    const double length = std::abs(span.hi - span.lo);
    if (length > 200.0) throw std::invalid_argument("integrate: |span| must not exceed 200 rad");

    const double k = p.coupling_ratio();
    const double dir = span.hi >= span.lo ? 1.0 : -1.0;

    DenseSolution sol;
    sol.lo_ = span.lo;
    sol.hi_ = span.hi;
    sol.forward_ = dir > 0.0;

    double t = span.lo;
    double tcomp = 0.0;  // Neumaier carry of the angle accumulation
    FourVector y = w_start;
    FourVector comp{};  // Neumaier carry of the state update
    FourVector k1 = rhs(k, t, y);

    if (length == 0.0) {
        DenseSolution::Segment s{t, dir, y, {}, {}, {}, {}};
        sol.segments_.push_back(s);
        return sol;
    }

    double h = cfg.fixed_step > 0.0 ? cfg.fixed_step : std::min(cfg.max_step, length);
    h = std::min(h, length) * dir;

    long taken = 0;
    bool done = false;
    while (!done) {
        if (++taken > cfg.max_steps)
            throw NonConvergence("integrate: step budget exhausted");
        if (dir * (t + h - span.hi) >= 0.0) {
            h = span.hi - t;
            done = true;
        }

        const FourVector k2 = rhs(k, t + c2 * h, y + h * (a21 * k1));
        const FourVector k3 = rhs(k, t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const FourVector k4 = rhs(k, t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const FourVector k5 =
            rhs(k, t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const FourVector k6 =
            rhs(k, t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const FourVector incr = h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        // compensated y + incr: keeps the accumulation floor near eps instead
        // of n_steps * eps (the fixed-step order study lives below the naive floor)
        const auto fold = [](double base, double d, double carry, double& carry_out) {
            const double dd = d + carry;
            const double sum = base + dd;
            carry_out = std::abs(base) >= std::abs(dd) ? (base - sum) + dd : (dd - sum) + base;
            return sum;
        };
        FourVector y1, c1;
        y1.t = fold(y.t, incr.t, comp.t, c1.t);
        y1.x = fold(y.x, incr.x, comp.x, c1.x);
        y1.y = fold(y.y, incr.y, comp.y, c1.y);
        y1.z = fold(y.z, incr.z, comp.z, c1.z);
        const FourVector k7 = rhs(k, t + h, y1);

        const FourVector errv =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = mixed_error_norm(errv, y, y1, cfg.abs_tol, cfg.rel_tol);
        if (!std::isfinite(err)) err = 1e10;

        if (cfg.fixed_step > 0.0 || err <= 1.0) {
            if (y1.max_abs() > kStateCap)
                throw RangeOverflow("integrate: state magnitude exceeded 1e120");
            DenseSolution::Segment s;
            s.t0 = t;
            s.h = h;
            s.rc1 = y;
            s.rc2 = y1 - y;
            s.rc3 = h * k1 - s.rc2;
            s.rc4 = s.rc2 - h * k7 - s.rc3;
            s.rc5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            sol.segments_.push_back(s);
            t = fold(t, h, tcomp, tcomp);
            y = y1;
            comp = c1;
            k1 = k7;
        } else {
            done = false;
        }

        if (!done && cfg.fixed_step == 0.0) {
            const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= fac;
            if (std::abs(h) > cfg.max_step) h = cfg.max_step * dir;
            if (std::abs(h) < 1e-14 * (1.0 + std::abs(t)))
                throw NonConvergence("integrate: step size underflow");
        } else if (!done) {
            h = cfg.fixed_step * dir;
        }
    }
    return sol;
}

ConservationReport conservation_report(const SystemParams& p, const DenseSolution& solution,
                                       const std::vector<SolutionFn>& probes, int n_samples) {
    if (n_samples < 2) throw std::invalid_argument("conservation_report: need n_samples >= 2");
    const double a = solution.span_lo();
    const double b = solution.span_hi();

    ConservationReport rep;
    rep.drift.assign(probes.size(), 0.0);
    std::vector<double> ref(probes.size());
    const FourVector w0 = solution(a);
    for (std::size_t j = 0; j < probes.size(); ++j) ref[j] = minkowski_dot(w0, probes[j](a));

    for (int i = 0; i < n_samples; ++i) {
        const double th = a + (b - a) * static_cast<double>(i) / (n_samples - 1);
        const FourVector w = solution(th);
        for (std::size_t j = 0; j < probes.size(); ++j) {
            const double d = std::abs(minkowski_dot(w, probes[j](th)) - ref[j]);
            rep.drift[j] = std::max(rep.drift[j], d);
        }
    }
    for (double d : rep.drift) rep.max_drift = std::max(rep.max_drift, d);
    return rep;
}

double find_utheta_root(const SystemParams& p, Interval bracket) {
    double a = bracket.lo, b = bracket.hi;
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw BracketError("find_utheta_root: bracket must be a finite ordered interval");
    double fa = transverse_velocity(p, a);
    double fb = transverse_velocity(p, b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb))
        throw BracketError("find_utheta_root: u_theta does not change sign over the bracket");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double fm = transverse_velocity(p, mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(fa)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        if (b - a < 1e-15 * std::max(1.0, std::abs(a) + std::abs(b))) break;
    }
    return 0.5 * (a + b);
}

}  // namespace hodokit
