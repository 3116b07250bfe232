#include "hodokit/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "hodokit/errors.hpp"

namespace hodokit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kEndpointClip = 1e-6;  // inward clip at u_theta = 0 endpoints
constexpr double kCollapseCap = 30.0;   // cap on |beta_bar * theta'| when sampling collapse branches
constexpr double kRationalTol = 1e-9;

// Best rational approximation p/q of x with q <= max_den, via continued-
// fraction convergents plus the terminal semiconvergent. Returns the first
// candidate within tol. With tol < 1/(2 max_den^2) any admissible match is
// found this way.
std::optional<ClosedOrbitFraction> best_rational(double x, long max_den, double tol) {
    if (max_den < 1 || !(x > 0.0)) return std::nullopt;
    long h_prev = 1, k_prev = 0;
    long h = static_cast<long>(std::floor(x)), k = 1;
    double frac = x - std::floor(x);
    for (int it = 0; it < 64; ++it) {
        if (k <= max_den && std::abs(x - static_cast<double>(h) / static_cast<double>(k)) < tol) {
            const long g = std::gcd(std::abs(h), k);
            return ClosedOrbitFraction{h / g, k / g};
        }
        if (frac < 1e-18) break;
        const double inv = 1.0 / frac;
        const double af = std::floor(inv);
        if (af > 9e17) break;
        const long a = static_cast<long>(af);
        frac = inv - af;
        const long h_next = a * h + h_prev;
        const long k_next = a * k + k_prev;
        if (k_next > max_den) {
            const long tcut = (max_den - k_prev) / k;
            if (tcut > 0) {
                const long hs = tcut * h + h_prev;
                const long ks = tcut * k + k_prev;
                if (std::abs(x - static_cast<double>(hs) / static_cast<double>(ks)) < tol) {
                    const long g = std::gcd(std::abs(hs), ks);
                    return ClosedOrbitFraction{hs / g, ks / g};
                }
            }
            break;
        }
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    return std::nullopt;
}

// Half-width of the built-in sampling window around theta0 when an interval
// endpoint is infinite.
double cap_offset(const SystemParams& p) {
    switch (p.regime) {
        case Regime::SpaceLike: return kCollapseCap / p.beta_bar;
        case Regime::LightLike: return kCollapseCap;
        case Regime::TimeLike: return 2.0 * kPi / p.beta;
    }
    return kCollapseCap;
}

bool collapse_family(const SystemParams& p) {
    return p.regime != Regime::TimeLike && p.attractive();
}

template <class F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double lm = 0.5 * (a + mid);
    const double rm = 0.5 * (mid + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // Deep panels near a u_theta root sit on the integrand's own roundoff
    // noise (u_theta is a cancellation of O(1) terms there); once the
    // Richardson correction is below ~2e-9 of the panel value, subdividing
    // refines noise, not signal.
    const bool noise_floor = depth < 34 && std::abs(delta) <= 2e-9 * (std::abs(left) + std::abs(right));
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol || noise_floor)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate_segment(F&& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double fa = f(lo);
    const double fb = f(hi);
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = rel_tol * std::max(1.0, std::abs(whole));
    return sign * adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol, 48);
}

}  // namespace

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

const char* to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::CircularBound: return "CircularBound";
        case OrbitClass::PrecessingBound: return "PrecessingBound";
        case OrbitClass::ClosedBound: return "ClosedBound";
        case OrbitClass::UnboundScatter: return "UnboundScatter";
        case OrbitClass::SpiralCollapse: return "SpiralCollapse";
        case OrbitClass::SpiralBurst: return "SpiralBurst";
        case OrbitClass::BoundSpiralCollapse: return "BoundSpiralCollapse";
    }
    return "?";
}

double transverse_velocity(const SystemParams& p, double theta) {
    return transverse_component(hodograph(p, theta), theta);
}

double radius(const SystemParams& p, double theta) {
    const double ut = transverse_velocity(p, theta);
    if (ut <= 0.0)
        throw OutsideAdmissibleRange("radius: u_theta <= 0, no spatial point at this angle");
    return p.ell / (p.m * ut);
}

std::optional<double> psi_infinity(const SystemParams& p) {
    if (p.regime != Regime::TimeLike || p.E < p.m) return std::nullopt;
    const double arg = std::sqrt(p.E * p.E - p.m * p.m) / (p.m * p.B_o);
    return std::asin(std::clamp(arg, 0.0, 1.0));
}

std::optional<double> theta_infinity(const SystemParams& p) {
    const double E_m = p.E / p.m;
    if (E_m < 1.0) return std::nullopt;
    switch (p.regime) {
        case Regime::TimeLike: {
            const double psi = psi_infinity(p).value();
            return p.attractive() ? (kPi - psi) / p.beta : psi / p.beta;
        }
        case Regime::LightLike:
            return std::sqrt(E_m * E_m - 1.0) / E_m;
        case Regime::SpaceLike: {
            const double arg = std::abs(p.kappa) * p.E / (p.ell * p.Lambda);
            return std::acosh(std::max(arg, 1.0)) / p.beta_bar;
        }
    }
    return std::nullopt;
}

std::vector<Interval> angular_range(const SystemParams& p) {
    const bool att = p.attractive();
    if (p.regime == Regime::TimeLike) {
        if (att && p.E < p.m) return {{-kInf, kInf}};
        const auto ti = theta_infinity(p);
        if (!ti || *ti <= 0.0) return {};  // repulsion below/at rest energy
        return {{p.theta0 - *ti, p.theta0 + *ti}};
    }
    if (att) {
        if (p.E < p.m) return {{-kInf, kInf}};
        const double ti = theta_infinity(p).value();
        return {{-kInf, p.theta0 - ti}, {p.theta0 + ti, kInf}};
    }
    if (p.E <= p.m) return {};
    const double ti = theta_infinity(p).value();
    return {{p.theta0 - ti, p.theta0 + ti}};
}

TurningRadii turning_points(const SystemParams& p) {
    if (angular_range(p).empty())
        throw NoTrajectory("turning_points: empty admissible range");
    const double m = p.m, E = p.E, l = p.ell, kap = p.kappa;
    const double ak = std::abs(kap), L = p.Lambda;
    switch (p.regime) {
        case Regime::TimeLike:
            if (p.attractive() && E < m)
                return {(ak * E - l * L) / (m * m - E * E), (ak * E + l * L) / (m * m - E * E)};
            // Unbound closest approach; this form stays finite at E = m.
            return {(l * l - kap * kap) / (l * L - kap * E), kInf};
        case Regime::LightLike:
            if (!p.attractive()) return {2.0 * l * E / (E * E - m * m), kInf};
            if (E < m) return {0.0, 2.0 * E * l / (m * m - E * E)};
            return {0.0, kInf};
        case Regime::SpaceLike:
            if (!p.attractive()) return {(l * L + kap * E) / (E * E - m * m), kInf};
            if (E < m) return {0.0, (l * L + ak * E) / (m * m - E * E)};
            return {0.0, kInf};
    }
    throw NoTrajectory("turning_points: unreachable");
}

std::optional<ClosedOrbitFraction> is_closed_orbit(const SystemParams& p, long max_den) {
    if (p.regime != Regime::TimeLike || !p.attractive() || p.E >= p.m) return std::nullopt;
    return best_rational(p.beta, max_den, kRationalTol);
}

double closed_orbit_period(const SystemParams& p, const ClosedOrbitFraction& f) {
    (void)p;
    return 2.0 * kPi * static_cast<double>(f.den);
}

OrbitClass classify_orbit(const SystemParams& p, Branch branch) {
    if (angular_range(p).empty())
        throw NoTrajectory("classify_orbit: empty admissible range");
    switch (p.regime) {
        case Regime::TimeLike:
            if (p.E >= p.m) return OrbitClass::UnboundScatter;
            if (p.B_o == 0.0) return OrbitClass::CircularBound;
            return is_closed_orbit(p) ? OrbitClass::ClosedBound : OrbitClass::PrecessingBound;
        case Regime::LightLike:
        case Regime::SpaceLike:
            if (!p.attractive()) return OrbitClass::UnboundScatter;
            if (p.E < p.m) return OrbitClass::BoundSpiralCollapse;
            return branch == Branch::Negative ? OrbitClass::SpiralBurst
                                              : OrbitClass::SpiralCollapse;
    }
    throw NoTrajectory("classify_orbit: unreachable");
}

std::pair<FourVector, FourVector> endpoint_velocities(const SystemParams& p) {
    if (classify_orbit(p) != OrbitClass::UnboundScatter)
        throw NoTrajectory("endpoint_velocities: configuration is not an unbound scatter");
    const double ti = theta_infinity(p).value();
    const double speed = std::sqrt(p.E * p.E - p.m * p.m) / p.m;
    const auto endpoint = [&](double sign) {
        const PolarFrame f = polar_frame(p.theta0 + sign * ti);
        return FourVector{p.E / p.m, sign * speed * f.r_hat.x, sign * speed * f.r_hat.y, 0.0};
    };
    return {endpoint(-1.0), endpoint(+1.0)};
}

std::optional<double> scattering_angle(const SystemParams& p) {
    try {
        if (classify_orbit(p) != OrbitClass::UnboundScatter) return std::nullopt;
    } catch (const NoTrajectory&) {
        return std::nullopt;
    }
    return kPi - 2.0 * theta_infinity(p).value();
}

TimeCurves time_reparametrization(const SystemParams& p, std::span<const double> grid) {
    const std::size_t n = grid.size();
    if (n < 2) throw std::invalid_argument("time_reparametrization: need at least two grid points");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(grid[i]))
            throw std::invalid_argument("time_reparametrization: non-finite grid point");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("time_reparametrization: grid must be strictly ascending");
    }
    // 1e-8 is the resolution below which a grid point counts as touching a
    // u_theta = 0 endpoint (the integrand ~ 1/u_theta^2 diverges there)
    for (std::size_t i = 0; i < n; ++i) {
        const double ut = transverse_velocity(p, grid[i]);
        if (ut <= -1e-8)
            throw OutsideAdmissibleRange("time_reparametrization: grid point outside admissible range");
        if (ut <= 1e-8)
            throw QuadratureDivergence("time_reparametrization: grid touches a u_theta = 0 endpoint");
        if (i > 0 && transverse_velocity(p, 0.5 * (grid[i - 1] + grid[i])) <= 0.0)
            throw OutsideAdmissibleRange("time_reparametrization: grid spans a forbidden gap");
    }

    const auto dtau = [&](double th) {
        const double ut = transverse_velocity(p, th);
        return p.ell / (p.m * ut * ut);
    };
    const auto dt = [&](double th) {
        const double ut = transverse_velocity(p, th);
        return hodograph(p, th).t * p.ell / (p.m * ut * ut);
    };

    std::vector<double> ctau(n, 0.0), ct(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        ctau[i] = ctau[i - 1] + integrate_segment(dtau, grid[i - 1], grid[i], 1e-12);
        ct[i] = ct[i - 1] + integrate_segment(dt, grid[i - 1], grid[i], 1e-12);
    }

    const double ref = (grid.front() < 0.0 && grid.back() > 0.0)
                           ? 0.0
                           : 0.5 * (grid.front() + grid.back());
    const auto below = std::upper_bound(grid.begin(), grid.end(), ref);
    const std::size_t j = below == grid.begin() ? 0 : static_cast<std::size_t>(below - grid.begin() - 1);
    const double tau_ref = ctau[j] + integrate_segment(dtau, grid[j], ref, 1e-12);
    const double t_ref = ct[j] + integrate_segment(dt, grid[j], ref, 1e-12);

    TimeCurves out;
    out.tau.resize(n);
    out.t.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.tau[i] = ctau[i] - tau_ref;
        out.t[i] = ct[i] - t_ref;
    }
    return out;
}

namespace {

// Resolve the realized finite sampling window inside one admissible interval.
struct Window {
    double lo;
    double hi;
    double centre;  // grading centre for collapse branches
};

Window resolve_window(const SystemParams& p, Interval iv, const std::vector<Interval>& range) {
    // pick the admissible interval the request points into
    double probe;
    if (std::isfinite(iv.lo) && std::isfinite(iv.hi)) probe = 0.5 * (iv.lo + iv.hi);
    else if (std::isfinite(iv.lo)) probe = iv.lo + 1.0;
    else if (std::isfinite(iv.hi)) probe = iv.hi - 1.0;
    else probe = p.theta0;
    const Interval* host = nullptr;
    for (const auto& r : range)
        if (r.contains(probe)) { host = &r; break; }
    if (!host) {
        // the probe may sit just outside a clipped endpoint; retry with ends
        for (const auto& r : range)
            if (iv.lo < r.hi && iv.hi > r.lo) { host = &r; break; }
    }
    if (!host) throw OutsideAdmissibleRange("sample_trajectory: interval misses the admissible range");

    const double cap = cap_offset(p);
    double lo = std::max(iv.lo, host->lo);
    double hi = std::min(iv.hi, host->hi);
    double centre = p.theta0;

    // endpoints sitting on a u_theta = 0 root get clipped inward
    if (!std::isfinite(lo)) lo = std::min(centre, hi) - cap;
    else if (lo == host->lo || transverse_velocity(p, lo) <= 0.0) lo += kEndpointClip;
    if (!std::isfinite(hi)) hi = std::max(centre, lo) + cap;
    else if (hi == host->hi || transverse_velocity(p, hi) <= 0.0) hi -= kEndpointClip;
    if (!(lo < hi)) throw OutsideAdmissibleRange("sample_trajectory: window collapsed to nothing");

    if (std::isfinite(host->lo)) centre = lo;        // collapse branch grows to the right
    else if (std::isfinite(host->hi)) centre = hi;   // burst branch grows to the left
    else centre = (p.theta0 > lo && p.theta0 < hi) ? p.theta0 : 0.5 * (lo + hi);
    return {lo, hi, centre};
}

std::vector<double> make_grid(const SystemParams& p, const Window& w, int n) {
    std::vector<double> grid(static_cast<std::size_t>(n));
    if (collapse_family(p)) {
        // theta_k = centre + sinh(s_k): log-like grading towards either cap so
        // the exponential growth of u_theta stays resolved
        const double s_lo = -std::asinh(w.centre - w.lo);
        const double s_hi = std::asinh(w.hi - w.centre);
        for (int i = 0; i < n; ++i) {
            const double s = s_lo + (s_hi - s_lo) * static_cast<double>(i) / (n - 1);
            grid[static_cast<std::size_t>(i)] = w.centre + std::sinh(s);
        }
        grid.front() = w.lo;
        grid.back() = w.hi;
    } else {
        for (int i = 0; i < n; ++i)
            grid[static_cast<std::size_t>(i)] =
                w.lo + (w.hi - w.lo) * static_cast<double>(i) / (n - 1);
    }
    return grid;
}

}  // namespace

std::vector<HodographSample> sample_trajectory(const SystemParams& p, Interval iv, int n) {
    if (n < 2) throw std::invalid_argument("sample_trajectory: need n >= 2");
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("sample_trajectory: empty interval");
    const auto range = angular_range(p);
    if (range.empty()) throw NoTrajectory("sample_trajectory: no admissible range");

    const Window w = resolve_window(p, iv, range);
    const std::vector<double> grid = make_grid(p, w, n);
    for (double th : grid)
        if (transverse_velocity(p, th) <= 0.0)
            throw OutsideAdmissibleRange("sample_trajectory: grid point outside admissible range");

    const TimeCurves times = time_reparametrization(p, grid);

    std::vector<HodographSample> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double th = grid[i];
        HodographSample& s = out[i];
        s.theta = th;
        s.u = hodograph(p, th);
        s.u_r = radial_component(s.u, th);
        s.u_theta = transverse_component(s.u, th);
        s.r = p.ell / (p.m * s.u_theta);
        s.x = s.r * std::cos(th);
        s.y = s.r * std::sin(th);
        s.tau = times.tau[i];
        s.t = times.t[i];
        s.energy_residual = scaled_energy_residual(p, s.u, th);
        s.norm_residual = scaled_norm_residual(s.u);
    }
    return out;
}

Interval default_window(const SystemParams& p, Branch branch) {
    const OrbitClass cls = classify_orbit(p, branch);
    const auto range = angular_range(p);
    switch (cls) {
        case OrbitClass::CircularBound:
            return {p.theta0, p.theta0 + 2.0 * kPi};
        case OrbitClass::ClosedBound: {
            const auto f = is_closed_orbit(p);
            return {p.theta0, p.theta0 + closed_orbit_period(p, *f)};
        }
        case OrbitClass::PrecessingBound:
            return {p.theta0, p.theta0 + 3.0 * (2.0 * kPi / p.beta)};
        case OrbitClass::UnboundScatter:
            return range.front();
        case OrbitClass::BoundSpiralCollapse:
            return {-kInf, kInf};
        case OrbitClass::SpiralCollapse:
            return range.back();
        case OrbitClass::SpiralBurst:
            return range.front();
    }
    throw NoTrajectory("default_window: unreachable");
}

TrajectoryReport trajectory_report(const SystemParams& p, Branch branch) {
    TrajectoryReport rep;
    rep.orbit_class = classify_orbit(p, branch);
    rep.theta_intervals = angular_range(p);
    const TurningRadii tr = turning_points(p);
    rep.r_min = tr.r_min;
    rep.r_max = tr.r_max;
    rep.theta_infinity = theta_infinity(p);
    rep.psi_infinity = psi_infinity(p);
    if (rep.orbit_class == OrbitClass::UnboundScatter)
        rep.endpoint_velocities = endpoint_velocities(p);
    rep.closed_orbit = is_closed_orbit(p);
    return rep;
}

}  // namespace hodokit
