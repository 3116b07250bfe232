#ifndef HODOKIT_TRAJECTORY_HPP
#define HODOKIT_TRAJECTORY_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hodokit/relativistic.hpp"

namespace hodokit {

/// Qualitative orbit type, resolved from regime, coupling sign and energy.
enum class OrbitClass {
    CircularBound,       // time-like minimum, B_o = 0
    PrecessingBound,     // time-like bound, irrational beta
    ClosedBound,         // time-like bound, beta = p/q
    UnboundScatter,      // finite arc between two r = infinity endpoints
    SpiralCollapse,      // semi-infinite branch falling into the centre
    SpiralBurst,         // semi-infinite branch erupting out of the centre
    BoundSpiralCollapse  // bounded r, spiralling into the centre as theta grows
};

const char* to_string(OrbitClass c);

/// Selector for the two disconnected theta-branches of attraction with E > m.
enum class Branch { Auto, Positive, Negative };

/// Open theta-interval; endpoints may be +-infinity.
struct Interval {
    double lo;
    double hi;
    bool finite() const;
    bool contains(double theta) const { return theta > lo && theta < hi; }
};

/// Reduced fraction p/q detected for beta (orbit closes after q full turns).
struct ClosedOrbitFraction {
    long num;
    long den;
};

struct TurningRadii {
    double r_min;
    double r_max;  // +infinity when the orbit is unbound
};

/// One sampled point of a trajectory run: the 4-velocity, its polar
/// components, the reconstructed spatial point, reparametrized times and
/// the two self-check residuals (scaled; see scaled_norm_residual).
struct HodographSample {
    double theta;
    FourVector u;
    double u_r;
    double u_theta;
    double r;
    double x;
    double y;
    double tau;
    double t;
    double energy_residual;
    double norm_residual;
};

/// Everything the classify report carries.
struct TrajectoryReport {
    OrbitClass orbit_class;
    std::vector<Interval> theta_intervals;
    double r_min;
    double r_max;
    std::optional<double> theta_infinity;
    std::optional<double> psi_infinity;
    std::optional<std::pair<FourVector, FourVector>> endpoint_velocities;
    std::optional<ClosedOrbitFraction> closed_orbit;
};

/// Transverse 4-velocity component u_theta(theta) of the closed-form
/// hodograph; the admissibility function of the spatial map.
double transverse_velocity(const SystemParams& p, double theta);

/// Orbit radius r = ell / (m u_theta). Throws OutsideAdmissibleRange when
/// u_theta <= 0 (the spatial point does not exist there).
double radius(const SystemParams& p, double theta);

/// Endpoint angle theta_infinity (offset from theta0) where u_theta -> 0,
/// when the configuration has one.
std::optional<double> theta_infinity(const SystemParams& p);

/// The arcsine angle psi_infinity of the time-like unbound endpoint formula.
std::optional<double> psi_infinity(const SystemParams& p);

/// Admissible open theta-intervals (absolute angles, theta0 included),
/// ordered by their left endpoint. Empty when no trajectory exists.
std::vector<Interval> angular_range(const SystemParams& p);

/// Closed-form turning radii. Throws NoTrajectory on an empty range.
TurningRadii turning_points(const SystemParams& p);

/// Orbit classification; branch selects between collapse (positive) and
/// burst (negative) when attraction with E >= m splits the range in two.
OrbitClass classify_orbit(const SystemParams& p, Branch branch = Branch::Auto);

/// Continued-fraction detection of rational beta = p/q with q <= max_den and
/// |beta - p/q| < 1e-9. Returns nullopt for irrational beta (within the
/// bound) and for configurations that are not time-like bound states.
std::optional<ClosedOrbitFraction> is_closed_orbit(const SystemParams& p, long max_den = 1000);

/// Smallest theta-period after which a closed bound orbit repeats (q full
/// turns, i.e. 2*pi*q). Requires a ClosedBound configuration.
double closed_orbit_period(const SystemParams& p, const ClosedOrbitFraction& f);

/// Asymptotic 4-velocities (u at -theta_inf, u at +theta_inf) of an unbound
/// scatter configuration. Throws NoTrajectory otherwise.
std::pair<FourVector, FourVector> endpoint_velocities(const SystemParams& p);

/// Scattering angle pi - 2*theta_inf of the repulsion-like geometry
/// (a reporting convention, checked only against the endpoint directions).
std::optional<double> scattering_angle(const SystemParams& p);

struct TimeCurves {
    std::vector<double> tau;  // proper time
    std::vector<double> t;    // coordinate time
};

/// Quadrature of d(tau)/d(theta) = r/u_theta and dt/d(theta) = u0 r/u_theta
/// along an ascending grid inside one admissible interval. Both curves are
/// zero at the reference point (theta = 0 when interior to the grid span,
/// otherwise the span midpoint).
TimeCurves time_reparametrization(const SystemParams& p, std::span<const double> theta_grid);

/// Sample a trajectory over the given interval (subset of the admissible
/// range; infinite endpoints are clipped to built-in caps and, on collapse
/// branches, the grid is sinh-graded so the exponential growth of u_theta
/// stays resolved). Finite endpoints where u_theta vanishes are clipped
/// inward by 1e-6.
std::vector<HodographSample> sample_trajectory(const SystemParams& p, Interval interval, int n);

/// Default sampling window for a branch of this configuration: one closure
/// period for bound orbits, the clipped admissible arc otherwise.
Interval default_window(const SystemParams& p, Branch branch = Branch::Auto);

/// Aggregate report for one branch of the configuration.
TrajectoryReport trajectory_report(const SystemParams& p, Branch branch = Branch::Auto);

}  // namespace hodokit

#endif
