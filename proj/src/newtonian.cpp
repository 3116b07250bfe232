#include "hodokit/newtonian.hpp"

#include <cmath>

#include "hodokit/errors.hpp"

namespace hodokit {

NewtonianParams::NewtonianParams(double m_, double kappa_, double ell_, double E_prime_)
    : m(m_), kappa(kappa_), ell(ell_), E_prime(E_prime_) {
    if (!(std::isfinite(m) && std::isfinite(kappa) && std::isfinite(ell) && std::isfinite(E_prime)))
        throw UnphysicalParameters("NewtonianParams: non-finite input");
    if (m <= 0.0) throw UnphysicalParameters("NewtonianParams: m must be positive");
    if (ell <= 0.0) throw UnphysicalParameters("NewtonianParams: ell must be positive");
    if (kappa == 0.0) throw UnphysicalParameters("NewtonianParams: kappa must be nonzero");
    const double k2 = (kappa / ell) * (kappa / ell);
    const double disc = 2.0 * E_prime / m + k2;
    if (disc < -1e-14 * k2)
        throw UnphysicalParameters("NewtonianParams: energy below the circular-orbit minimum");
}

double hamilton_vector_magnitude(const NewtonianParams& p) {
    const double k2 = p.coupling_ratio() * p.coupling_ratio();
    const double disc = 2.0 * p.E_prime / p.m + k2;
    return std::sqrt(std::max(disc, 0.0));
}

Vec2 newtonian_hodograph_point(const NewtonianParams& p, double theta, double B_dir) {
    const double B_o = hamilton_vector_magnitude(p);
    const Vec2 B{B_o * std::cos(B_dir), B_o * std::sin(B_dir)};
    const PolarFrame f = polar_frame(theta);
    return B - p.coupling_ratio() * f.theta_hat;
}

double newtonian_radius(const NewtonianParams& p, double theta, double B_dir) {
    const Vec2 v = newtonian_hodograph_point(p, theta, B_dir);
    const double v_theta = v.dot(polar_frame(theta).theta_hat);
    if (v_theta <= 0.0)
        throw PointAtInfinity("newtonian_radius: v_theta <= 0, spatial point at infinity");
    return p.ell / (p.m * v_theta);
}

double newtonian_energy_residual(const NewtonianParams& p, Vec2 v, double theta) {
    const double v_theta = v.dot(polar_frame(theta).theta_hat);
    return 0.5 * p.m * v.dot(v) + (p.m * p.kappa / p.ell) * v_theta - p.E_prime;
}

}  // namespace hodokit
