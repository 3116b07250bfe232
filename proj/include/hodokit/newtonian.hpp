#ifndef HODOKIT_NEWTONIAN_HPP
#define HODOKIT_NEWTONIAN_HPP

#include "hodokit/four_vector.hpp"

namespace hodokit {

/**
 * Classical Kepler/Coulomb configuration: mass m, coupling kappa (sign sets
 * attraction vs repulsion), angular momentum ell > 0 and energy E_prime.
 *
 * Valid sets satisfy B_o^2 = 2 E'/m + kappa^2/ell^2 >= 0; the constructor
 * rejects anything else.
 */
struct NewtonianParams {
    double m;
    double kappa;
    double ell;
    double E_prime;

    NewtonianParams(double m, double kappa, double ell, double E_prime);

    double coupling_ratio() const { return kappa / ell; }
};

/// Magnitude of the Hamilton vector, B_o = sqrt(2 E'/m + kappa^2/ell^2).
double hamilton_vector_magnitude(const NewtonianParams& p);

/// One point of the velocity-space circle, v(theta) = B_o - (kappa/ell) theta_hat.
/// B_dir orients the (otherwise gauge-free) Hamilton vector; 0 puts it on +x.
Vec2 newtonian_hodograph_point(const NewtonianParams& p, double theta, double B_dir = 0.0);

/// Orbit radius r = ell / (m v_theta). Throws PointAtInfinity when v_theta <= 0.
double newtonian_radius(const NewtonianParams& p, double theta, double B_dir = 0.0);

/// Energy-integral defect m v^2/2 + (m kappa/ell) v_theta - E' of a candidate
/// velocity at angle theta; vanishes on the exact hodograph.
double newtonian_energy_residual(const NewtonianParams& p, Vec2 v, double theta);

}  // namespace hodokit

#endif
