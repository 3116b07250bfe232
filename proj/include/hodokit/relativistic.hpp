#ifndef HODOKIT_RELATIVISTIC_HPP
#define HODOKIT_RELATIVISTIC_HPP

#include "hodokit/four_vector.hpp"

namespace hodokit {

/// Causal character of the rotation-axis vector v_o, fixed by ell vs |kappa|.
enum class Regime { TimeLike, LightLike, SpaceLike };

const char* to_string(Regime r);

/**
 * One relativistic Coulomb configuration: mass m > 0, coupling kappa != 0,
 * angular momentum ell > 0, total energy E > 0 and an optional shift angle
 * theta0 (applied uniformly as theta' = theta - theta0).
 *
 * Derived invariants are computed once at construction:
 *   - eps = sign(kappa), axis_norm2 = kappa^2/ell^2 - 1 and the regime;
 *   - beta, B_o in the time-like regime (requires E >= beta*m);
 *   - beta_bar, A_o in the space-like regime;
 *   - Lambda = sqrt(E^2 + m^2*(kappa^2/ell^2 - 1)), the energy-displacement
 *     scale (zero exactly at the time-like minimum E = beta*m).
 */
struct SystemParams {
    double m;
    double kappa;
    double ell;
    double E;
    double theta0;

    double eps;         // sign(kappa)
    double axis_norm2;  // v_o . v_o
    Regime regime;
    double beta = 0.0;      // time-like only
    double beta_bar = 0.0;  // space-like only
    double B_o = 0.0;       // time-like only
    double A_o = 0.0;       // space-like only
    double Lambda;

    SystemParams(double m, double kappa, double ell, double E, double theta0 = 0.0);

    double coupling_ratio() const { return kappa / ell; }
    bool attractive() const { return kappa < 0.0; }
    /// Shifted angle theta' = theta - theta0.
    double shifted(double theta) const { return theta - theta0; }
};

/// Trichotomy on the sign of v_o . v_o = kappa^2/ell^2 - 1. Equality is taken
/// when |ell - |kappa|| <= 1e-12 * max(ell, |kappa|).
Regime classify(const SystemParams& p);

/// The rotation axis v_o(theta) = (1, -(kappa/ell) theta_hat, 0); preserved by
/// the hodograph flow and the carrier of the energy integral.
FourVector axis_vector(const SystemParams& p, double theta);

/// Energy-integral defect u0 + (kappa/ell) u_theta - E/m = -u.v_o - E/m.
/// Raw (unscaled) value; vanishes identically on solutions.
double energy_residual(const SystemParams& p, const FourVector& u, double theta);

/// Same defect normalized by the magnitude of the cancelling terms, so the
/// check stays meaningful where u0 grows exponentially large.
double scaled_energy_residual(const SystemParams& p, const FourVector& u, double theta);

/// Hyperboloid defect u.u + 1 normalized by max(1, u0^2 + |u_spatial|^2).
double scaled_norm_residual(const FourVector& u);

/// Closed-form hodograph for ell > |kappa| (requires E >= beta*m).
FourVector timelike_hodograph(const SystemParams& p, double theta);

/// Closed-form hodograph for ell == |kappa|.
FourVector lightlike_hodograph(const SystemParams& p, double theta);

/// Closed-form hodograph for ell < |kappa|. Throws RangeOverflow when
/// |beta_bar * theta'| > 700 (cosh would overflow).
FourVector spacelike_hodograph(const SystemParams& p, double theta);

/// Regime-dispatching front end over the three closed forms.
FourVector hodograph(const SystemParams& p, double theta);

/// On-axis component w_o of the epicyclic decomposition u = w_o + B:
/// (E / ((1 - kappa^2/ell^2) m)) v_o off the light-like case, (m/2E) v_o on it.
FourVector on_axis_component(const SystemParams& p, double theta);

/// Relativistic Hamilton vector B = u - w_o: the constant-magnitude off-axis
/// component that precesses uniformly about the axis.
FourVector hamilton_vector(const SystemParams& p, double theta);

/// Orthonormal pair (n1, n2) tangent to the velocity hyperboloid at the
/// minimal-energy point u_o = v_o/beta; time-like regime only.
struct FrameVectors {
    FourVector n1;
    FourVector n2;
};

FrameVectors frame_vectors(const SystemParams& p, double theta);

/// Energy direction du/dE = (E u - m v_o) / Lambda^2; tangent to the
/// hyperboloid. Throws DegenerateEnergyDirection when Lambda ~ 0.
FourVector energy_gradient(const SystemParams& p, double theta);

}  // namespace hodokit

#endif
