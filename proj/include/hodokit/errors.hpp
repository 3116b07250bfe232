#ifndef HODOKIT_ERRORS_HPP
#define HODOKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hodokit {

/// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter set violates a basic physicality constraint (m <= 0, ell <= 0,
/// kappa == 0, non-finite input, negative B_o discriminant, ...).
struct UnphysicalParameters : Error {
    using Error::Error;
};

/// Requested energy lies below the minimum beta*m of the attracting
/// time-like regime, where no hodograph exists.
struct BelowMinimumEnergy : UnphysicalParameters {
    using UnphysicalParameters::UnphysicalParameters;
};

/// A regime-specific solver was called with parameters of another regime.
struct WrongRegime : Error {
    using Error::Error;
};

/// A hyperbolic-function argument (or integration state) would overflow.
struct RangeOverflow : Error {
    using Error::Error;
};

/// v_theta <= 0 in the Newtonian map, i.e. the spatial point is at infinity.
struct PointAtInfinity : Error {
    using Error::Error;
};

/// theta is outside every admissible interval (u_theta <= 0 there).
struct OutsideAdmissibleRange : Error {
    using Error::Error;
};

/// The admissible theta-set is empty; no spatial trajectory exists.
struct NoTrajectory : Error {
    using Error::Error;
};

/// Lambda == 0 (minimal-energy point): the energy direction is undefined.
struct DegenerateEnergyDirection : Error {
    using Error::Error;
};

/// A time-reparametrization grid touches a point where u_theta vanishes.
struct QuadratureDivergence : Error {
    using Error::Error;
};

/// The adaptive integrator exhausted its step budget.
struct NonConvergence : Error {
    using Error::Error;
};

/// A root bracket does not actually bracket a sign change.
struct BracketError : Error {
    using Error::Error;
};

}  // namespace hodokit

#endif
