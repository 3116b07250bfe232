#include "hodokit/relativistic.hpp"

#include <cmath>

#include "hodokit/errors.hpp"

namespace hodokit {

namespace {

constexpr double kRegimeTol = 1e-12;   // relative width of the light-like band
constexpr double kCoshArgCap = 700.0;  // cosh overflows just above 710

Regime classify_ratio(double ell, double kappa) {
    const double ak = std::abs(kappa);
    if (std::abs(ell - ak) <= kRegimeTol * std::max(ell, ak)) return Regime::LightLike;
    return ell > ak ? Regime::TimeLike : Regime::SpaceLike;
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::TimeLike: return "TimeLike";
        case Regime::LightLike: return "LightLike";
        case Regime::SpaceLike: return "SpaceLike";
    }
    return "?";
}

SystemParams::SystemParams(double m_, double kappa_, double ell_, double E_, double theta0_)
    : m(m_), kappa(kappa_), ell(ell_), E(E_), theta0(theta0_) {
    if (!(std::isfinite(m) && std::isfinite(kappa) && std::isfinite(ell) && std::isfinite(E) &&
          std::isfinite(theta0)))
        throw UnphysicalParameters("SystemParams: non-finite input");
    if (m <= 0.0) throw UnphysicalParameters("SystemParams: m must be positive");
    if (ell <= 0.0) throw UnphysicalParameters("SystemParams: ell must be positive");
    if (kappa == 0.0) throw UnphysicalParameters("SystemParams: kappa must be nonzero");
    if (E <= 0.0) throw UnphysicalParameters("SystemParams: E must be positive");

    eps = kappa > 0.0 ? 1.0 : -1.0;
    const double k = kappa / ell;
    axis_norm2 = k * k - 1.0;
    regime = classify_ratio(ell, kappa);

    // Lambda is derived from B_o/A_o (not the other way around) so that the
    // identities Lambda = m*beta*B_o and Lambda = m*beta_bar*A_o hold exactly.
    switch (regime) {
        case Regime::TimeLike: {
            beta = std::sqrt(-axis_norm2);
            double disc = (E / (m * beta)) * (E / (m * beta)) - 1.0;
            if (disc < -1e-14)
                throw BelowMinimumEnergy("SystemParams: E below beta*m in the time-like regime");
            if (disc < 1e-14) disc = 0.0;  // minimal-energy circular state, up to roundoff
            B_o = std::sqrt(disc);
            Lambda = m * beta * B_o;
            break;
        }
        case Regime::LightLike:
            Lambda = E;
            break;
        case Regime::SpaceLike: {
            beta_bar = std::sqrt(axis_norm2);
            A_o = std::sqrt((E / (m * beta_bar)) * (E / (m * beta_bar)) + 1.0);
            Lambda = m * beta_bar * A_o;
            break;
        }
    }
}

Regime classify(const SystemParams& p) { return p.regime; }

FourVector axis_vector(const SystemParams& p, double theta) {
    const double k = p.coupling_ratio();
    const PolarFrame f = polar_frame(theta);
    return {1.0, -k * f.theta_hat.x, -k * f.theta_hat.y, 0.0};
}

double energy_residual(const SystemParams& p, const FourVector& u, double theta) {
    return u.t + p.coupling_ratio() * transverse_component(u, theta) - p.E / p.m;
}

double scaled_energy_residual(const SystemParams& p, const FourVector& u, double theta) {
    const double ut = transverse_component(u, theta);
    const double scale =
        std::max(1.0, std::abs(u.t) + std::abs(p.coupling_ratio() * ut) + std::abs(p.E / p.m));
    return energy_residual(p, u, theta) / scale;
}

double scaled_norm_residual(const FourVector& u) {
    const double mag2 = u.t * u.t + u.x * u.x + u.y * u.y + u.z * u.z;
    return (minkowski_dot(u, u) + 1.0) / std::max(1.0, mag2);
}

FourVector timelike_hodograph(const SystemParams& p, double theta) {
    if (p.regime != Regime::TimeLike)
        throw WrongRegime("timelike_hodograph: requires ell > |kappa|");
    const double k = p.coupling_ratio();
    const double b = p.beta;
    const double tp = p.shifted(theta);
    const double c = std::cos(b * tp);
    const double s = std::sin(b * tp);
    const double E_m = p.E / p.m;

    const double u_r = p.B_o * s;
    const double u_th = -k * E_m / (b * b) + (p.B_o / b) * c;
    const double u0 = E_m / (b * b) - (k * p.B_o / b) * c;

    const PolarFrame f = polar_frame(theta);
    return {u0, u_r * f.r_hat.x + u_th * f.theta_hat.x, u_r * f.r_hat.y + u_th * f.theta_hat.y, 0.0};
}

FourVector lightlike_hodograph(const SystemParams& p, double theta) {
    if (p.regime != Regime::LightLike)
        throw WrongRegime("lightlike_hodograph: requires ell == |kappa|");
    const double tp = p.shifted(theta);
    const double E_m = p.E / p.m;

    const double u_r = p.eps * E_m * tp;
    const double u_th = -p.eps * (0.5 * E_m * tp * tp - 0.5 * (E_m - 1.0 / E_m));
    const double u0 = 0.5 * (E_m + 1.0 / E_m) + 0.5 * E_m * tp * tp;

    const PolarFrame f = polar_frame(theta);
    return {u0, u_r * f.r_hat.x + u_th * f.theta_hat.x, u_r * f.r_hat.y + u_th * f.theta_hat.y, 0.0};
}

FourVector spacelike_hodograph(const SystemParams& p, double theta) {
    if (p.regime != Regime::SpaceLike)
        throw WrongRegime("spacelike_hodograph: requires ell < |kappa|");
    const double k = p.coupling_ratio();
    const double bb = p.beta_bar;
    const double tp = p.shifted(theta);
    if (std::abs(bb * tp) > kCoshArgCap)
        throw RangeOverflow("spacelike_hodograph: |beta_bar * theta'| > 700");
    const double ch = std::cosh(bb * tp);
    const double sh = std::sinh(bb * tp);
    const double E_m = p.E / p.m;

    // Radial sign follows the epicyclic decomposition u = -(E/m bb^2) v_o + A_o n,
    // the form that satisfies the flow equation du/dtheta = (kappa/ell) Omega u.
    const double u_r = p.eps * p.A_o * sh;
    const double u_th = k * E_m / (bb * bb) - (p.eps * p.A_o / bb) * ch;
    const double u0 = -E_m / (bb * bb) + (std::abs(k) * p.A_o / bb) * ch;

    const PolarFrame f = polar_frame(theta);
    return {u0, u_r * f.r_hat.x + u_th * f.theta_hat.x, u_r * f.r_hat.y + u_th * f.theta_hat.y, 0.0};
}

FourVector hodograph(const SystemParams& p, double theta) {
    switch (p.regime) {
        case Regime::TimeLike: return timelike_hodograph(p, theta);
        case Regime::LightLike: return lightlike_hodograph(p, theta);
        case Regime::SpaceLike: return spacelike_hodograph(p, theta);
    }
    throw WrongRegime("hodograph: unreachable");
}

FourVector on_axis_component(const SystemParams& p, double theta) {
    const FourVector vo = axis_vector(p, theta);
    if (p.regime == Regime::LightLike) return (p.m / (2.0 * p.E)) * vo;
    return (p.E / ((-p.axis_norm2) * p.m)) * vo;
}

FourVector hamilton_vector(const SystemParams& p, double theta) {
    return hodograph(p, theta) - on_axis_component(p, theta);
}

FrameVectors frame_vectors(const SystemParams& p, double theta) {
    if (p.regime != Regime::TimeLike)
        throw WrongRegime("frame_vectors: defined in the time-like regime only");
    const double k = p.coupling_ratio();
    const double b = p.beta;
    const double tp = p.shifted(theta);
    const double c = std::cos(b * tp);
    const double s = std::sin(b * tp);
    const PolarFrame f = polar_frame(theta);

    const auto assemble = [&](double t_comp, double radial, double transverse) {
        return FourVector{t_comp, radial * f.r_hat.x + transverse * f.theta_hat.x,
                          radial * f.r_hat.y + transverse * f.theta_hat.y, 0.0};
    };
    return {assemble(-(k / b) * c, s, c / b), assemble((k / b) * s, c, -s / b)};
}

FourVector energy_gradient(const SystemParams& p, double theta) {
    const double lam2 = p.Lambda * p.Lambda;
    if (lam2 <= 1e-12 * p.E * p.E)
        throw DegenerateEnergyDirection("energy_gradient: Lambda ~ 0 at the minimal-energy point");
    const FourVector u = hodograph(p, theta);
    const FourVector vo = axis_vector(p, theta);
    return (1.0 / lam2) * (p.E * u - p.m * vo);
}

}  // namespace hodokit
