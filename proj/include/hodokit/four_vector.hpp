#ifndef HODOKIT_FOUR_VECTOR_HPP
#define HODOKIT_FOUR_VECTOR_HPP

#include <array>
#include <cmath>
#include <iosfwd>

namespace hodokit {

/// Planar 2-vector (the motion is confined to the x-y plane).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/**
 * A point of the 1+3 pseudo-Euclidean embedding space, metric (-,+,+,+).
 *
 * Carries 4-velocities, axis vectors, frame vectors and Hamilton vectors.
 * The z slot is kept for generality; planar dynamics leaves it at zero.
 */
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    FourVector operator+(const FourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    FourVector operator-(const FourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    FourVector operator-() const { return {-t, -x, -y, -z}; }
    FourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }

    bool is_finite() const {
        return std::isfinite(t) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    /// Largest absolute component (useful as a conditioning scale).
    double max_abs() const {
        return std::max(std::max(std::abs(t), std::abs(x)), std::max(std::abs(y), std::abs(z)));
    }
};

inline FourVector operator*(double s, const FourVector& v) { return v * s; }

std::ostream& operator<<(std::ostream& os, const FourVector& v);

/// Minkowski inner product, -a0*b0 + ax*bx + ay*by + az*bz.
inline double minkowski_dot(const FourVector& a, const FourVector& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Polar-planar unit vectors attached to the angle theta.
struct PolarFrame {
    double theta = 0.0;
    Vec2 r_hat;      // (cos theta, sin theta)
    Vec2 theta_hat;  // (-sin theta, cos theta) = r_hat rotated by +pi/2
};

PolarFrame polar_frame(double theta);

using Mat4 = std::array<std::array<double, 4>, 4>;

/**
 * The theta-dependent generator of the hodograph flow, Omega^mu_nu.
 * Only the time row/column is populated: Omega^0_i = Omega^i_0 = r_hat_i.
 * Lowering the first index makes it antisymmetric.
 */
Mat4 rotation_generator(double theta);

/// Matrix action Omega(theta) * w without materializing the matrix.
FourVector omega_apply(double theta, const FourVector& w);

/// Three-velocity of a future-directed 4-velocity, v = u_spatial / u0.
/// Throws std::domain_error when u0 < 1.
std::array<double, 3> spatial_velocity(const FourVector& u);

/// Radial polar component of the spatial part, u . r_hat(theta).
inline double radial_component(const FourVector& u, double theta) {
    return u.x * std::cos(theta) + u.y * std::sin(theta);
}

/// Transverse polar component of the spatial part, u . theta_hat(theta).
inline double transverse_component(const FourVector& u, double theta) {
    return -u.x * std::sin(theta) + u.y * std::cos(theta);
}

}  // namespace hodokit

#endif
