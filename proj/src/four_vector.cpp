#include "hodokit/four_vector.hpp"

#include <ostream>
#include <stdexcept>

namespace hodokit {

std::ostream& operator<<(std::ostream& os, const FourVector& v) {
    return os << "(" << v.t << ", " << v.x << ", " << v.y << ", " << v.z << ")";
}

PolarFrame polar_frame(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {theta, {c, s}, {-s, c}};
}

Mat4 rotation_generator(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat4 m{};
    m[0][1] = c;
    m[0][2] = s;
    m[1][0] = c;
    m[2][0] = s;
    return m;
}

FourVector omega_apply(double theta, const FourVector& w) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * w.x + s * w.y, c * w.t, s * w.t, 0.0};
}

std::array<double, 3> spatial_velocity(const FourVector& u) {
    if (!u.is_finite()) throw std::domain_error("spatial_velocity: non-finite input");
    if (u.t < 1.0) throw std::domain_error("spatial_velocity: u0 < 1 is not a 4-velocity");
    return {u.x / u.t, u.y / u.t, u.z / u.t};
}

}  // namespace hodokit
