#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hodokit/four_vector.hpp"

using namespace hodokit;

namespace {

FourVector random_vector(std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    return {d(rng), d(rng), d(rng), d(rng)};
}

FourVector matrix_apply(const Mat4& m, const FourVector& v) {
    const double in[4] = {v.t, v.x, v.y, v.z};
    double out[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * in[j];
    return {out[0], out[1], out[2], out[3]};
}

}  // namespace

TEST_CASE("minkowski_dot has (-,+,+,+) signature") {
    const FourVector et{1, 0, 0, 0}, ex{0, 1, 0, 0}, ey{0, 0, 1, 0}, ez{0, 0, 0, 1};
    CHECK(minkowski_dot(et, et) == -1.0);
    CHECK(minkowski_dot(ex, ex) == 1.0);
    CHECK(minkowski_dot(ey, ey) == 1.0);
    CHECK(minkowski_dot(ez, ez) == 1.0);
    CHECK(minkowski_dot(et, ex) == 0.0);
}

TEST_CASE("minkowski_dot is symmetric and bilinear") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const FourVector a = random_vector(rng), b = random_vector(rng), c = random_vector(rng);
        CHECK(minkowski_dot(a, b) == doctest::Approx(minkowski_dot(b, a)).epsilon(1e-14));
        CHECK(minkowski_dot(a + b, c) ==
              doctest::Approx(minkowski_dot(a, c) + minkowski_dot(b, c)).epsilon(1e-12));
        CHECK(minkowski_dot(2.5 * a, c) == doctest::Approx(2.5 * minkowski_dot(a, c)).epsilon(1e-13));
    }
}

TEST_CASE("polar_frame values at axis angles") {
    const PolarFrame f0 = polar_frame(0.0);
    CHECK(f0.r_hat.x == 1.0);
    CHECK(f0.r_hat.y == 0.0);
    CHECK(f0.theta_hat.x == 0.0);
    CHECK(f0.theta_hat.y == 1.0);

    const PolarFrame f1 = polar_frame(M_PI / 2.0);
    CHECK(f1.r_hat.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f1.r_hat.y == doctest::Approx(1.0));
    CHECK(f1.theta_hat.x == doctest::Approx(-1.0));
    CHECK(f1.theta_hat.y == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("polar_frame is orthonormal and theta_hat is r_hat rotated by +pi/2") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const PolarFrame f = polar_frame(d(rng));
        CHECK(std::abs(f.r_hat.norm() - 1.0) < 1e-15);
        CHECK(std::abs(f.theta_hat.norm() - 1.0) < 1e-15);
        CHECK(std::abs(f.r_hat.dot(f.theta_hat)) < 1e-15);
        // rotation by +pi/2: (x, y) -> (-y, x)
        CHECK(f.theta_hat.x == -f.r_hat.y);
        CHECK(f.theta_hat.y == f.r_hat.x);
    }
}

TEST_CASE("frame derivative relations hold under finite differencing") {
    const double h = 1e-6;
    for (double theta : {0.3, -1.7, 2.9}) {
        const PolarFrame fp = polar_frame(theta + h);
        const PolarFrame fm = polar_frame(theta - h);
        const PolarFrame f = polar_frame(theta);
        const Vec2 dr{(fp.r_hat.x - fm.r_hat.x) / (2 * h), (fp.r_hat.y - fm.r_hat.y) / (2 * h)};
        const Vec2 dt{(fp.theta_hat.x - fm.theta_hat.x) / (2 * h),
                      (fp.theta_hat.y - fm.theta_hat.y) / (2 * h)};
        CHECK(std::abs(dr.x - f.theta_hat.x) < 1e-9);
        CHECK(std::abs(dr.y - f.theta_hat.y) < 1e-9);
        CHECK(std::abs(dt.x + f.r_hat.x) < 1e-9);
        CHECK(std::abs(dt.y + f.r_hat.y) < 1e-9);
    }
}

TEST_CASE("rotation_generator at theta = 0") {
    const Mat4 m = rotation_generator(0.0);
    CHECK(m[0][1] == 1.0);
    CHECK(m[1][0] == 1.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!((i == 0 && j == 1) || (i == 1 && j == 0))) CHECK(m[i][j] == 0.0);
}

TEST_CASE("index-lowered generator is antisymmetric") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat4 m = rotation_generator(d(rng));
        // lowering the first index flips the sign of row 0
        Mat4 lowered = m;
        for (int j = 0; j < 4; ++j) lowered[0][j] = -m[0][j];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(lowered[i][j] == -lowered[j][i]);
    }
}

TEST_CASE("generator action is antisymmetric in the inner product") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double theta = d(rng);
        const FourVector a = random_vector(rng), b = random_vector(rng);
        const double lhs = minkowski_dot(a, omega_apply(theta, b));
        const double rhs = -minkowski_dot(b, omega_apply(theta, a));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("omega_apply agrees with the explicit matrix") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double theta = d(rng);
        const FourVector w = random_vector(rng);
        const FourVector via_matrix = matrix_apply(rotation_generator(theta), w);
        const FourVector direct = omega_apply(theta, w);
        CHECK((direct - via_matrix).max_abs() < 1e-15);
    }
}

TEST_CASE("spatial_velocity basics") {
    const auto v0 = spatial_velocity({1, 0, 0, 0});
    CHECK(v0[0] == 0.0);
    CHECK(v0[1] == 0.0);
    CHECK(v0[2] == 0.0);

    const auto vx = spatial_velocity({std::sqrt(2.0), 1, 0, 0});
    CHECK(vx[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(vx[1] == 0.0);
}

TEST_CASE("spatial_velocity magnitude identity on the hyperboloid") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> rap(0.0, 3.0), ang(0.0, 2 * M_PI);
    for (int i = 0; i < 100; ++i) {
        const double chi = rap(rng), phi = ang(rng);
        const FourVector u{std::cosh(chi), std::sinh(chi) * std::cos(phi),
                           std::sinh(chi) * std::sin(phi), 0.0};
        const auto v = spatial_velocity(u);
        const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        CHECK(std::abs(speed - std::sqrt(1.0 - 1.0 / (u.t * u.t))) < 1e-12);
        CHECK(speed < 1.0);
    }
}

TEST_CASE("spatial_velocity rejects bad input") {
    CHECK_THROWS_AS(spatial_velocity({0.5, 0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(spatial_velocity({std::nan(""), 0, 0, 0}), std::domain_error);
}
