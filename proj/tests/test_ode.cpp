#include <cmath>
#include <vector>

#include "doctest.h"
#include "hodokit/errors.hpp"
#include "hodokit/ode.hpp"

using namespace hodokit;

namespace {
const double kSqrt3_2 = std::sqrt(3.0) / 2.0;
}

TEST_CASE("integrator config validation") {
    const SystemParams p(1.0, -kSqrt3_2, 1.0, 0.6);
    IntegratorConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(integrate(p, hodograph(p, 0.0), {0.0, 1.0}, bad), std::invalid_argument);
    bad = {};
    bad.abs_tol = 0.1;  // above the 1e-2 ceiling
    CHECK_THROWS_AS(integrate(p, hodograph(p, 0.0), {0.0, 1.0}, bad), std::invalid_argument);
    CHECK_THROWS_AS(integrate(p, hodograph(p, 0.0), {0.0, 500.0}), std::invalid_argument);
    CHECK_THROWS_AS(integrate(p, FourVector{std::nan(""), 0, 0, 0}, {0.0, 1.0}),
                    UnphysicalParameters);
}

TEST_CASE("axis vector is preserved by the integrated flow") {
    const SystemParams p(1.0, -kSqrt3_2, 1.0, 0.6);
    const double a = -3.0;
    const DenseSolution sol = integrate(p, axis_vector(p, a), {a, a + 15.0});
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double th = a + 15.0 * i / 500.0;
        worst = std::max(worst, (sol(th) - axis_vector(p, th)).max_abs());
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("integrated flow reproduces each closed form over 20 rad") {
    const SystemParams cases[] = {SystemParams(1.0, -kSqrt3_2, 1.0, 0.6),
                                  SystemParams(1.0, 1.0, 1.0, 1.25),
                                  SystemParams(1.0, -1.05, 1.0, 1.05)};
    IntegratorConfig cfg;
    cfg.rel_tol = cfg.abs_tol = 1e-13;
    for (const auto& p : cases) {
        const double a = -10.0;
        const DenseSolution sol = integrate(p, hodograph(p, a), {a, 10.0}, cfg);
        double worst = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double th = a + 20.0 * i / 400.0;
            const FourVector u = hodograph(p, th);
            worst = std::max(worst, (sol(th) - u).max_abs() / std::max(1.0, u.max_abs()));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("steep space-like flows match over spans the conditioning allows") {
    // exp(beta_bar * span) amplifies seeded error; keep beta_bar * span ~ 9
    const SystemParams p(1.0, -1.5, 1.0, 1.25);
    IntegratorConfig cfg;
    cfg.rel_tol = cfg.abs_tol = 1e-13;
    const DenseSolution sol = integrate(p, hodograph(p, -4.0), {-4.0, 4.0}, cfg);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double th = -4.0 + 8.0 * i / 200.0;
        const FourVector u = hodograph(p, th);
        worst = std::max(worst, (sol(th) - u).max_abs() / std::max(1.0, u.max_abs()));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("backward integration works too") {
    const SystemParams p(1.0, -kSqrt3_2, 1.0, 0.6);
    const DenseSolution sol = integrate(p, hodograph(p, 5.0), {5.0, -5.0});
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double th = 5.0 - 10.0 * i / 200.0;
        worst = std::max(worst, (sol(th) - hodograph(p, th)).max_abs());
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("the flow is linear in the start vector") {
    const SystemParams p(1.0, 1.0, 1.0, 1.25);
    const FourVector w1 = axis_vector(p, 0.0);
    const FourVector w2 = hodograph(p, 0.0);
    const double alpha = 0.7, beta = -1.3;
    const Interval span{0.0, 12.0};
    const DenseSolution s1 = integrate(p, w1, span);
    const DenseSolution s2 = integrate(p, w2, span);
    const DenseSolution s12 = integrate(p, alpha * w1 + beta * w2, span);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double th = 12.0 * i / 200.0;
        worst = std::max(worst, (s12(th) - (alpha * s1(th) + beta * s2(th))).max_abs());
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("conservation monitors stay below 1e-9 at default tolerances") {
    const SystemParams p(1.0, -kSqrt3_2, 1.0, 1.25);
    const Interval span{-5.0, 5.0};
    const DenseSolution sol = integrate(p, hodograph(p, span.lo), span);

    const SystemParams other(1.0, -kSqrt3_2, 1.0, 0.8);
    const DenseSolution sol2 = integrate(other, hodograph(other, span.lo), span);

    const std::vector<SolutionFn> probes = {
        [&](double th) { return axis_vector(p, th); },
        [&](double th) { return sol(th); },
        [&](double th) { return sol2(th); },
    };
    const ConservationReport rep = conservation_report(p, sol, probes);
    REQUIRE(rep.drift.size() == 3);
    CHECK(rep.drift[0] < 1e-9);  // energy-integral drift
    CHECK(rep.drift[1] < 1e-9);  // norm drift
    CHECK(rep.drift[2] < 1e-9);  // cross-solution product
    CHECK(rep.max_drift < 1e-9);

    // the v_o probe drift is exactly the energy-integral drift
    double energy_drift = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double th = span.lo + 10.0 * i / 2000.0;
        energy_drift =
            std::max(energy_drift, std::abs(energy_residual(p, sol(th), th) -
                                            energy_residual(p, sol(span.lo), span.lo)));
    }
    CHECK(std::abs(energy_drift - rep.drift[0]) < 1e-12);
}

TEST_CASE("u_theta root finding: light-like 0.6 and bracket errors") {
    const SystemParams ll(1.0, 1.0, 1.0, 1.25);
    CHECK(std::abs(find_utheta_root(ll, {0.1, 1.5}) - 0.6) < 1e-12);

    const SystemParams tl(1.0, kSqrt3_2, 1.0, 1.25);
    const double root = find_utheta_root(tl, {0.1, 1.2});
    CHECK(root / M_PI == doctest::Approx(0.2122956150096566).epsilon(1e-10));

    const SystemParams sl(1.0, 1.5, 1.0, 1.25);
    CHECK(find_utheta_root(sl, {0.1, 1.0}) == doctest::Approx(0.43040894096400404).epsilon(1e-10));

    CHECK_THROWS_AS(find_utheta_root(ll, {0.0, 0.5}), BracketError);
    CHECK_THROWS_AS(find_utheta_root(ll, {0.5, 0.1}), BracketError);
}

TEST_CASE("step budget exhaustion and state overflow raise typed errors") {
    const SystemParams p(1.0, -kSqrt3_2, 1.0, 0.6);
    IntegratorConfig tiny;
    tiny.max_steps = 3;
    CHECK_THROWS_AS(integrate(p, hodograph(p, 0.0), {0.0, 10.0}, tiny), NonConvergence);

    const SystemParams steep(1.0, -3.0, 1.0, 1.25);
    IntegratorConfig loose;
    loose.rel_tol = 1e-9;
    loose.abs_tol = 1e-9;
    loose.max_step = 0.5;
    loose.max_steps = 100000000;
    CHECK_THROWS_AS(integrate(steep, hodograph(steep, 0.0), {0.0, 150.0}, loose), RangeOverflow);
}

TEST_CASE("identical inputs give bit-identical dense output") {
    const SystemParams p(1.0, -1.2, 1.0, 1.05);
    const DenseSolution a = integrate(p, hodograph(p, 0.9), {0.9, 9.0});
    const DenseSolution b = integrate(p, hodograph(p, 0.9), {0.9, 9.0});
    CHECK(a.step_count() == b.step_count());
    for (int i = 0; i <= 300; ++i) {
        const double th = 0.9 + (9.0 - 0.9) * i / 300.0;
        const FourVector va = a(th), vb = b(th);
        CHECK(va.t == vb.t);
        CHECK(va.x == vb.x);
        CHECK(va.y == vb.y);
        CHECK(va.z == vb.z);
    }
}

TEST_CASE("fixed-step mode shows fifth-order convergence") {
    const SystemParams p(1.0, -kSqrt3_2, 1.0, 0.6);
    const Interval span{0.0, 60.0};
    const FourVector exact = hodograph(p, span.hi);
    std::vector<double> lh, le;
    for (double h : {0.1, 0.05, 0.025, 0.0125}) {
        IntegratorConfig cfg;
        cfg.fixed_step = h;
        const DenseSolution sol = integrate(p, hodograph(p, span.lo), span, cfg);
        lh.push_back(std::log(h));
        le.push_back(std::log((sol(span.hi) - exact).max_abs()));
    }
    // least-squares slope of log(err) vs log(h)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lh.size());
    for (std::size_t i = 0; i < lh.size(); ++i) {
        sx += lh[i];
        sy += le[i];
        sxx += lh[i] * lh[i];
        sxy += lh[i] * le[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= 5.0);
}
