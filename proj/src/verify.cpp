#include "hodokit/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "hodokit/newtonian.hpp"
#include "hodokit/ode.hpp"

namespace hodokit::verify {

namespace {

constexpr double kPi = std::numbers::pi;

struct Case {
    std::string label;
    SystemParams params;
};

// Three regimes x attraction/repulsion x three energies, m = ell = 1.
// The space-like ratio is kept mild: over a 20-rad oracle span the flow
// amplifies seeded error by exp(beta_bar * span), so 1.05 keeps the
// comparison against the integrator meaningful in double precision.
std::vector<Case> built_in_matrix() {
    const double ratios[3] = {std::sqrt(3.0) / 2.0, 1.0, 1.05};
    const char* names[3] = {"timelike", "lightlike", "spacelike"};
    const double energies[3] = {0.6, 1.05, 1.25};
    std::vector<Case> cases;
    for (int r = 0; r < 3; ++r)
        for (double sign : {-1.0, +1.0})
            for (double E : energies) {
                char label[64];
                std::snprintf(label, sizeof label, "%s/%s/E=%.2f", names[r],
                              sign < 0 ? "att" : "rep", E);
                cases.push_back({label, SystemParams(1.0, sign * ratios[r], 1.0, E)});
            }
    return cases;
}

double case_max_norm_residual(const SystemParams& p, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = p.theta0 - 20.0 + 40.0 * static_cast<double>(i) / (n - 1);
        worst = std::max(worst, std::abs(scaled_norm_residual(hodograph(p, th))));
    }
    return worst;
}

double case_max_energy_residual(const SystemParams& p, int n) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = p.theta0 - 20.0 + 40.0 * static_cast<double>(i) / (n - 1);
        worst = std::max(worst, std::abs(scaled_energy_residual(p, hodograph(p, th), th)));
    }
    return worst;
}

double case_oracle_gap(const SystemParams& p) {
    const Interval span{p.theta0 - 10.0, p.theta0 + 10.0};
    IntegratorConfig cfg;
    cfg.rel_tol = cfg.abs_tol = 1e-13;
    const DenseSolution sol = integrate(p, hodograph(p, span.lo), span, cfg);
    double worst = 0.0;
    const int n = 400;
    for (int i = 0; i < n; ++i) {
        const double th = span.lo + (span.hi - span.lo) * static_cast<double>(i) / (n - 1);
        const FourVector gap = sol(th) - hodograph(p, th);
        worst = std::max(worst, gap.max_abs() / std::max(1.0, hodograph(p, th).max_abs()));
    }
    return worst;
}

double gradient_error_at(const SystemParams& p, double theta) {
    const double h = 1e-6 * p.m;
    const SystemParams up(p.m, p.kappa, p.ell, p.E + h, p.theta0);
    const SystemParams dn(p.m, p.kappa, p.ell, p.E - h, p.theta0);
    const FourVector fd = (1.0 / (2.0 * h)) * (hodograph(up, theta) - hodograph(dn, theta));
    const FourVector an = energy_gradient(p, theta);
    const FourVector diff = an - fd;
    return diff.max_abs() / std::max(1.0, an.max_abs());
}

double newtonian_limit_deviation(int k) {
    const double ratio = std::pow(10.0, -k);
    const double beta = std::sqrt(1.0 - ratio * ratio);
    const double B_o = ratio;  // chosen equal to |kappa|/ell, so E' = 0
    const SystemParams rel(1.0, -ratio, 1.0, beta * std::sqrt(1.0 + B_o * B_o));
    const NewtonianParams newt(1.0, -ratio, 1.0, 0.0);
    double worst = 0.0;
    const int n = 256;
    for (int i = 0; i < n; ++i) {
        const double th = (2.0 * kPi / beta) * static_cast<double>(i) / (n - 1);
        const FourVector u = hodograph(rel, th);
        // the relativistic Hamilton vector settles on +y in this limit
        const Vec2 v = newtonian_hodograph_point(newt, th, kPi / 2.0);
        worst = std::max(worst, std::hypot(u.x - v.x, u.y - v.y));
    }
    return worst;
}

// Repulsion only: the shift-free attraction families align at the apoapsis
// beta*theta = pi, which escapes to infinity as beta -> 0.
double continuity_gap(double delta, bool timelike_side) {
    const double ratio2 = timelike_side ? 1.0 - delta : 1.0 + delta;
    const SystemParams nearby(1.0, std::sqrt(ratio2), 1.0, 1.25);
    const SystemParams light(1.0, 1.0, 1.0, 1.25);
    double worst = 0.0;
    const int n = 161;
    for (int i = 0; i < n; ++i) {
        const double th = -2.0 + 4.0 * static_cast<double>(i) / (n - 1);
        const FourVector gap = hodograph(nearby, th) - hodograph(light, th);
        worst = std::max(worst, gap.max_abs());
    }
    return worst;
}

void add(std::vector<CheckResult>& out, const char* suite, std::string label, double measured,
         double tol) {
    out.push_back({suite, std::move(label), measured, tol, measured < tol});
}

double pick(double def, const Options& opt) {
    return opt.tol_override > 0.0 ? opt.tol_override : def;
}

void run_norms(std::vector<CheckResult>& out, const Options& opt) {
    const double tol = pick(1e-12, opt);
    for (const auto& c : built_in_matrix())
        add(out, "norms", c.label, case_max_norm_residual(c.params, 2000), tol);
}

void run_energy(std::vector<CheckResult>& out, const Options& opt) {
    const double tol = pick(1e-12, opt);
    for (const auto& c : built_in_matrix())
        add(out, "energy", c.label, case_max_energy_residual(c.params, 2000), tol);
}

void run_oracle(std::vector<CheckResult>& out, const Options& opt) {
    const double tol = pick(1e-8, opt);
    for (const auto& c : built_in_matrix())
        add(out, "oracle", c.label, case_oracle_gap(c.params), tol);
}

void run_gradient(std::vector<CheckResult>& out, const Options& opt) {
    const double tol = pick(1e-6, opt);
    unsigned state = 12345u;
    for (const auto& c : built_in_matrix()) {
        state = state * 1664525u + 1013904223u;  // deterministic probe angles
        const double theta = -2.0 + 4.0 * (static_cast<double>(state) / 4294967296.0);
        add(out, "gradient", c.label, gradient_error_at(c.params, theta), tol);
    }
}

void run_limits(std::vector<CheckResult>& out, const Options& opt) {
    const double tol = pick(1.0, opt);
    const double d1 = newtonian_limit_deviation(1);
    const double d2 = newtonian_limit_deviation(2);
    const double d3 = newtonian_limit_deviation(3);
    add(out, "limits", "newtonian k=2 vs k=1", d2 / d1, tol);
    add(out, "limits", "newtonian k=3 vs k=2", d3 / d2, tol);
    for (bool tl : {true, false}) {
        const char* side = tl ? "timelike-side" : "spacelike-side";
        const double g2 = continuity_gap(1e-2, tl);
        const double g3 = continuity_gap(1e-3, tl);
        const double g4 = continuity_gap(1e-4, tl);
        char label[64];
        std::snprintf(label, sizeof label, "continuity %s 1e-3 vs 1e-2", side);
        add(out, "limits", label, g3 / g2, tol);
        std::snprintf(label, sizeof label, "continuity %s 1e-4 vs 1e-3", side);
        add(out, "limits", label, g4 / g3, tol);
    }
}

}  // namespace

std::optional<Suite> suite_from_name(std::string_view name) {
    if (name == "norms") return Suite::Norms;
    if (name == "energy") return Suite::Energy;
    if (name == "oracle") return Suite::Oracle;
    if (name == "gradient") return Suite::Gradient;
    if (name == "limits") return Suite::Limits;
    if (name == "all") return Suite::All;
    return std::nullopt;
}

const char* to_string(Suite s) {
    switch (s) {
        case Suite::Norms: return "norms";
        case Suite::Energy: return "energy";
        case Suite::Oracle: return "oracle";
        case Suite::Gradient: return "gradient";
        case Suite::Limits: return "limits";
        case Suite::All: return "all";
    }
    return "?";
}

std::vector<CheckResult> run_suite(Suite s, const Options& opt) {
    std::vector<CheckResult> out;
    switch (s) {
        case Suite::Norms: run_norms(out, opt); break;
        case Suite::Energy: run_energy(out, opt); break;
        case Suite::Oracle: run_oracle(out, opt); break;
        case Suite::Gradient: run_gradient(out, opt); break;
        case Suite::Limits: run_limits(out, opt); break;
        case Suite::All:
            run_norms(out, opt);
            run_energy(out, opt);
            run_oracle(out, opt);
            run_gradient(out, opt);
            run_limits(out, opt);
            break;
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

const CheckResult* worst_offender(const std::vector<CheckResult>& results) {
    const CheckResult* worst = nullptr;
    double worst_ratio = -1.0;
    for (const auto& r : results) {
        const double ratio = r.measured / r.tolerance;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = &r;
        }
    }
    return worst;
}

}  // namespace hodokit::verify
