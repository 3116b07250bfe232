#ifndef HODOKIT_ODE_HPP
#define HODOKIT_ODE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "hodokit/trajectory.hpp"

namespace hodokit {

/**
 * Controls for the adaptive Dormand-Prince 5(4) integrator of the covariant
 * flow dw/dtheta = (kappa/ell) Omega(theta) w. Tolerances must lie in
 * (0, 1e-2]. fixed_step > 0 disables step control entirely (order studies).
 */
struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double max_step = 0.05;
    long max_steps = 1000000;
    double fixed_step = 0.0;
};

/**
 * Dense output of one integration: every accepted step stores the quartic
 * interpolant of the underlying method, so the solution can be evaluated at
 * any theta of the span without step alignment. Immutable once built.
 */
class DenseSolution {
  public:
    FourVector operator()(double theta) const;
    double span_lo() const { return lo_; }
    double span_hi() const { return hi_; }
    std::size_t step_count() const { return segments_.size(); }

  private:
    struct Segment {
        double t0;
        double h;
        FourVector rc1, rc2, rc3, rc4, rc5;
    };
    std::vector<Segment> segments_;
    double lo_ = 0.0;
    double hi_ = 0.0;
    bool forward_ = true;

    friend DenseSolution integrate(const SystemParams&, const FourVector&, Interval,
                                   const IntegratorConfig&);
};

/// Integrate the flow from w(span.lo) = w_start to span.hi (either
/// direction; |span| <= 200 rad). Throws NonConvergence when the step budget
/// runs out and RangeOverflow when the state grows past 1e120.
DenseSolution integrate(const SystemParams& p, const FourVector& w_start, Interval span,
                        const IntegratorConfig& cfg = {});

using SolutionFn = std::function<FourVector(double)>;

/// Per-probe drift of the inner product dot(w(theta), probe(theta)) relative
/// to its value at the start of the span. Probes must themselves solve the
/// flow (v_o, a second integration, ...); then each product is conserved and
/// the drift measures integrator error.
struct ConservationReport {
    std::vector<double> drift;
    double max_drift = 0.0;
};

ConservationReport conservation_report(const SystemParams& p, const DenseSolution& solution,
                                       const std::vector<SolutionFn>& probes,
                                       int n_samples = 2001);

/// Bisection root of u_theta(theta) over a sign-changing bracket, polished to
/// ~1e-14; the arbiter for every endpoint-angle claim.
double find_utheta_root(const SystemParams& p, Interval bracket);

}  // namespace hodokit

#endif
