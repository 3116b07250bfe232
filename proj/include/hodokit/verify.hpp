#ifndef HODOKIT_VERIFY_HPP
#define HODOKIT_VERIFY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hodokit::verify {

enum class Suite { Norms, Energy, Oracle, Gradient, Limits, All };

std::optional<Suite> suite_from_name(std::string_view name);
const char* to_string(Suite s);

struct CheckResult {
    std::string suite;
    std::string label;
    double measured;
    double tolerance;
    bool pass;
};

struct Options {
    /// When positive, replaces the per-suite default tolerance everywhere.
    double tol_override = 0.0;
};

/// Run one suite (or all of them) over the built-in parameter matrix:
/// three regimes x {attraction, repulsion} x three energies.
std::vector<CheckResult> run_suite(Suite s, const Options& opt = {});

bool all_passed(const std::vector<CheckResult>& results);

/// The check with the worst measured/tolerance ratio, or nullptr if empty.
const CheckResult* worst_offender(const std::vector<CheckResult>& results);

}  // namespace hodokit::verify

#endif
