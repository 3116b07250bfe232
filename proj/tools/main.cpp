#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hodokit/errors.hpp"
#include "hodokit/ode.hpp"
#include "hodokit/verify.hpp"
#include "json.hpp"

namespace {

using hodokit::Branch;
using hodokit::Interval;
using hodokit::SystemParams;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailure = 2;  // verification or I/O failure
constexpr int kExitNoTrajectory = 3;

struct RunConfig {
    std::optional<double> m, kappa, ell, E, theta0;
    std::optional<double> E_over_m, kappa_over_ell;
    std::string branch = "auto";
    int samples = 512;
    std::string format = "csv";
    std::string output;  // empty or "-" means stdout
    std::optional<double> theta_min, theta_max;
    std::optional<double> tol;
};

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");

    static const char* known[] = {"m",       "kappa",   "ell",       "E",         "theta0",
                                  "E_over_m", "kappa_over_ell", "branch", "samples", "format",
                                  "output",  "theta_min", "theta_max", "tol"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw std::invalid_argument("unknown config key: " + key);
        (void)value;
    }

    const auto num = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key)) return std::nullopt;
        if (!j[key].is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
        return j[key].get<double>();
    };
    cfg.m = num("m");
    cfg.kappa = num("kappa");
    cfg.ell = num("ell");
    cfg.E = num("E");
    cfg.theta0 = num("theta0");
    cfg.E_over_m = num("E_over_m");
    cfg.kappa_over_ell = num("kappa_over_ell");
    if (j.contains("branch")) cfg.branch = j["branch"].get<std::string>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    cfg.theta_min = num("theta_min");
    cfg.theta_max = num("theta_max");
    cfg.tol = num("tol");
}

SystemParams make_params(const RunConfig& cfg) {
    const double m = cfg.m.value_or(1.0);
    const double ell = cfg.ell.value_or(1.0);
    if (cfg.kappa && cfg.kappa_over_ell)
        throw std::invalid_argument("give either kappa or kappa_over_ell, not both");
    if (cfg.E && cfg.E_over_m) throw std::invalid_argument("give either E or E_over_m, not both");
    if (!cfg.kappa && !cfg.kappa_over_ell)
        throw std::invalid_argument("kappa (or kappa_over_ell) is required");
    if (!cfg.E && !cfg.E_over_m) throw std::invalid_argument("E (or E_over_m) is required");
    const double kappa = cfg.kappa ? *cfg.kappa : *cfg.kappa_over_ell * ell;
    const double E = cfg.E ? *cfg.E : *cfg.E_over_m * m;
    return SystemParams(m, kappa, ell, E, cfg.theta0.value_or(0.0));
}

Branch make_branch(const RunConfig& cfg) {
    if (cfg.branch == "auto") return Branch::Auto;
    if (cfg.branch == "positive") return Branch::Positive;
    if (cfg.branch == "negative") return Branch::Negative;
    throw std::invalid_argument("branch must be auto, positive or negative");
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        if (!std::cout) throw hodokit::Error("failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hodokit::Error("cannot open output file: " + path);
    out << body;
    if (!out) throw hodokit::Error("failed writing output file: " + path);
}

json params_json(const SystemParams& p, const RunConfig& cfg) {
    return json{{"m", p.m},          {"kappa", p.kappa}, {"ell", p.ell},
                {"E", p.E},          {"theta0", p.theta0}, {"branch", cfg.branch}};
}

int cmd_classify(const RunConfig& cfg) {
    const SystemParams p = make_params(cfg);
    const Branch branch = make_branch(cfg);
    hodokit::TrajectoryReport rep;
    try {
        rep = hodokit::trajectory_report(p, branch);
    } catch (const hodokit::NoTrajectory& e) {
        json j{{"input", params_json(p, cfg)}, {"error", "NoTrajectory"}, {"detail", e.what()}};
        std::cout << j.dump(2) << "\n";
        return kExitNoTrajectory;
    }

    json j;
    j["input"] = params_json(p, cfg);
    j["regime"] = hodokit::to_string(p.regime);
    j["orbit_class"] = hodokit::to_string(rep.orbit_class);
    switch (p.regime) {
        case hodokit::Regime::TimeLike:
            j["beta_or_betabar"] = p.beta;
            j["B_o_or_A_o"] = p.B_o;
            break;
        case hodokit::Regime::LightLike:
            j["beta_or_betabar"] = nullptr;
            j["B_o_or_A_o"] = nullptr;
            break;
        case hodokit::Regime::SpaceLike:
            j["beta_or_betabar"] = p.beta_bar;
            j["B_o_or_A_o"] = p.A_o;
            break;
    }
    j["Lambda"] = p.Lambda;
    if (rep.theta_infinity) j["theta_infinity"] = *rep.theta_infinity;
    if (rep.psi_infinity) j["psi_infinity"] = *rep.psi_infinity;
    j["r_min"] = rep.r_min;
    if (std::isfinite(rep.r_max)) j["r_max"] = rep.r_max;
    if (rep.closed_orbit)
        j["closed_orbit"] = json{{"p", rep.closed_orbit->num}, {"q", rep.closed_orbit->den}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

std::string samples_csv(const std::vector<hodokit::HodographSample>& rows) {
    std::string out = "theta,u0,ux,uy,uz,ur,utheta,r,x,y,tau,t,energy_residual,norm_residual\n";
    for (const auto& s : rows) {
        out += fmt15(s.theta) + ',' + fmt15(s.u.t) + ',' + fmt15(s.u.x) + ',' + fmt15(s.u.y) +
               ',' + fmt15(s.u.z) + ',' + fmt15(s.u_r) + ',' + fmt15(s.u_theta) + ',' +
               fmt15(s.r) + ',' + fmt15(s.x) + ',' + fmt15(s.y) + ',' + fmt15(s.tau) + ',' +
               fmt15(s.t) + ',' + fmt15(s.energy_residual) + ',' + fmt15(s.norm_residual) + '\n';
    }
    return out;
}

std::string samples_json(const std::vector<hodokit::HodographSample>& rows) {
    json arr = json::array();
    for (const auto& s : rows) {
        arr.push_back(json{{"theta", s.theta},
                           {"u0", s.u.t},
                           {"ux", s.u.x},
                           {"uy", s.u.y},
                           {"uz", s.u.z},
                           {"ur", s.u_r},
                           {"utheta", s.u_theta},
                           {"r", s.r},
                           {"x", s.x},
                           {"y", s.y},
                           {"tau", s.tau},
                           {"t", s.t},
                           {"energy_residual", s.energy_residual},
                           {"norm_residual", s.norm_residual}});
    }
    return arr.dump(2) + "\n";
}

void svg_polyline(std::string& out, const std::vector<double>& xs, const std::vector<double>& ys,
                  double x_off, const char* label) {
    double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xmin = std::min(xmin, xs[i]);
        xmax = std::max(xmax, xs[i]);
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    const double spanx = xmax - xmin > 0 ? xmax - xmin : 1.0;
    const double spany = ymax - ymin > 0 ? ymax - ymin : 1.0;
    const double side = 400.0, margin = 40.0;
    const auto mx = [&](double x) { return x_off + margin + (x - xmin) / spanx * side; };
    const auto my = [&](double y) { return margin + (ymax - y) / spany * side; };

    out += "<g>\n<text x=\"" + fmt12(x_off + margin) + "\" y=\"20\">" + label + "</text>\n";
    if (xmin <= 0.0 && xmax >= 0.0)
        out += "<line x1=\"" + fmt12(mx(0)) + "\" y1=\"" + fmt12(margin) + "\" x2=\"" +
               fmt12(mx(0)) + "\" y2=\"" + fmt12(margin + side) + "\" stroke=\"black\"/>\n";
    if (ymin <= 0.0 && ymax >= 0.0)
        out += "<line x1=\"" + fmt12(x_off + margin) + "\" y1=\"" + fmt12(my(0)) + "\" x2=\"" +
               fmt12(x_off + margin + side) + "\" y2=\"" + fmt12(my(0)) +
               "\" stroke=\"black\"/>\n";
    out += "<polyline fill=\"none\" stroke=\"red\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += fmt12(mx(xs[i])) + ',' + fmt12(my(ys[i]));
    }
    out += "\"/>\n</g>\n";
}

std::string samples_svg(const std::vector<hodokit::HodographSample>& rows) {
    std::vector<double> ux, uy, x, y;
    for (const auto& s : rows) {
        ux.push_back(s.u.x);
        uy.push_back(s.u.y);
        x.push_back(s.x);
        y.push_back(s.y);
    }
    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"480\">\n";
    svg_polyline(out, ux, uy, 0.0, "hodograph u_x-u_y");
    svg_polyline(out, x, y, 480.0, "orbit x-y");
    out += "</svg>\n";
    return out;
}

int cmd_sample(const RunConfig& cfg) {
    const SystemParams p = make_params(cfg);
    const Branch branch = make_branch(cfg);
    Interval window = hodokit::default_window(p, branch);
    if (cfg.theta_min) window.lo = *cfg.theta_min;
    if (cfg.theta_max) window.hi = *cfg.theta_max;

    const auto rows = hodokit::sample_trajectory(p, window, cfg.samples);
    std::string body;
    if (cfg.format == "csv") body = samples_csv(rows);
    else if (cfg.format == "json") body = samples_json(rows);
    else if (cfg.format == "svg") body = samples_svg(rows);
    else throw std::invalid_argument("format must be csv, json or svg");
    write_text(cfg.output, body);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite_name) {
    const auto suite = hodokit::verify::suite_from_name(suite_name);
    if (!suite) throw std::invalid_argument("unknown suite: " + suite_name);

    hodokit::verify::Options opt;
    if (const char* env = std::getenv("HODOKIT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || v <= 0.0)
            throw std::invalid_argument("HODOKIT_TOL must be a positive real");
        opt.tol_override = v;
    }
    if (cfg.tol) opt.tol_override = *cfg.tol;  // flag wins over the environment

    const auto results = hodokit::verify::run_suite(*suite, opt);
    std::printf("%-9s %-40s %13s %10s  %s\n", "suite", "check", "measured", "tol", "result");
    for (const auto& r : results)
        std::printf("%-9s %-40s %13.3e %10.1e  %s\n", r.suite.c_str(), r.label.c_str(),
                    r.measured, r.tolerance, r.pass ? "PASS" : "FAIL");
    if (!hodokit::verify::all_passed(results)) {
        const auto* w = hodokit::verify::worst_offender(results);
        std::printf("FAILED: worst offender: %s %s measured=%.3e tol=%.1e\n", w->suite.c_str(),
                    w->label.c_str(), w->measured, w->tolerance);
        return kExitFailure;
    }
    std::printf("all checks passed\n");
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& param, double from, double to, int steps) {
    if (param != "E" && param != "kappa" && param != "ell")
        throw std::invalid_argument("sweep param must be E, kappa or ell");
    if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");

    std::string out = param + ",regime,orbit_class,theta_infinity,r_min,r_max,note\n";
    std::string prev_regime;
    for (int i = 0; i < steps; ++i) {
        const double v = from + (to - from) * static_cast<double>(i) / (steps - 1);
        RunConfig row_cfg = cfg;
        if (param == "E") {
            row_cfg.E = v;
            row_cfg.E_over_m.reset();
        } else if (param == "kappa") {
            row_cfg.kappa = v;
            row_cfg.kappa_over_ell.reset();
        } else {
            row_cfg.ell = v;
        }

        std::string regime, orbit_class, theta_inf, r_min, r_max, note;
        try {
            const SystemParams p = make_params(row_cfg);
            regime = hodokit::to_string(p.regime);
            if (!prev_regime.empty() && regime != prev_regime) note = "regime-boundary";
            prev_regime = regime;
            try {
                const auto rep = hodokit::trajectory_report(p, make_branch(row_cfg));
                orbit_class = hodokit::to_string(rep.orbit_class);
                if (rep.theta_infinity) theta_inf = fmt15(*rep.theta_infinity);
                r_min = fmt15(rep.r_min);
                r_max = fmt15(rep.r_max);
            } catch (const hodokit::NoTrajectory&) {
                orbit_class = "none";
                note = note.empty() ? "no-trajectory" : note + ";no-trajectory";
            }
        } catch (const std::exception&) {
            note = "invalid-params";
        }
        out += fmt15(v) + ',' + regime + ',' + orbit_class + ',' + theta_inf + ',' + r_min + ',' +
               r_max + ',' + note + '\n';
    }
    write_text(cfg.output, out);
    return kExitOk;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags win on conflict)");
    cmd->add_option("--m", "particle mass");
    cmd->add_option("--kappa", "coupling strength (sign sets attraction/repulsion)");
    cmd->add_option("--ell", "angular momentum magnitude");
    cmd->add_option("--E", "total energy");
    cmd->add_option("--E-over-m", "total energy in units of m");
    cmd->add_option("--kappa-over-ell", "coupling in units of ell");
    cmd->add_option("--theta0", "shift angle (radians)");
    cmd->add_option("--branch", cfg.branch, "auto | positive | negative");
    cmd->add_option("--samples", cfg.samples, "number of samples");
    cmd->add_option("--format", cfg.format, "csv | json | svg");
    cmd->add_option("--output,-o", cfg.output, "output path (default stdout)");
    cmd->add_option("--theta-min", "window override, lower edge");
    cmd->add_option("--theta-max", "window override, upper edge");
    cmd->add_option("--tol", "tolerance override");
}

// Flags win over the config file; fold parsed flag values back in.
void merge_flags(const CLI::App* cmd, RunConfig& cfg) {
    const auto take = [&](const char* name, std::optional<double>& slot) {
        if (cmd->count(name)) slot = cmd->get_option(name)->as<double>();
    };
    take("--m", cfg.m);
    take("--kappa", cfg.kappa);
    take("--ell", cfg.ell);
    take("--E", cfg.E);
    take("--E-over-m", cfg.E_over_m);
    take("--kappa-over-ell", cfg.kappa_over_ell);
    take("--theta0", cfg.theta0);
    take("--theta-min", cfg.theta_min);
    take("--theta-max", cfg.theta_max);
    take("--tol", cfg.tol);
    if (cmd->count("--branch")) cfg.branch = cmd->get_option("--branch")->as<std::string>();
    if (cmd->count("--samples")) cfg.samples = cmd->get_option("--samples")->as<int>();
    if (cmd->count("--format")) cfg.format = cmd->get_option("--format")->as<std::string>();
    if (cmd->count("--output")) cfg.output = cmd->get_option("--output")->as<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hodokit: exact velocity-space orbits for Coulomb systems"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    CLI::App* classify = app.add_subcommand("classify", "regime and orbit report (JSON)");
    add_common_options(classify, cfg, config_path);

    CLI::App* sample = app.add_subcommand("sample", "sample a trajectory to csv/json/svg");
    add_common_options(sample, cfg, config_path);

    CLI::App* verify = app.add_subcommand("verify", "run built-in verification suites");
    std::string suite_name = "all";
    add_common_options(verify, cfg, config_path);
    verify->add_option("--suite", suite_name, "norms | energy | oracle | gradient | limits | all");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter, report per-row classification");
    std::string sweep_param;
    double sweep_from = 0.0, sweep_to = 0.0;
    int sweep_steps = 0;
    add_common_options(sweep, cfg, config_path);
    sweep->add_option("--param", sweep_param, "E | kappa | ell")->required();
    sweep->add_option("--from", sweep_from, "first value")->required();
    sweep->add_option("--to", sweep_to, "last value")->required();
    sweep->add_option("--steps", sweep_steps, "number of rows")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalid;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (!config_path.empty()) load_config_file(cfg, config_path);
        merge_flags(active, cfg);
        if (active == classify) return cmd_classify(cfg);
        if (active == sample) return cmd_sample(cfg);
        if (active == verify) return cmd_verify(cfg, suite_name);
        if (active == sweep) return cmd_sweep(cfg, sweep_param, sweep_from, sweep_to, sweep_steps);
    } catch (const hodokit::NoTrajectory& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoTrajectory;
    } catch (const hodokit::OutsideAdmissibleRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoTrajectory;
    } catch (const hodokit::UnphysicalParameters& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitInvalid;
}
