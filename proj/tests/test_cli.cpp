#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(HODOKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "hodokit_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<double>> parse_csv(const std::string& body, std::string* header) {
    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell.empty() ? std::nan("") : std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

const std::string kFig6 = "--m 1 --ell 1 --kappa-over-ell -0.8660254037844386 --E 0.6";

}  // namespace

TEST_CASE("classify reports the closed bound reference case") {
    const CliResult r = run_cli("classify " + kFig6);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["regime"] == "TimeLike");
    CHECK(j["orbit_class"] == "ClosedBound");
    CHECK(std::abs(j["beta_or_betabar"].get<double>() - 0.5) < 1e-14);
    CHECK(j["closed_orbit"]["p"] == 1);
    CHECK(j["closed_orbit"]["q"] == 2);
    CHECK(std::abs(j["r_min"].get<double>() - 0.29367619255488) < 1e-10);
}

TEST_CASE("classify reports the light-like repulsion endpoint") {
    const CliResult r = run_cli("classify --m 1 --kappa 1 --ell 1 --E 1.25");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["regime"] == "LightLike");
    CHECK(j["orbit_class"] == "UnboundScatter");
    CHECK(std::abs(j["theta_infinity"].get<double>() - 0.6) < 1e-14);
}

TEST_CASE("classify exits 3 when no trajectory exists") {
    const CliResult r = run_cli("classify --m 1 --kappa 1.5 --ell 1 --E 0.9");
    CHECK(r.exit_code == 3);
}

TEST_CASE("invalid parameters exit 1") {
    CHECK(run_cli("classify --m 1 --kappa 0 --ell 1 --E 1.0").exit_code == 1);
    CHECK(run_cli("classify --m 1 --ell 1 --E 1.0").exit_code == 1);
    CHECK(run_cli("classify --m -1 --kappa 1 --ell 1 --E 1.0").exit_code == 1);
    // E-over-m convenience flag conflicts with an explicit E
    CHECK(run_cli("classify --m 1 --kappa 1 --ell 1 --E 1.0 --E-over-m 1.25").exit_code == 1);
}

TEST_CASE("classify JSON output round-trips through --config") {
    const CliResult first = run_cli("classify --m 1 --kappa -1 --ell 1 --E 1.25 --branch positive");
    REQUIRE(first.exit_code == 0);
    const json j = json::parse(first.out);

    const fs::path cfg = scratch_dir() / "roundtrip.json";
    std::ofstream(cfg) << j["input"].dump();
    const CliResult second = run_cli("classify --config " + cfg.string());
    REQUIRE(second.exit_code == 0);
    CHECK(second.out == first.out);
}

TEST_CASE("config files with unknown keys are rejected") {
    const fs::path cfg = scratch_dir() / "bogus.json";
    std::ofstream(cfg) << R"({"m":1.0,"kappa":1.0,"ell":1.0,"E":1.25,"bogus":7})";
    CHECK(run_cli("classify --config " + cfg.string()).exit_code == 1);
}

TEST_CASE("flags win over the config file") {
    const fs::path cfg = scratch_dir() / "base.json";
    std::ofstream(cfg) << R"({"m":1.0,"kappa":1.5,"ell":1.0,"E":0.9})";
    // config alone: exit 3; flag override of E rescues it
    CHECK(run_cli("classify --config " + cfg.string()).exit_code == 3);
    const CliResult r = run_cli("classify --config " + cfg.string() + " --E 1.25");
    CHECK(r.exit_code == 0);
}

TEST_CASE("sample writes deterministic CSV with the documented header") {
    const fs::path a = scratch_dir() / "run_a.csv";
    const fs::path b = scratch_dir() / "run_b.csv";
    const std::string args = "sample " + kFig6 + " --samples 129 --format csv -o ";
    REQUIRE(run_cli(args + a.string()).exit_code == 0);
    REQUIRE(run_cli(args + b.string()).exit_code == 0);
    const std::string body_a = slurp(a);
    CHECK(body_a == slurp(b));

    std::string header;
    const auto rows = parse_csv(body_a, &header);
    CHECK(header == "theta,u0,ux,uy,uz,ur,utheta,r,x,y,tau,t,energy_residual,norm_residual");
    REQUIRE(rows.size() == 129);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 14);
        CHECK(std::abs(row[12]) < 1e-12);  // energy residual column
        CHECK(std::abs(row[13]) < 1e-12);  // norm residual column
    }
    // closed orbit: first and last spatial points agree
    CHECK(std::abs(rows.front()[8] - rows.back()[8]) < 1e-8);
    CHECK(std::abs(rows.front()[9] - rows.back()[9]) < 1e-8);
}

TEST_CASE("sample JSON carries the same columns") {
    const CliResult r = run_cli("sample " + kFig6 + " --samples 17 --format json");
    REQUIRE(r.exit_code == 0);
    const json arr = json::parse(r.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 17);
    CHECK(arr[0].contains("theta"));
    CHECK(arr[0].contains("utheta"));
    CHECK(arr[0].contains("norm_residual"));
}

TEST_CASE("sample SVG holds the two polylines") {
    const CliResult r = run_cli("sample " + kFig6 + " --samples 65 --format svg");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("<svg") != std::string::npos);
    std::size_t count = 0, pos = 0;
    while ((pos = r.out.find("<polyline", pos)) != std::string::npos) {
        ++count;
        pos += 9;
    }
    CHECK(count == 2);
}

TEST_CASE("sample respects window overrides and misses exit 3") {
    CHECK(run_cli("sample " + kFig6 + " --theta-min 0 --theta-max 6.283 --samples 32").exit_code ==
          0);
    CHECK(run_cli("sample --m 1 --kappa 0.8660254037844386 --ell 1 --E 1.25 --theta-min 4 "
                  "--theta-max 5 --samples 8")
              .exit_code == 3);
}

TEST_CASE("sweep over E flags the circular boundary row") {
    const CliResult r =
        run_cli("sweep --param E --from 0.5 --to 0.9 --steps 5 --m 1 --ell 1 "
                "--kappa-over-ell -0.8660254037844386");
    REQUIRE(r.exit_code == 0);
    std::string header;
    const auto rows_text = r.out;
    std::istringstream in(rows_text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "E,regime,orbit_class,theta_infinity,r_min,r_max,note");
    std::getline(in, line);  // E = 0.5: the circular minimum
    CHECK(line.find("CircularBound") != std::string::npos);
    std::istringstream row(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    CHECK(cells[4] == cells[5]);  // r_min == r_max on the boundary row
}

TEST_CASE("sweep across the regime boundary flags the crossings") {
    const CliResult r = run_cli(
        "sweep --param kappa --from 0.8 --to 1.2 --steps 5 --m 1 --ell 1 --E 1.25");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> regimes;
    std::size_t boundary_notes = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<std::string> cells;
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        regimes.push_back(cells[1]);
        if (cells.size() > 6 && cells[6].find("regime-boundary") != std::string::npos)
            ++boundary_notes;
    }
    CHECK(regimes.front() == "TimeLike");
    CHECK(regimes[2] == "LightLike");  // kappa = 1.0 exactly
    CHECK(regimes.back() == "SpaceLike");
    CHECK(boundary_notes == 2);
}

TEST_CASE("sweep of light-like repulsion energies has monotone theta_infinity") {
    const CliResult r = run_cli(
        "sweep --param E --from 1.05 --to 1.95 --steps 7 --m 1 --kappa 1 --ell 1");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    double prev = 0.0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<std::string> cells;
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        const double ti = std::stod(cells[3]);
        CHECK(ti > prev);
        CHECK(ti < 1.0);
        prev = ti;
    }
}

TEST_CASE("verify suites pass at defaults; tolerance overrides are honored") {
    CHECK(run_cli("verify --suite norms").exit_code == 0);
    CHECK(run_cli("verify --suite energy").exit_code == 0);
    CHECK(run_cli("verify --suite oracle").exit_code == 0);
    CHECK(run_cli("verify --suite gradient").exit_code == 0);
    CHECK(run_cli("verify --suite limits").exit_code == 0);
    // an absurd tolerance forces failure (exit 2) through the env override
    const std::string env = "HODOKIT_TOL=1e-30 ";
    const std::string cmd = env + std::string(HODOKIT_CLI_PATH) + " verify --suite gradient";
    FILE* pipe = popen((cmd + " >/dev/null 2>&1; echo $?").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[16] = {0};
    REQUIRE(fgets(buf, sizeof buf, pipe) != nullptr);
    pclose(pipe);
    CHECK(std::atoi(buf) == 2);
    // but the --tol flag wins over the environment
    const std::string cmd2 =
        env + std::string(HODOKIT_CLI_PATH) + " verify --suite gradient --tol 1e-3";
    FILE* pipe2 = popen((cmd2 + " >/dev/null 2>&1; echo $?").c_str(), "r");
    REQUIRE(pipe2 != nullptr);
    char buf2[16] = {0};
    REQUIRE(fgets(buf2, sizeof buf2, pipe2) != nullptr);
    pclose(pipe2);
    CHECK(std::atoi(buf2) == 0);
}
