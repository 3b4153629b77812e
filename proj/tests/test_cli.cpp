#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reapers/exporters.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(REAPERS_CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WEXITSTATUS(rc);
    std::ifstream in("cli_stdout.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    res.out = ss.str();
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("list-families exits 0 and prints the catalog") {
    RunResult res = run_cli("list-families");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("parabolic-v") != std::string::npos);
    CHECK(res.out.find("rigid") != std::string::npos);
}

TEST_CASE("curve on a rigid family refuses with exit 2 naming the solutions") {
    RunResult res = run_cli("curve --family hyperbolic-p --out should_not_exist.csv");
    CHECK(res.exit_code == 2);
    std::ifstream f("should_not_exist.csv");
    CHECK_FALSE(f.good());
}

TEST_CASE("bad configuration exits 2") {
    CHECK(run_cli("curve --family no-such --out x.csv").exit_code == 2);
    CHECK(run_cli("curve --family parabolic-v --span 1 2 --out x.csv").exit_code == 2);
    CHECK(run_cli("curve --family parabolic-v --rtol 1 --out x.csv").exit_code == 2);
}

TEST_CASE("curve emits CSV matching the closed form") {
    RunResult res = run_cli(
        "curve --family parabolic-v --branch line --span -2 2 --out cli_line.csv");
    REQUIRE(res.exit_code == 0);
    auto rows = reapers::read_curve_csv(slurp("cli_line.csv"));
    REQUIRE(rows.size() > 100);
    for (const auto& r : rows) {
        double y = std::exp(r.s / std::sqrt(5.0));
        double z = -2.0 * r.s / std::sqrt(5.0);
        CHECK(std::abs(r.y - y) <= 1e-9);
        CHECK(std::abs(r.z - z) <= 1e-9);
        CHECK(std::abs(r.residual) <= 1e-12);
    }
    std::remove("cli_line.csv");
}

TEST_CASE("surface emission keeps vertices in the half-space") {
    RunResult res = run_cli(
        "surface --family hyperbolic-v --ic 1.0 0.0 0.0 --span -1 1 --t-range -1 1 "
        "--rulings 7 --out cli_surf.obj");
    REQUIRE(res.exit_code == 0);
    std::string obj = slurp("cli_surf.obj");
    std::istringstream is(obj);
    std::string line;
    int vcount = 0;
    while (std::getline(is, line)) {
        if (line.rfind("v ", 0) == 0) {
            double x, y, z;
            REQUIRE(std::sscanf(line.c_str(), "v %lf %lf %lf", &x, &y, &z) == 3);
            CHECK(y > 0.0);
            ++vcount;
        }
    }
    CHECK(vcount > 0);
    std::remove("cli_surf.obj");
}

TEST_CASE("identical runs give byte-identical outputs") {
    RunResult a = run_cli("curve --family hyperbolic-v --ic 0.9 0.0 0.0 --span -2 2 --out cli_a.csv");
    RunResult b = run_cli("curve --family hyperbolic-v --ic 0.9 0.0 0.0 --span -2 2 --out cli_b.csv");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
    std::remove("cli_a.csv");
    std::remove("cli_b.csv");

    RunResult s1 = run_cli("separatrix --tol 1e-6");
    RunResult s2 = run_cli("separatrix --tol 1e-6");
    CHECK(s1.out == s2.out);
    CHECK(s1.out.find("r_star") != std::string::npos);
}

TEST_CASE("verify exits 4 because the audit carries flags") {
    RunResult res = run_cli("verify --out cli_audit.json");
    CHECK(res.exit_code == 4);
    std::string json = slurp("cli_audit.json");
    CHECK(json.find("\"any_flagged\": true") != std::string::npos);
    std::remove("cli_audit.json");
}

TEST_CASE("config file drives a run, flags win over it") {
    {
        std::ofstream cfg("cli_cfg.ini");
        cfg << "[curve]\n"
            << "family=parabolic-v\n"
            << "branch=line\n"
            << "span=-1 1\n"
            << "out=cli_cfg_out.csv\n";
    }
    RunResult res = run_cli("--config cli_cfg.ini curve");
    REQUIRE(res.exit_code == 0);
    auto rows = reapers::read_curve_csv(slurp("cli_cfg_out.csv"));
    CHECK(rows.front().s == -1.0);
    CHECK(rows.back().s == 1.0);

    // a flag overrides the config value
    RunResult res2 = run_cli("--config cli_cfg.ini curve --span -2 2");
    REQUIRE(res2.exit_code == 0);
    auto rows2 = reapers::read_curve_csv(slurp("cli_cfg_out.csv"));
    CHECK(rows2.front().s == -2.0);
    std::remove("cli_cfg.ini");
    std::remove("cli_cfg_out.csv");
}

TEST_CASE("guard-terminated integration exits 3 and leaves a partial file with a trailer") {
    // the hyperbolic strip edge r -> 0 is reached within this span
    RunResult res = run_cli("curve --family hyperbolic-v --ic 0.5 0.0 0.0 --span -40 40 --out cli_partial.csv");
    CHECK(res.exit_code == 3);
    std::string csv = slurp("cli_partial.csv");
    CHECK(!csv.empty());
    CHECK(csv.find("# terminated") != std::string::npos);
    CHECK(csv.find("# event") != std::string::npos);
    std::remove("cli_partial.csv");
}

TEST_CASE("phase portraits are emitted for planar families only") {
    RunResult res = run_cli("phase --family vertical-c+ --grid 0.5 0 1.0 0 1.5 0 --out cli_phase.csv");
    REQUIRE(res.exit_code == 0);
    std::string csv = slurp("cli_phase.csv");
    CHECK(csv.rfind("orbit,s,u,w", 0) == 0);
    // closed-orbit flags on every grid point in (0, 2)
    size_t count = 0, pos = 0;
    while ((pos = csv.find("class=closed", pos)) != std::string::npos) {
        ++count;
        ++pos;
    }
    CHECK(count == 3);
    std::remove("cli_phase.csv");

    CHECK(run_cli("phase --family parabolic-v --out nope.csv").exit_code == 2);
}

TEST_CASE("export-all populates a directory and propagates the audit flags") {
    CHECK(std::system("rm -rf cli_export && mkdir cli_export") == 0);
    RunResult res = run_cli("export-all --span -2 2 --out cli_export");
    CHECK(res.exit_code == 4); // audit flags present
    for (const char* f :
         {"cli_export/parabolic-v-curve.csv", "cli_export/hyperbolic-v-surface.obj",
          "cli_export/vertical-c+-phase.csv", "cli_export/tilted-v-curve.csv",
          "cli_export/separatrix.txt", "cli_export/audit.json", "cli_export/families.txt"}) {
        std::ifstream in(f);
        CHECK(in.good());
    }
    CHECK(std::system("rm -rf cli_export") == 0);
}

TEST_CASE("environment variable overrides the default output directory") {
    CHECK(std::system("mkdir -p cli_envdir") == 0);
    std::string cmd = "REAPERS_OUTPUT_DIR=cli_envdir " + std::string(REAPERS_CLI_PATH) +
                      " curve --family parabolic-v --branch line --span -1 1 > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    std::ifstream f("cli_envdir/parabolic-v-curve.csv");
    CHECK(f.good());
    CHECK(std::system("rm -rf cli_envdir") == 0);
}
