// End-to-end checks of the postselect-cosmo binary: exit codes, CSV
// contents and determinism. The binary path comes from the build system.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#ifndef POSTSELECT_CLI_PATH
#error "POSTSELECT_CLI_PATH must be defined by the build"
#endif

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "postselect_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + POSTSELECT_CLI_PATH + "\" " + args +
                            " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("spectrum with m = 0 reports zero particle content") {
    const fs::path dir = scratch_dir() / "spec0";
    REQUIRE(run_cli("spectrum --set model.m=0 --out " + dir.string()) == 0);
    const auto rows = read_csv(dir / "spectrum.csv");
    REQUIRE(rows.size() > 2);
    REQUIRE(rows[0].back() == "beta_sq");
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].back() == "0");
}

TEST_CASE("miracle defaults reproduce the textbook numbers") {
    const fs::path dir = scratch_dir() / "miracle";
    REQUIRE(run_cli("miracle --out " + dir.string()) == 0);
    const auto rows = read_csv(dir / "miracle.csv");
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0][0] == "w_N_re");
    CHECK(rows[1][0] == "-1");
    CHECK(rows[1][1] == "0");
    CHECK(rows[1][2] == "-2"); // T00 with omega = 2
    CHECK(rows[1][4] == "-2"); // T11 with k = 2
}

TEST_CASE("CSV output is byte-identical across runs") {
    const fs::path d1 = scratch_dir() / "det1", d2 = scratch_dir() / "det2";
    REQUIRE(run_cli("trajectory --out " + d1.string()) == 0);
    REQUIRE(run_cli("trajectory --out " + d2.string()) == 0);
    CHECK(slurp(d1 / "trajectory.csv") == slurp(d2 / "trajectory.csv"));
}

TEST_CASE("svg is emitted when requested") {
    const fs::path dir = scratch_dir() / "svg";
    REQUIRE(run_cli("stress --svg --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "stress.csv"));
    CHECK(fs::exists(dir / "stress.svg"));
    CHECK(slurp(dir / "stress.svg").find("<svg") != std::string::npos);
}

TEST_CASE("config file plus overrides") {
    const fs::path dir = scratch_dir() / "cfg";
    fs::create_directories(dir);
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "model.B = 0.25\nk_grid.list = 1.0\n";
    }
    REQUIRE(run_cli("spectrum --config " + cfg.string() + " --set model.B=0 --out " +
                    dir.string()) == 0);
    const auto rows = read_csv(dir / "spectrum.csv");
    REQUIRE(rows.size() == 2);
    // B overridden to 0: omega_in == omega_out, beta_sq == 0
    CHECK(rows[1][1] == rows[1][2]);
    CHECK(rows[1].back() == "0");
}

TEST_CASE("exit codes") {
    const std::string out = " --out " + (scratch_dir() / "codes").string();
    SECTION("usage errors") {
        CHECK(run_cli("spectrum --config /does/not/exist.cfg" + out) == 1);
        CHECK(run_cli("spectrum --set model.A=0.4 --set model.B=0.5" + out) == 1);
        CHECK(run_cli("spectrum --set bogus.key=1" + out) == 1);
        CHECK(run_cli("") == 1);
        CHECK(run_cli("notacommand") == 1);
        CHECK(run_cli("trajectory --set eta_grid.min=-3" + out) == 1);
    }
    SECTION("numerical failure from an injected zero tolerance") {
        CHECK(run_cli("verify --set tolerances.miracle=0" + out) == 2);
    }
    SECTION("orthogonal post-selection") {
        const std::string r = "0.70710678118654752";
        CHECK(run_cli("miracle --set miracle.alpha_re=" + r +
                      " --set miracle.beta_re=" + r + " --set miracle.gamma_re=" + r +
                      " --set miracle.delta_re=-" + r + out) == 3);
    }
    SECTION("verify passes on the default configuration") {
        CHECK(run_cli("verify" + out) == 0);
    }
}
