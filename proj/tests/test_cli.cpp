#include "floq/config.hpp"
#include "floq/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace floq;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::path(FLOQ_BINARY_DIR) / "cli_scratch";
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    std::ofstream out(path, std::ios::trunc);
    out << text;
    return path;
}

std::string cli_binary() {
    const char* bin = std::getenv("FLOQ_CLI_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_binary() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config files populate every section and reject unknown keys") {
    const auto path = write_file("good.ini", R"(# comment
[lattice]
L = 4
g = 1.0
J0 = 0.2

[drive]
preset = uniform
omega = 3.5

[propagator]
dt = 0.005
order = 14
method = rk4

[scan]
omega_min = 0.5
omega_max = 5.5
omega_step = 0.02
t_max = 40
t_step = 0.25
delta_omega = 0.002

[protocol]
sequence = 1,2,1
m = 5
strict_m = false
periods = 17

[output]
dir = some/dir
svg = off
cache_dir = cache
deterministic = true
)");
    const RunConfig cfg = load_config_file(path);
    CHECK(cfg.lattice.sites == 4);
    CHECK(cfg.lattice.exchange == doctest::Approx(0.2));
    CHECK(cfg.preset == "uniform");
    CHECK(cfg.omega_base == doctest::Approx(3.5));
    CHECK(cfg.propagator.dt == doctest::Approx(0.005));
    CHECK(cfg.propagator.series_order == 14);
    CHECK(cfg.propagator.method == StepMethod::Rk4);
    CHECK(cfg.scan.omega_step == doctest::Approx(0.02));
    CHECK(cfg.sequence == "1,2,1");
    CHECK(cfg.block_periods == 5);
    CHECK_FALSE(cfg.strict_m);
    CHECK(cfg.periods == 17);
    CHECK(cfg.out_dir == "some/dir");
    CHECK_FALSE(cfg.svg);
    CHECK(cfg.cache_dir == "cache");
    CHECK(cfg.drive().multipliers == std::vector<int>{1, 1, 1});

    CHECK_THROWS_AS(load_config_file(write_file("bad1.ini", "[lattice]\nsize = 3\n")), ConfigError);
    CHECK_THROWS_AS(load_config_file(write_file("bad2.ini", "[weird]\nL = 3\n")), ConfigError);
    CHECK_THROWS_AS(load_config_file(write_file("bad3.ini", "L = 3\n")), ConfigError);
    CHECK_THROWS_AS(load_config_file(write_file("bad4.ini", "[lattice]\nL = abc\n")), ConfigError);
    CHECK_THROWS_AS(load_config_file(scratch_dir() / "missing.ini"), ConfigError);
}

TEST_CASE("multiplier lists and value coercions reject malformed input") {
    CHECK(parse_multipliers("2,1,2") == std::vector<int>{2, 1, 2});
    CHECK_THROWS_AS(parse_multipliers("2,x"), ConfigError);
    CHECK_THROWS_AS(parse_multipliers(""), ConfigError);

    RunConfig cfg;
    CHECK_THROWS_AS(apply_config_value(cfg, "drive", "preset", "sideways"), ConfigError);
    CHECK_THROWS_AS(apply_config_value(cfg, "output", "svg", "maybe"), ConfigError);
    apply_config_value(cfg, "drive", "multipliers", "1,1");
    CHECK(cfg.drive().multipliers == std::vector<int>{1, 1});
}

TEST_CASE("fmt12 emits fixed significant digits without negative zero") {
    CHECK(fmt12(0.0) == "0");
    CHECK(fmt12(-0.0) == "0");
    CHECK(fmt12(1.0 / 3.0) == "0.333333333333");
    CHECK(fmt12(-1.25e-9) == "-1.25e-09");
}

TEST_CASE("the binary reports usage errors with exit code 2") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("explode") == 2);
    CHECK(run_cli("evolve --L nonsense") == 2);
    CHECK(run_cli("evolve --L 3 --dt 0.5") == 2);
    // empty scan grid
    CHECK(run_cli("fs-scan --omega-min 3 --omega-max 1") == 2);
    // strict integrality guard
    CHECK(run_cli("steer --L 3 --J0 0.3") == 2);
    CHECK(run_cli("steer --L 3 --J0 0.1 --m 7") == 2);
}

TEST_CASE("identical configurations produce byte-identical outputs") {
    const auto out1 = scratch_dir() / "run1";
    const auto out2 = scratch_dir() / "run2";
    std::filesystem::remove_all(out1);
    std::filesystem::remove_all(out2);
    const std::string common = "evolve --L 3 --J0 0.1 --periods 6 --dt 0.005 --svg true ";
    CHECK(run_cli(common + "--out-dir " + out1.string()) == 0);
    CHECK(run_cli(common + "--out-dir " + out2.string()) == 0);
    CHECK(slurp(out1 / "evolve.csv") == slurp(out2 / "evolve.csv"));
    CHECK(slurp(out1 / "evolve_sz.svg") == slurp(out2 / "evolve_sz.svg"));
    CHECK(slurp(out1 / "evolve_corr.svg") == slurp(out2 / "evolve_corr.svg"));

    // the header names every column
    const std::string csv = slurp(out1 / "evolve.csv");
    CHECK(csv.find("n,t,sz_1,sz_2,sz_3,C_1,C_2,fidelity") != std::string::npos);
    CHECK(csv.rfind("# ", 0) == 0);
}

TEST_CASE("fs-scan writes the map, the peaks and the heatmap") {
    const auto out = scratch_dir() / "scan";
    std::filesystem::remove_all(out);
    const int rc = run_cli("fs-scan --L 2 --J0 0.1 --preset uniform --dt 0.01 "
                           "--omega-min 3.5 --omega-max 4.5 --omega-step 0.05 "
                           "--t-max 30 --t-step 1 --out-dir " +
                           out.string());
    CHECK(rc == 0);
    CHECK(std::filesystem::exists(out / "fs_scan.csv"));
    CHECK(std::filesystem::exists(out / "fs_peaks.json"));
    CHECK(std::filesystem::exists(out / "fs_scan.svg"));
    const std::string csv = slurp(out / "fs_scan.csv");
    CHECK(csv.find("omega,t,chi_F") != std::string::npos);
    const std::string svg = slurp(out / "fs_scan.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("href") == std::string::npos); // self-contained
}

TEST_CASE("steer and magnus-check emit their summaries and files") {
    const auto out = scratch_dir() / "steer3";
    std::filesystem::remove_all(out);
    CHECK(run_cli("steer --L 3 --J0 0.25 --sequence 1,2 --out-dir " + out.string()) == 0);
    CHECK(std::filesystem::exists(out / "steer.csv"));
    CHECK(std::filesystem::exists(out / "steer_corr.svg"));
    CHECK(std::filesystem::exists(out / "steer_center.svg"));

    const auto mg = scratch_dir() / "magnus";
    std::filesystem::remove_all(mg);
    CHECK(run_cli("magnus-check --L 3 --J0 0.1 --out-dir " + mg.string()) == 0);
    const std::string csv = slurp(mg / "magnus_check.csv");
    CHECK(csv.find("J0,residual,effective_empty") != std::string::npos);
}
