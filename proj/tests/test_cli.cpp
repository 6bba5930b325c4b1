#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "wb/csvio.hpp"

using namespace wb;

static std::string cli_path() {
    const char* p = std::getenv("WB_CLI_PATH");
    REQUIRE(p != nullptr);
    return p;
}

static std::string tmp_root() {
    const char* d = std::getenv("WB_TMP_DIR");
    REQUIRE(d != nullptr);
    return d;
}

// Run the binary with the given arguments; returns the process exit code.
static int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

static std::string fresh_dir(const std::string& name) {
    const std::string d = tmp_root() + "/" + name;
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

TEST_CASE("help and usage errors") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("cpa --help") == 0);
    CHECK(run_cli("") == 2);                      // missing subcommand
    CHECK(run_cli("frobnicate") == 2);            // unknown subcommand
    CHECK(run_cli("cpa --no-such-flag") == 2);    // unknown option
    CHECK(run_cli("cpa --tech finfet") == 2);     // bad enum value
    CHECK(run_cli("cpa --samples -3") == 2);      // rejected by validation
    CHECK(run_cli("synth --format yaml --out " + fresh_dir("cli_badfmt")) == 2);
}

TEST_CASE("data errors exit 3") {
    CHECK(run_cli("estimate --data /definitely/not/here --out " + fresh_dir("cli_nodata")) == 3);
    const std::string dir = fresh_dir("cli_badtrace");
    std::ofstream(dir + "/trace.csv") << "pc,kind,taken,target\n1000,alu,1,2000\n";
    CHECK(run_cli("trojan --trace " + dir + "/trace.csv --no-footprint --out " + dir) == 3);
}

TEST_CASE("iv-sweep writes a stamped, parseable curve") {
    const std::string dir = fresh_dir("cli_iv");
    CHECK(run_cli("iv-sweep --tech tfet --points 101 --out " + dir) == 0);
    const auto rows = read_csv(dir + "/iv_tfet.csv");
    REQUIRE(rows.size() == 102); // header + 101 points
    CHECK(rows[0][0] == "v_gs");
    CHECK(rows[1][1] == "1.00000000e-12");
    const std::string text = read_file(dir + "/iv_tfet.csv");
    CHECK(text.rfind("# workbench 1.0.0 seed=", 0) == 0);
}

TEST_CASE("estimate emits a clean reference check on the bundled data") {
    const std::string dir = fresh_dir("cli_est");
    CHECK(run_cli("estimate --out " + dir) == 0);
    const auto rows = read_csv(dir + "/reference_check.csv");
    REQUIRE(rows.size() > 100);
    // every deviation within tolerance
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][6]) < 1e-6);
}

TEST_CASE("synth respects the requested format") {
    const std::string dir = fresh_dir("cli_synth");
    CHECK(run_cli("synth --samples 40 --plaintexts random --count 8 --format both --out " + dir) ==
          0);
    CHECK(std::filesystem::exists(dir + "/traces.csv"));
    CHECK(std::filesystem::exists(dir + "/traces.tset"));
    const auto rows = read_csv(dir + "/traces.csv");
    REQUIRE(rows.size() == 9); // header + 8 traces
    CHECK(rows[0].size() == 2 + 40);
}

TEST_CASE("cpa recovers the bundled key bytes noiselessly") {
    const std::string dir = fresh_dir("cli_cpa");
    CHECK(run_cli("cpa --table3 --noise 0 --style sl --samples 200 --out " + dir) == 0);
    const auto rows = read_csv(dir + "/cpa_report.csv");
    REQUIRE(rows.size() == 17); // header + 16 key bytes
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][3] == rows[i][4]); // recovered == true
        CHECK(rows[i][8] == "true");
        CHECK(std::stod(rows[i][5]) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("cpa reruns are byte-identical") {
    const std::string d1 = fresh_dir("cli_det1"), d2 = fresh_dir("cli_det2");
    const std::string args = "cpa --table3 --style both --noise 0.1 --samples 120 --seed 77 --out ";
    CHECK(run_cli(args + d1) == 0);
    CHECK(run_cli(args + d2) == 0);
    CHECK(read_file(d1 + "/cpa_report.csv") == read_file(d2 + "/cpa_report.csv"));
}

TEST_CASE("trojan reruns are byte-identical and stamped with the seed") {
    const std::string d1 = fresh_dir("cli_tdet1"), d2 = fresh_dir("cli_tdet2");
    const std::string args =
        "trojan --trojan branchflip --period 256 --instructions 4000 --seed 9 --out ";
    CHECK(run_cli(args + d1) == 0);
    CHECK(run_cli(args + d2) == 0);
    CHECK(read_file(d1 + "/trojan_results.csv") == read_file(d2 + "/trojan_results.csv"));
    CHECK(read_file(d1 + "/trojan_footprint.csv") == read_file(d2 + "/trojan_footprint.csv"));
    CHECK(read_file(d1 + "/trojan_results.csv").rfind("# workbench 1.0.0 seed=9 ", 0) == 0);
    // a different seed produces a different synthetic workload
    const std::string d3 = fresh_dir("cli_tdet3");
    CHECK(run_cli("trojan --trojan branchflip --period 256 --instructions 4000 --seed 10 --out " +
                  d3) == 0);
    CHECK(read_file(d1 + "/trojan_results.csv") != read_file(d3 + "/trojan_results.csv"));
}

TEST_CASE("config file values apply and the command line wins") {
    const std::string dir = fresh_dir("cli_cfg");
    std::ofstream(dir + "/run.conf") << "seed = 123\n[cpa]\nnoise = 0.0\nsamples = 60\n";
    CHECK(run_cli("--config " + dir + "/run.conf cpa --out " + dir) == 0);
    const std::string stamped = read_file(dir + "/cpa_report.csv");
    CHECK(stamped.rfind("# workbench 1.0.0 seed=123 ", 0) == 0);
    const auto rows = read_csv(dir + "/cpa_report.csv");
    CHECK(std::stod(rows[1][5]) == doctest::Approx(1.0).epsilon(1e-9)); // noiseless from config

    // CLI --noise overrides the config's 0.0 with something large
    CHECK(run_cli("--config " + dir + "/run.conf cpa --noise 50 --out " + dir) == 0);
    const auto noisy = read_csv(dir + "/cpa_report.csv");
    CHECK(std::stod(noisy[1][5]) < 0.9);

    // unknown config keys are rejected
    std::ofstream(dir + "/bad.conf") << "[cpa]\nwibble = 3\n";
    CHECK(run_cli("--config " + dir + "/bad.conf cpa --out " + dir) == 2);
}

TEST_CASE("trojan accepts a recorded trace file") {
    const std::string dir = fresh_dir("cli_trace");
    std::ofstream(dir + "/t.csv") << "pc,kind,taken,target\n"
                                  << "1000,alu,,\n1004,load,,\n1008,branch,1,ff8\n"
                                  << "100c,store,,\n1010,branch,0,1004\n";
    CHECK(run_cli("trojan --trace " + dir + "/t.csv --trojan bufferstall --period 4 "
                  "--no-footprint --out " +
                  dir) == 0);
    const auto rows = read_csv(dir + "/trojan_results.csv");
    REQUIRE(rows.size() == 3); // header + healthy + infected
    CHECK(rows[1][1] == "none");
    CHECK(rows[2][1] == "bufferstall");
    CHECK(rows[1][4] == "5"); // retired
    CHECK(rows[2][4] == "5");
}
