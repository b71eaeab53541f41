// End-to-end checks of the command-line front end: each case writes a config,
// invokes the real binary, and inspects exit status and output files.

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const fs::path kTmp = MSWAVE_TEST_TMPDIR;

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MSWAVE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("slab scan writes csv rows plus a metadata sidecar") {
    const fs::path ini = kTmp / "cli_scan.ini";
    const fs::path out = kTmp / "cli_scan.csv";
    write_file(ini,
               "[run]\n"
               "command = slab-scan\n"
               "output = " + out.string() + "\n"
               "[params]\n"
               "re_lo = -1\n"
               "re_hi = 1\n"
               "step = 0.5\n"
               "sigma = 0.95\n"
               "c = 1.94\n");
    REQUIRE(run_cli("slab-scan --config " + ini.string()) == 0);
    const std::string csv = read_file(out);
    CHECK(csv.rfind("re_n,im_n,T,flag\n", 0) == 0);
    // 5 data rows for [-1, 1] step 0.5
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    const auto meta = nlohmann::json::parse(read_file(out.string() + ".meta.json"));
    CHECK(meta.at("schema_version") == "1");
    CHECK(meta.at("sigma") == 0.95);
    CHECK(meta.at("c") == 1.94);
}

TEST_CASE("identical runs produce byte-identical outputs") {
    const fs::path ini = kTmp / "cli_det.ini";
    const fs::path out1 = kTmp / "cli_det1.json";
    const fs::path out2 = kTmp / "cli_det2.json";
    write_file(ini,
               "[run]\n"
               "command = slab-scan\n"
               "format = json\n"
               "[params]\n"
               "re_lo = -2\n"
               "re_hi = 2\n"
               "step = 0.25\n"
               "sigma = 0.5\n"
               "c = 1.0\n");
    REQUIRE(run_cli("slab-scan --config " + ini.string() + " --output " + out1.string()) == 0);
    REQUIRE(run_cli("slab-scan --config " + ini.string() + " --output " + out2.string()) == 0);
    CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("chain check reports residuals from a chain file") {
    const fs::path chain = kTmp / "cli_chain.txt";
    write_file(chain,
               "k 8.7\n"
               "scatterer 0 0.5 -0.5 0.866025403784439 0.866025403784439\n"
               "scatterer 1 0.31 0 0.95 1\n"
               "scatterer 2 0.89 0 1 1\n");
    const fs::path ini = kTmp / "cli_chain.ini";
    const fs::path out = kTmp / "cli_chain.json";
    write_file(ini,
               "[run]\n"
               "command = chain-check\n"
               "format = json\n"
               "output = " + out.string() + "\n"
               "[params]\n"
               "chain = " + chain.string() + "\n"
               "mass = 9.1093837015e-31 kg\n"
               "velocity = 1 m/s\n");
    REQUIRE(run_cli("chain-check --config " + ini.string()) == 0);
    const auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc.at("schema_version") == "1");
    CHECK(doc.at("forward").at("re").get<double>() == doctest::Approx(0.7317914662));
    CHECK(doc.at("backward").at("re").get<double>() == doctest::Approx(1.0006923541));
    CHECK(doc.at("residual1").get<double>() < 2e-3);
    CHECK(doc.at("residual2").get<double>() < 2e-3);
    CHECK(doc.at("de_broglie_k").get<double>() == doctest::Approx(8637.99274).epsilon(1e-6));
}

TEST_CASE("negref example check emits residual and matched sign") {
    const fs::path ini = kTmp / "cli_negref.ini";
    const fs::path out = kTmp / "cli_negref.json";
    write_file(ini,
               "[run]\n"
               "command = negref-check\n"
               "format = json\n"
               "output = " + out.string() + "\n"
               "[params]\n"
               "scenario = example1\n"
               "k = 1.6\n"
               "g = 0.7\n"
               "grid_lo = -10\n"
               "grid_hi = 10\n"
               "grid_count = 1000\n");
    REQUIRE(run_cli("negref-check --config " + ini.string()) == 0);
    const auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc.at("scenario") == "example1");
    CHECK(doc.at("grid_size") == 1000);
    CHECK(doc.at("max_residual").get<double>() < 1e-14);
    CHECK(doc.at("matched_sign") == -1);
}

TEST_CASE("packet synthesis writes the sampled grid as csv") {
    const fs::path ini = kTmp / "cli_packet.ini";
    const fs::path out = kTmp / "cli_packet.csv";
    write_file(ini,
               "[run]\n"
               "command = packet-synthesize\n"
               "output = " + out.string() + "\n"
               "[params]\n"
               "spectrum = gaussian\n"
               "center = 2.0\n"
               "width = 0.4\n"
               "mode = packet\n"
               "t = 0\n"
               "grid_lo = -1\n"
               "grid_hi = 1\n"
               "grid_count = 5\n");
    REQUIRE(run_cli("packet-synthesize --config " + ini.string()) == 0);
    const std::string csv = read_file(out);
    CHECK(csv.rfind("r,re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("config errors exit with status 2") {
    const fs::path ini = kTmp / "cli_bad.ini";
    // unknown key in params
    write_file(ini,
               "[run]\n"
               "command = slab-scan\n"
               "output = " + (kTmp / "never.csv").string() + "\n"
               "[params]\n"
               "re_lo = -1\n"
               "re_hi = 1\n"
               "step = 0.5\n"
               "sigma = 0.95\n"
               "c = 1.94\n"
               "typo = 1\n");
    CHECK(run_cli("slab-scan --config " + ini.string()) == 2);
    CHECK_FALSE(fs::exists(kTmp / "never.csv"));

    // command mismatch between config and subcommand
    write_file(ini,
               "[run]\n"
               "command = chain-check\n"
               "output = x.json\n"
               "[params]\n");
    CHECK(run_cli("slab-scan --config " + ini.string()) == 2);

    // missing config file
    CHECK(run_cli("slab-scan --config " + (kTmp / "enoent.ini").string()) == 2);
    // missing required option entirely
    CHECK(run_cli("slab-scan") == 2);
    // unknown subcommand
    CHECK(run_cli("frobnicate --config x") == 2);
}

TEST_CASE("domain errors exit with status 1") {
    const fs::path ini = kTmp / "cli_domain.ini";
    write_file(ini,
               "[run]\n"
               "command = slab-scan\n"
               "output = " + (kTmp / "never2.csv").string() + "\n"
               "[params]\n"
               "re_lo = -1\n"
               "re_hi = 1\n"
               "step = -0.5\n"
               "sigma = 0.95\n"
               "c = 1.94\n");
    CHECK(run_cli("slab-scan --config " + ini.string()) == 1);
    CHECK_FALSE(fs::exists(kTmp / "never2.csv"));
}

TEST_CASE("cli overrides take precedence over the run section") {
    const fs::path ini = kTmp / "cli_override.ini";
    const fs::path out_ini = kTmp / "cli_override_a.csv";
    const fs::path out_cli = kTmp / "cli_override_b.json";
    write_file(ini,
               "[run]\n"
               "command = slab-scan\n"
               "output = " + out_ini.string() + "\n"
               "format = csv\n"
               "[params]\n"
               "re_lo = 0\n"
               "re_hi = 1\n"
               "step = 0.5\n"
               "sigma = 0\n"
               "c = 1\n");
    REQUIRE(run_cli("slab-scan --config " + ini.string() + " --output " + out_cli.string() +
                    " --format json") == 0);
    CHECK_FALSE(fs::exists(out_ini));
    const auto doc = nlohmann::json::parse(read_file(out_cli));
    CHECK(doc.at("command") == "slab-scan");
    CHECK(doc.at("rows").size() == 3);
}
