#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bergman_lab/io.hpp"

namespace fs = std::filesystem;
using namespace bl;
using io::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("bergman_lab_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(BERGMAN_LAB_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The single cell directory under out/<sub>/.
fs::path only_cell(const fs::path& out, const std::string& sub) {
    fs::path found;
    int n = 0;
    for (const auto& e : fs::directory_iterator(out / sub))
        if (e.is_directory()) found = e.path(), ++n;
    REQUIRE(n == 1);
    return found;
}

}  // namespace

TEST_CASE("invalid configuration exits with 2") {
    const fs::path d = scratch("bad");
    CHECK(run("toeplitz --measure power_density:-1 --out " + d.string(), d / "log") == 2);
    CHECK(run("criteria --p 0 --out " + d.string(), d / "log") == 2);
    CHECK(run("criteria --measure no_such_measure --out " + d.string(), d / "log") == 2);
    CHECK(run("frobnicate", d / "log") == 2);
    {
        std::ofstream(d / "broken.json") << "{ \"degree\": ";
    }
    CHECK(run("kernel --config " + (d / "broken.json").string(), d / "log") == 2);
    {
        std::ofstream(d / "field.json") << R"({"degree": -3})";
    }
    CHECK(run("kernel --config " + (d / "field.json").string(), d / "log") == 2);
    CHECK(read(d / "log").find("degree") != std::string::npos);
}

TEST_CASE("numerical degeneracy exits with 3") {
    const fs::path d = scratch("degenerate");
    CHECK(run("kernel --weight power_one_minus_z:0.5 --degree 2500 --out " + d.string(), d / "log") == 3);
}

TEST_CASE("criteria reports a divergent boundedness verdict below the threshold") {
    const fs::path d = scratch("criteria");
    REQUIRE(run("criteria --criterion boundedness --p 2 --q 4 --measure power_density:0.4 --out " + d.string(), d / "log") ==
            0);
    const fs::path cell = only_cell(d, "criteria");
    const json j = json::parse(read(cell / "boundedness.json"));
    CHECK(j["report"]["verdict"] == "divergent");
    CHECK(read(cell / "summary.txt").find("divergent") != std::string::npos);
    CHECK(fs::exists(cell / "ring_trend.csv"));
}

TEST_CASE("toeplitz spectrum of a point mass") {
    const fs::path d = scratch("toeplitz");
    REQUIRE(run("toeplitz --degree 40 --measure 'atomic:[[0,0,2]]' --out " + d.string(), d / "log") == 0);
    const fs::path cell = only_cell(d, "toeplitz");
    std::istringstream csv(read(cell / "spectrum.csv"));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    CHECK(header == "k,lambda");
    const double lambda = std::stod(row.substr(row.find(',') + 1));
    CHECK(lambda == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    std::getline(csv, row);
    CHECK(std::abs(std::stod(row.substr(row.find(',') + 1))) < 1e-12);
}

TEST_CASE("artifacts carry the config hash and tool version") {
    const fs::path d = scratch("stamp");
    REQUIRE(run("lattice --r 0.5,0.3 --rmax 0.9 --out " + d.string(), d / "log") == 0);
    int cells = 0;
    for (const auto& e : fs::directory_iterator(d / "lattice")) {
        if (!e.is_directory()) continue;
        ++cells;
        const json j = json::parse(read(e.path() / "lattice.json"));
        CHECK(j["tool_version"] == io::kToolVersion);
        CHECK(j["config_hash"] == e.path().filename().string());
        CHECK(j["config_hash"] == io::config_hash(json{{"subcommand", j["subcommand"]}, {"config", j["config"]}}));
    }
    CHECK(cells == 2);
    const json summary = json::parse(read(d / "lattice" / "summary.json"));
    CHECK(summary["cells"].size() == 2);
    CHECK(summary.contains("config_hash"));
}

TEST_CASE("config round trip") {
    io::RunConfig c;
    c.weight = io::weight_spec("standard:1");
    c.measure = io::measure_spec("power_density:0.6");
    c.degree = 64;
    c.r_max = 0.97;
    c.p = {2.0, 3.0};
    c.q = {4.0};
    c.ladder.rings = 6;
    c.criterion = "compactness";
    const json j = c.to_json();
    CHECK(io::RunConfig::from_json(j).to_json() == j);

    const fs::path d = scratch("config");
    c.out = (d / "out").string();
    {
        std::ofstream(d / "run.json") << io::dump(c.to_json());
    }
    CHECK(io::load_config(d / "run.json").to_json() == c.to_json());

    REQUIRE(run("criteria --config " + (d / "run.json").string() + " --p 2", d / "log") == 0);
    const fs::path cell = only_cell(d / "out", "criteria");
    const json rep = json::parse(read(cell / "compactness.json"));
    json expect = c.to_json();
    expect.erase("out");
    expect["p"] = json::array({2.0});
    CHECK(rep["config"] == expect);
}

TEST_CASE("identical runs write identical bytes") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "criteria --criterion carleson --s 2 --measure power_density:1 --out ";
    REQUIRE(run(args + a.string(), a / "log") == 0);
    REQUIRE(run(args + b.string(), b / "log") == 0);
    const fs::path ca = only_cell(a, "criteria"), cb = only_cell(b, "criteria");
    CHECK(ca.filename() == cb.filename());
    CHECK(read(ca / "carleson.json") == read(cb / "carleson.json"));
    CHECK(read(ca / "ring_trend.csv") == read(cb / "ring_trend.csv"));
}
