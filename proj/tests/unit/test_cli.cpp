#include "wellspec/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wellspec;
namespace cli = wellspec::cli;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    const char* dir = std::getenv("WELLSPEC_TMPDIR");
    const auto base = dir ? std::filesystem::path(dir) : std::filesystem::temp_directory_path();
    std::filesystem::create_directories(base);
    return base / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("help exits cleanly") {
    const auto o = run({"--help"});
    CHECK(o.code == 0);
    CHECK(o.out.find("--family") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"dance"}).code == 1);
    CHECK(run({"levels", "--no-such-flag"}).code == 1);
    const auto bad = run({"levels", "--family", "WOBBLY"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("family") != std::string::npos);
    CHECK(run({"levels", "--set", "omega1=-1"}).code == 1);
    CHECK(run({"levels", "--format", "xml"}).code == 1);
    CHECK(run({"levels", "--family", "all"}).code == 1);
    CHECK(run({"sweep", "--family", "HO"}).code == 1);
    CHECK(run({"green-grid", "--family", "HO_ASYM"}).code == 1);
    CHECK(run({"green-grid", "--grid", "-1:1:1"}).code == 1);
    CHECK(run({"levels", "--config", scratch("missing.json").string()}).code == 1);
}

TEST_CASE("levels output") {
    const auto o = run({"levels", "--family", "HO", "--count", "4"});
    REQUIRE(o.code == 0);
    const auto l = lines(o.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "index,parity,eps,residual,bracket_lo,bracket_hi");
    CHECK(l[1].rfind("0,even,0.5,", 0) == 0);
    CHECK(l[4].rfind("3,odd,3.5,", 0) == 0);
    const auto lin = run({"levels", "--family", "LINEAR_ABS", "--count", "2"});
    REQUIRE(lin.code == 0);
    CHECK(lines(lin.out)[1].rfind("0,even,1.01879297165,", 0) == 0);
    CHECK(lines(lin.out)[2].rfind("1,odd,2.33810741046,", 0) == 0);
}

TEST_CASE("json output parses") {
    const auto o = run({"levels", "--family", "DELTA_DECORATED:LINEAR_ABS", "--count", "3", "--format", "json"});
    REQUIRE(o.code == 0);
    const auto doc = nlohmann::json::parse(o.out);
    CHECK(doc.contains("roots"));
    CHECK(doc["roots"].size() == 3);
    const auto g = run({"green-grid", "--family", "LINEAR_ABS", "--grid", "-1:1:3", "--format", "json"});
    REQUIRE(g.code == 0);
    const auto grid = nlohmann::json::parse(g.out);
    CHECK(grid["values"].size() == 3);
    CHECK(grid["values"][0][2] == grid["values"][2][0]);
}

TEST_CASE("family specifications") {
    const auto a = run({"levels", "--family", "delta_decorated(linear_abs)", "--count", "2"});
    const auto b = run({"levels", "--family", R"({"tag": "DELTA_DECORATED", "base": "LINEAR_ABS"})", "--count", "2"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"levels", "--family", "HO", "--set", "omega1=2", "--count", "1"});
    REQUIRE(c.code == 0);
    CHECK(lines(c.out)[1].rfind("0,even,0.5,", 0) == 0);
}

TEST_CASE("sweep output and determinism") {
    const std::vector<std::string> args = {"sweep", "--family", "HO_ASYM", "--range", "0.5:1:0.1", "--count", "3"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    CHECK(first_line(a.out) == "param_value,root_index,eps");
    CHECK(lines(a.out).size() == 1 + 6 * 3);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    CHECK(run(threaded).out == a.out);
    CHECK(run(args).out == a.out);
}

TEST_CASE("sweep curve breaks exit with 2 unless allowed") {
    const std::vector<std::string> args = {"sweep", "--family", "LINEAR_ASYM", "--window", "0:3", "--range",
                                           "0.2:2:0.05"};
    const auto broken = run(args);
    CHECK(broken.code == 2);
    CHECK(broken.err.find("curve break") != std::string::npos);
    auto allowed = args;
    allowed.push_back("--allow-breaks");
    const auto ok = run(allowed);
    CHECK(ok.code == 0);
    CHECK(ok.err.find("curve break") != std::string::npos);
}

TEST_CASE("green-grid output") {
    const auto o = run({"green-grid", "--family", "HO", "--grid", "-1:1:3", "--energy", "1.3"});
    REQUIRE(o.code == 0);
    const auto l = lines(o.out);
    REQUIRE(l.size() == 10);
    CHECK(l[0] == "x,xp,value");
    CHECK(l[1].rfind("-1,-1,", 0) == 0);
    // Symmetric rows print the same value.
    CHECK(l[2].substr(l[2].rfind(',')) == l[4].substr(l[4].rfind(',')));
    const auto pole = run({"green-grid", "--family", "HO", "--energy", "2.5"});
    CHECK(pole.code == 2);
    CHECK(pole.out.empty());
}

TEST_CASE("table1 passes and fails honestly") {
    const auto o = run({"table1"});
    REQUIRE(o.code == 0);
    CHECK(first_line(o.out) == "index,computed,reference,abs_diff");
    CHECK(lines(o.out).size() == 1 + cli::table1_reference().size());
    // A scan step coarser than the level spacing misses levels.
    CHECK(run({"table1", "--step", "1"}).code == 3);
}

TEST_CASE("verify") {
    const auto o = run({"verify", "--family", "HO"});
    REQUIRE(o.code == 0);
    CHECK(first_line(o.out) == "family,check,index,closed_form,oracle,discrepancy,tolerance,status");
    CHECK(o.out.find("FAIL") == std::string::npos);
    // A window that skips the ground state misaligns the levels.
    CHECK(run({"verify", "--family", "HO", "--window", "1:12"}).code == 3);
    // An energy on a finite-difference eigenvalue cannot be solved.
    CHECK(run({"verify", "--family", "HO", "--energy", "0.4999997"}).code == 2);
}

TEST_CASE("dump-config round-trips through a config file") {
    const auto dumped = run({"sweep", "--family", "DELTA_DECORATED", "--param", "p", "--dump-config"});
    REQUIRE(dumped.code == 0);
    const auto path = scratch("sweep_config.json");
    std::ofstream(path) << dumped.out;
    const auto again = run({"--config", path.string(), "--dump-config"});
    REQUIRE(again.code == 0);
    CHECK(again.out == dumped.out);
    const auto doc = nlohmann::json::parse(dumped.out);
    CHECK(doc["param"] == "p");
    // Flags override the file.
    const auto override = run({"--config", path.string(), "--param", "tau", "--dump-config"});
    CHECK(nlohmann::json::parse(override.out)["param"] == "tau");
    CHECK(run({"--config", path.string(), "--set", "colour=blue"}).code == 1);
}

TEST_CASE("--out writes the file and nothing to stdout") {
    const auto path = scratch("levels.csv");
    std::filesystem::remove(path);
    const auto o = run({"levels", "--count", "2", "--out", path.string()});
    REQUIRE(o.code == 0);
    CHECK(o.out.empty());
    CHECK(slurp(path) == run({"levels", "--count", "2"}).out);
}
