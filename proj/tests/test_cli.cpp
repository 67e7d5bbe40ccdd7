#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "fdr/alpha.hpp"
#include "fdr/config.hpp"
#include "fdr/outage.hpp"

using namespace fdr;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(FDRELAY_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::map<std::string, std::string> fields(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "fdrelay_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("zero threshold never outages") {
    const auto r = run("outage --scheme tzf --gamma-th 0");
    CHECK(r.code == 0);
    CHECK(std::stod(fields(r.out).at("outage_analytic")) == 0.0);
}

TEST_CASE("usage errors") {
    CHECK(run("outage").code == 2);
    CHECK(run("alpha").code == 2);
    CHECK(run("outage --scheme tzf --no-such-flag").code != 0);
    CHECK(run("outage --scheme nope").code == 2);
    CHECK(run("sweep --family nope").code == 2);
    CHECK(run("sweep").code == 2);
    CHECK(run("").code != 0);
    CHECK(run("outage --scheme tzf --config /nonexistent/file.cfg").code != 0);
    // TZF needs two transmit antennas
    CHECK(run("outage --scheme tzf --m-t 1").code == 2);
}

TEST_CASE("alpha report agrees with the library") {
    const auto kv = fields(run("alpha --scheme tzf --seed 5").out);
    SystemConfig cfg;
    const auto ch = draw_channel(cfg, {5, 0});
    const auto r = optimal_alpha(tzf_coefficients(ch, cfg));
    CHECK(std::stod(kv.at("alpha_star")) == doctest::Approx(r.alpha_star).epsilon(1e-10));
    CHECK(std::stod(kv.at("rate")) == doctest::Approx(r.rate_at_star).epsilon(1e-10));
}

TEST_CASE("outage report agrees with the library") {
    const auto kv = fields(run("outage --scheme rzf --alpha 0.3 --p-s-dbm 12 --li-dbm -30").out);
    SystemConfig cfg;
    apply_setting(cfg, "p_s_dbm", 12.0);
    apply_setting(cfg, "li_dbm", -30.0);
    CHECK(std::stod(kv.at("outage_analytic")) == doctest::Approx(outage_rzf_exact(make_query(Scheme::RZF, cfg, 0.3))).epsilon(1e-10));
}

TEST_CASE("config file and overrides") {
    const auto path = scratch("test.cfg");
    {
        std::ofstream f(path);
        f << "# small-cell setup\np_s_dbm = 12\nli_dbm = -30\n";
    }
    const auto from_file = fields(run("outage --scheme rzf --alpha 0.3 --config " + path.string()).out);
    const auto from_flags = fields(run("outage --scheme rzf --alpha 0.3 --p_s_dbm 12 --li_dbm -30").out);
    CHECK(from_file.at("outage_analytic") == from_flags.at("outage_analytic"));
    const auto overridden = fields(run("outage --scheme rzf --alpha 0.3 --config " + path.string() + " --p-s-dbm 20").out);
    CHECK(overridden.at("outage_analytic") != from_file.at("outage_analytic"));
}

TEST_CASE("sweep CSV") {
    const auto r = run("sweep --family outage-ps --scheme tzf --engine both --trials 500 --grid 0:10:5");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "axis,scheme,engine,value,ci95");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 6);
    CHECK(r.out.find('\r') == std::string::npos);

    const auto empty = run("sweep --family delay-alpha --engine analytic");
    CHECK(empty.code == 0);
    CHECK(empty.out == "axis,scheme,engine,value,ci95\n");
}

TEST_CASE("sweeps are reproducible") {
    const auto a = scratch("a.csv"), b = scratch("b.csv");
    const std::string args = "sweep --family delay-alpha --scheme tzf,mrc --engine both --trials 300 --grid 0.1,0.5,0.9 --seed 4";
    REQUIRE(run(args + " --workers 1 --out " + a.string()).code == 0);
    REQUIRE(run(args + " --workers 4 --out " + b.string()).code == 0);
    const auto first = slurp(a);
    CHECK(first.size() > 40);
    CHECK(first == slurp(b));
    CHECK(run(args + " --out /nonexistent/dir/x.csv").code != 0);
}
