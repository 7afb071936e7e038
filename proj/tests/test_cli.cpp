#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

using mdf::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

using Csv = std::map<std::string, std::vector<std::string>>;

Csv parse(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> header;
    Csv csv;
    auto split = [](const std::string& s) {
        std::vector<std::string> v;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(cell);
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (header.empty()) {
            header = cells;
            continue;
        }
        REQUIRE(cells.size() == header.size());
        for (std::size_t i = 0; i < cells.size(); ++i) csv[header[i]].push_back(cells[i]);
    }
    return csv;
}

double num(const Csv& c, const std::string& col, std::size_t row = 0) { return std::stod(c.at(col).at(row)); }

// least-squares slope of log|y| against log x
double loglog_slope(const Csv& c, const std::string& x, const std::string& y)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = c.at(x).size();
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::log(num(c, x, i)), b = std::log(std::abs(num(c, y, i)));
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("eigen example")
{
    auto r = run({"eigen", "--alpha", "0.75"});
    REQUIRE(r.code == 0);
    auto c = parse(r.out);
    CHECK(num(c, "omega_plus") == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(num(c, "omega_minus") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(num(c, "e0") == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(r.out.rfind("# mdf ", 0) == 0);
    CHECK(r.out.find("# units: reduced") != std::string::npos);
}

TEST_CASE("finite-T slab example")
{
    auto r = run({"friction", "slabs", "--temperature", "finite", "--d", "1", "--beta", "1", "--D1", "1", "--D2", "1",
                  "--rho1", "1", "--rho2", "1", "--v", "1e-3"});
    REQUIRE(r.code == 0);
    auto c = parse(r.out);
    CHECK(num(c, "force_x") == doctest::Approx(-0.12819).epsilon(1e-4));
    CHECK(num(c, "G") == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(num(c, "H0") == doctest::Approx(163.2105).epsilon(1e-6));
    CHECK(c.at("regime").at(0) == "slabs-finite-T");
}

TEST_CASE("every friction mode runs")
{
    for (auto geom : {"pair", "plane", "slabs"})
        for (auto model : {"smoothed", "sharp"}) {
            auto r = run({"friction", geom, "--model", model});
            INFO(geom << " " << model << ": " << r.err);
            CHECK(r.code == 0);
            CHECK(num(parse(r.out), "force_along_v") < 0.0);
        }
    auto z = run({"friction", "slabs", "--temperature", "zero", "--v", "0.01"});
    CHECK(z.code == 0);
    CHECK(num(parse(z.out), "force_x") == doctest::Approx(-9.638286e-12).epsilon(1e-6));
    auto drude = run({"friction", "slabs", "--omega-p", "9", "--nu", "0.1"});
    CHECK(drude.code == 0);
}

TEST_CASE("free-energy and fields")
{
    auto f = run({"free-energy", "--alpha", "0.1", "--beta", "1000"});
    REQUIRE(f.code == 0);
    CHECK(num(parse(f.out), "free_energy") == doctest::Approx(0.005).epsilon(1e-4));
    auto h = run({"fields", "--r", "2", "--zeta", "0.001"});
    REQUIRE(h.code == 0);
    auto c = parse(h.out);
    CHECK(num(c, "coupling_alpha") == 0.125);
    CHECK(num(c, "relative_deviation") < 1e-3);
}

TEST_CASE("beta sweep follows beta^-4")
{
    auto r = run({"sweep", "friction", "slabs", "--axis", "beta:0.5:4:8:log"});
    REQUIRE(r.code == 0);
    auto c = parse(r.out);
    CHECK(c.at("force_x").size() == 8);
    CHECK(std::abs(loglog_slope(c, "sweep_beta", "force_x") + 4.0) < 1e-6);
}

TEST_CASE("zero-T d sweep follows d^-6")
{
    auto r = run({"sweep", "friction", "slabs", "--temperature", "zero", "--axis", "d:0.5:5:7:log"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(loglog_slope(parse(r.out), "sweep_d", "force_x") + 6.0) < 1e-6);
}

TEST_CASE("single-point sweep equals a plain run")
{
    auto a = parse(run({"friction", "plane", "--z0", "1.5"}).out);
    auto b = parse(run({"sweep", "friction", "plane", "--axis", "z0:1.5:1.5:1"}).out);
    for (const auto& [col, vals] : a) CHECK(b.at(col) == vals);
}

TEST_CASE("axis may precede the sweep target")
{
    auto a = run({"sweep", "--axis", "v:0.001:0.003:3", "--axis", "d:1:2:2", "friction", "slabs"});
    auto b = run({"sweep", "friction", "slabs", "--axis", "v:0.001:0.003:3", "--axis", "d:1:2:2"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(parse(a.out).at("sweep_v").size() == 6);
}

TEST_CASE("sweep output independent of worker count")
{
    std::vector<std::string> base = {"sweep", "friction", "pair", "--axis", "r:0.5:3:6", "--axis", "v:1e-4:1e-2:3:log"};
    auto one = base, four = base;
    one.insert(one.end(), {"--workers", "1"});
    four.insert(four.end(), {"--workers", "4"});
    auto a = run(one), b = run(four);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(parse(a.out).at("force_x").size() == 18);
}

TEST_CASE("config file with CLI precedence")
{
    const char* path = "mdf_cli_test.cfg";
    {
        std::ofstream f(path);
        f << "# test\nalpha = 0.5\nunits=reduced\n";
    }
    auto file_only = run({"--config", path, "eigen"});
    REQUIRE(file_only.code == 0);
    CHECK(num(parse(file_only.out), "alpha") == 0.5);
    auto both = run({"--config", path, "eigen", "--alpha", "0.75"});
    CHECK(num(parse(both.out), "omega_plus") == doctest::Approx(2.0).epsilon(1e-15));
    {
        std::ofstream f(path);
        f << "alpha = 0.5\n\nbogus = 3\n";
    }
    auto bad = run({"--config", path, "eigen"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find(":3") != std::string::npos);
    CHECK(bad.err.find("bogus") != std::string::npos);
    std::remove(path);
}

TEST_CASE("json mirror")
{
    const char* path = "mdf_cli_test.json";
    auto r = run({"eigen", "--alpha", "0.75", "--json", path});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    CHECK(j["rows"][0]["omega_plus"].get<double>() == doctest::Approx(2.0));
    CHECK(j["config"]["alpha"].get<double>() == 0.75);
    std::remove(path);
}

TEST_CASE("gaussian units and kelvin temperatures")
{
    auto r = run({"friction", "slabs", "--units", "gaussian", "--temperature-kelvin", "300", "--length-unit-cm", "1e-6"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# unit force_x: g cm^-1 s^-2") != std::string::npos);
    CHECK(num(parse(r.out), "force_x") < 0.0);
    CHECK(run({"friction", "slabs", "--temperature-kelvin", "300"}).code == 3);
}

TEST_CASE("exit codes")
{
    CHECK(run({"friction", "slabs", "--d", "-1"}).code == 1);
    CHECK(run({"eigen", "--alpha", "abc"}).code == 3);
    CHECK(run({"eigen", "--beta", "1", "--temperature-kelvin", "3"}).code == 3);
    CHECK(run({"friction", "cylinder"}).code == 3);
    CHECK(run({"sweep", "eigen", "--axis", "nosuch:0:1:3"}).code == 3);
    CHECK(run({"sweep", "eigen", "--axis", "alpha:0:1:1000", "--axis", "beta:1:2:1000"}).code == 3);
    CHECK(run({}).code == 3);
    CHECK(run({"verify", "--suite", "fields"}).code == 0);
    CHECK(run({"verify", "--suite", "nosuch"}).code == 3);
}
