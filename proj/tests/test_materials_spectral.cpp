#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/errors.hpp"
#include "mdf/materials_spectral.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

using namespace mdf;
using namespace mdf::materials;
using std::numbers::pi;

TEST_CASE("materials oracle battery") { check_battery("materials"); }

TEST_CASE("H0 example, D = beta = 1")
{
    auto s = SpectralDensity::linear(1.0);
    CHECK(smoothed_H0(s, s, 1.0) == doctest::Approx(163.2104985522).epsilon(1e-11));
}

TEST_CASE("tabulated linear spectrum reproduces the closed-form H0")
{
    std::vector<double> m, w;
    for (int i = 0; i <= 4000; ++i) {
        m.push_back(0.01 * i);
        w.push_back(0.01 * i);
    }
    auto tab = SpectralDensity::tabulated(m, w);
    auto lin = SpectralDensity::linear(1.0);
    CHECK(smoothed_H0(tab, tab, 1.0) == doctest::Approx(smoothed_H0(lin, lin, 1.0)).epsilon(1e-9));
}

TEST_CASE("spectrum files")
{
    const char* path = "mdf_spectrum_test.txt";
    {
        std::ofstream f(path);
        f << "# m s\n0 0\n0.5 0.25\n1 1\n";
    }
    auto s = load_tabulated_spectrum(path);
    CHECK(s.weight(0.75) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(s.weight(2.0) == 0.0);
    std::remove(path);
    CHECK_THROWS(load_tabulated_spectrum("does/not/exist.txt"));
    CHECK_THROWS(SpectralDensity::tabulated({0.0, 1.0, 0.5}, {0, 0, 0}));
    CHECK_THROWS(SpectralDensity::tabulated({0.0, 1.0}, {0, -1}));
}
