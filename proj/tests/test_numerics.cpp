#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/errors.hpp"
#include "mdf/numerics.hpp"

#include <cmath>
#include <numbers>

using namespace mdf;
using std::numbers::pi;

TEST_CASE("numerics oracle battery") { check_battery("numerics"); }

TEST_CASE("quad_finite handles reversed and empty intervals")
{
    auto f = [](double x) { return x * x; };
    CHECK(numerics::quad_finite(f, 1.0, 0.0).value == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(numerics::quad_finite(f, 2.0, 2.0).value == 0.0);
}

TEST_CASE("quad_finite reports a non-finite integrand")
{
    CHECK_THROWS_AS(numerics::quad_finite([](double x) { return std::log(x - 0.5); }, 0.0, 1.0), NumericError);
}

TEST_CASE("exp-sinh respects the scale argument")
{
    auto f = [](double x) { return std::exp(-x / 50.0); };
    CHECK(numerics::quad_semi_infinite(f, 0.0, 1e-12, 50.0).value == doctest::Approx(50.0).epsilon(1e-11));
}

TEST_CASE("mc standard error shrinks like n^-1/2")
{
    auto sampler = [](std::mt19937_64& e) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return numerics::McSample<double>{u(e), 1.0};
    };
    auto f = [](double x) { return x * x; };
    auto a = numerics::mc_integrate(f, sampler, 10'000, 3);
    auto b = numerics::mc_integrate(f, sampler, 1'000'000, 3);
    CHECK(b.std_error / a.std_error == doctest::Approx(0.1).epsilon(0.05));
    CHECK(std::abs(b.value - 1.0 / 3.0) < 4 * b.std_error);
}

TEST_CASE("series sum starts at n0")
{
    auto r = numerics::series_sum([](std::int64_t n) { return std::pow(0.5, double(n)); },
                                  [](std::int64_t N) { return std::pow(0.5, double(N)); }, 1e-15, 0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sinusoid fit rejects too few samples")
{
    std::vector<double> t{0, 1, 2}, y{1, 0, -1};
    CHECK_THROWS(numerics::sinusoid_fit(t, y, 2));
}
