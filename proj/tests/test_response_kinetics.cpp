#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/errors.hpp"
#include "mdf/response_kinetics.hpp"

#include <cmath>
#include <numbers>

using namespace mdf;
using namespace mdf::response;
using std::numbers::pi;

TEST_CASE("response oracle battery") { check_battery("response"); }

TEST_CASE("thermal occupation")
{
    auto o = OscState::thermal(1.0, 2.0, 1.0);
    CHECK(o.occupation_factor() == doctest::Approx(1.0 / std::tanh(0.5)).epsilon(1e-15));
    CHECK(o.polarizability() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(OscState::thermal(1.0, 1.0, 800.0).n_mean < 1e-300);
}

TEST_CASE("H_P and J for unit spectra")
{
    materials::SpectralAmplitude one{1.0};
    CHECK(dissipation_H_P(one, one) == doctest::Approx(pi / 120).epsilon(1e-15));
    CHECK(dissipation_J(1.0, 3.0, one, one) == doctest::Approx(6.0 * pi / 120).epsilon(1e-15));
}

TEST_CASE("sharp amplitude scales with 1/(m1 m2)")
{
    auto a = OscState::thermal(1.2, 1.0, 0.8), b = OscState::thermal(1.2, 3.0, 0.8);
    double r = sharp_friction_amplitude(a, b, 0.8, 1.0).amplitude / sharp_friction_amplitude(a, a, 0.8, 1.0).amplitude;
    CHECK(r == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("non-positive eta rejected")
{
    CHECK_THROWS_AS(nascent_delta_g(1.0, 0.0), DomainError);
}
