#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/errors.hpp"
#include "mdf/numerics.hpp"
#include "mdf/oscillator_pair.hpp"

#include <cmath>

using namespace mdf;
using namespace mdf::oscillator;

TEST_CASE("oscillator oracle battery") { check_battery("oscillator"); }

TEST_CASE("alpha 0.75 example")
{
    auto w = eigenfrequencies(0.75);
    CHECK(w.omega_plus == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(w.omega_minus == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ground_state_energy(0.75) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("non-unit pair: trajectory lines sit at the 4x4 eigenfrequencies")
{
    OscPairConfig cfg{0.4, 1.3, 0.7, 2.0, 0.5};
    auto want = verify::oracle::eigenfrequencies_eigen(cfg);
    auto tr = integrate_eom(cfg, {1.0, 0.2, 0.0, 0.3}, 300.0, 0.004, 25);
    CHECK(tr.max_relative_energy_drift < 1e-10);
    std::vector<double> x;
    for (const auto& s : tr.states) x.push_back(s[0]);
    auto fit = numerics::sinusoid_fit(tr.t, x, 2);
    CHECK(fit.components[0].frequency == doctest::Approx(want[0]).epsilon(1e-7));
    CHECK(fit.components[1].frequency == doctest::Approx(want[1]).epsilon(1e-7));
}

TEST_CASE("invalid configurations")
{
    CHECK_THROWS_AS(OscPairConfig({0.1, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS(integrate_eom({0.1}, {1, 0, 0, 0}, 1.0, -0.1), DomainError);
}
