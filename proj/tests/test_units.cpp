#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdf/errors.hpp"
#include "mdf/units.hpp"

#include <cmath>

using namespace mdf;
using namespace mdf::units;

TEST_CASE("identity context is a no-op")
{
    auto id = UnitContext::identity();
    CHECK(id.factor(dim::force) == 1.0);
    CHECK(id.to_physical(3.5, dim::energy) == 3.5);
}

TEST_CASE("gaussian base scales")
{
    const double L = 1e-5;
    auto g = UnitContext::gaussian(L);
    CHECK(g.factor(dim::length) == doctest::Approx(L).epsilon(1e-15));
    CHECK(g.factor(dim::time) == doctest::Approx(L / UnitContext::c_cgs).epsilon(1e-15));
    CHECK(g.factor(dim::energy) == doctest::Approx(UnitContext::hbar_cgs * UnitContext::c_cgs / L).epsilon(1e-14));
    CHECK(g.factor(dim::action) == doctest::Approx(UnitContext::hbar_cgs).epsilon(1e-14));
    CHECK(g.factor(dim::velocity) == doctest::Approx(UnitContext::c_cgs).epsilon(1e-14));
}

TEST_CASE("kelvin to beta")
{
    auto g = UnitContext::gaussian(1e-4);
    double T = 300.0;
    double want = UnitContext::hbar_cgs * UnitContext::c_cgs / (UnitContext::k_B_cgs * T * 1e-4);
    CHECK(g.beta_from_kelvin(T) == doctest::Approx(want).epsilon(1e-14));
    CHECK_THROWS_AS(g.beta_from_kelvin(0.0), DomainError);
}

TEST_CASE("round trip and dimension algebra")
{
    auto g = UnitContext::gaussian(3e-6);
    Quantity q{0.123, dim::force_per_area};
    CHECK(g.to_reduced(g.to_physical(q)).value == doctest::Approx(0.123).epsilon(1e-15));
    CHECK(dim::force / dim::length / dim::length == dim::force_per_area);
    CHECK(dim::length.pow(3) == dim::polarizability);
    CHECK(to_string(dim::force) == "g cm s^-2");
}

TEST_CASE("inconsistent scales rejected")
{
    CHECK_THROWS_AS(UnitContext(1.0, 1.0, 1.0, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(UnitContext::gaussian(0.0), DomainError);
}
