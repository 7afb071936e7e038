#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/errors.hpp"
#include "mdf/friction_forces.hpp"

#include <cmath>
#include <numbers>

using namespace mdf;
using namespace mdf::forces;
using std::numbers::pi;

TEST_CASE("forces oracle battery") { check_battery("forces"); }

TEST_CASE("finite-T slab example exposes its intermediates")
{
    auto r = finite_T_slab_force({1, 1, 1}, 1e-3, {1}, {1}, 1.0, UnitContext::identity());
    CHECK(r.force[0].value == doctest::Approx(-0.1281852258).epsilon(1e-9));
    CHECK(r.intermediates.at("G").value == doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(r.intermediates.at("H0").value == doctest::Approx(163.2104985522).epsilon(1e-11));
    CHECK(r.force_along_v.value == r.force[0].value);
    CHECK(r.inputs.count("d") == 1);
    CHECK_FALSE(r.delta_valued);
}

TEST_CASE("sharp reports are delta-valued")
{
    auto o = response::OscState::thermal(1.0, 1.0, 1.0);
    auto r = pair_force_sharp({{0, 0, 1}}, {0.01, 0, 0}, o, o, 1.0);
    CHECK(r.delta_valued);
    CHECK(r.delta_frequency.value == 1.0);
    CHECK(r.force[0].value < 0.0);
}

TEST_CASE("gaussian conversion of a slab force")
{
    auto r = finite_T_slab_force({1, 1, 1}, 1e-3, {1}, {1}, 1.0, UnitContext::identity());
    auto ctx = UnitContext::gaussian(1e-6);
    auto p = to_physical_units(r, ctx);
    CHECK(p.unit_system == UnitSystem::gaussian);
    CHECK(p.force[0].dim == units::dim::force_per_area);
    CHECK(p.force[0].value == doctest::Approx(r.force[0].value * ctx.factor(units::dim::force_per_area)).epsilon(1e-15));
    CHECK_THROWS_AS(to_physical_units(p, ctx), DomainError);
    CHECK_THROWS_AS(to_reduced_units(r, ctx), DomainError);
}

TEST_CASE("regime names round trip")
{
    for (auto reg : {Regime::pair_sharp, Regime::pair_smoothed, Regime::plane, Regime::plane_sharp, Regime::slabs_sharp,
                     Regime::slabs_finite_T, Regime::slabs_zero_T})
        CHECK(parse_regime(regime_name(reg)) == reg);
    CHECK_THROWS_AS(parse_regime("sideways"), ConfigError);
}

TEST_CASE("bad inputs")
{
    auto id = UnitContext::identity();
    CHECK_THROWS_AS(finite_T_slab_force({1, 1, 1}, 1e-3, {1}, {1}, 0.0, id), DomainError);
    CHECK_THROWS_AS(zero_T_slab_force({0, 1, 1}, 1e-3, {1}, {1}, id), DomainError);
}
