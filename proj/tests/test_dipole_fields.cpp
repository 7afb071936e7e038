#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/dipole_fields.hpp"
#include "mdf/errors.hpp"

using namespace mdf;

TEST_CASE("fields oracle battery") { check_battery("fields"); }

TEST_CASE("field falls off as r^-2")
{
    Vec3 a = fields::magnetic_field_quasistatic({1, 0, 0}, {0, 0, 1});
    Vec3 b = fields::magnetic_field_quasistatic({1, 0, 0}, {0, 0, 3});
    CHECK(a.y / b.y == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("source dispatch")
{
    fields::DipoleSource e{fields::DipoleKind::electric, {}, {1, 0, 0}, {0, 0, 0}};
    fields::DipoleSource m{fields::DipoleKind::magnetic, {}, {0, 1, 0}, {0, 0, 0}};
    CHECK(fields::quasistatic_field(e, {0, 0, 1}) == Vec3{0, -1, 0});
    CHECK(fields::quasistatic_field(m, {0, 0, 1}) == Vec3{1, 0, 0});
}

TEST_CASE("coupling alpha")
{
    CHECK(fields::coupling_alpha(1.0) == 0.5);
    CHECK(fields::coupling_alpha(2.0) == 0.125);
    CHECK_THROWS_AS(fields::coupling_alpha(0.0), DomainError);
}
