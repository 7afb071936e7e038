#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/errors.hpp"
#include "mdf/geometry_coupling.hpp"

#include <cmath>
#include <numbers>

using namespace mdf;
using namespace mdf::geometry;
using std::numbers::pi;

TEST_CASE("geometry oracle battery") { check_battery("geometry"); }

TEST_CASE("G scales as r^-6 at fixed c")
{
    Vec3 r{0.3, 0.4, 1.2};
    auto a = G_tensor(r), b = G_tensor(r * 2.0);
    CHECK(a[0][2] / b[0][2] == doctest::Approx(64.0).epsilon(1e-13));
}

TEST_CASE("slab factors are linear in each density")
{
    CHECK(G_slabs_realspace({1.0, 2.0, 3.0}) == doctest::Approx(6.0 * pi / 4).epsilon(1e-15));
    CHECK(G_P_slabs({1.0, 2.0, 1.0}) == doctest::Approx(2.0 * 75 * pi / 64).epsilon(1e-15));
}

TEST_CASE("invalid geometry")
{
    CHECK_THROWS_AS(G_halfspace({0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(G_slabs_realspace({-1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(G_tensor({0, 0, 0}), DomainError);
}
