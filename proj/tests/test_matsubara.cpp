#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "battery.hpp"

#include "mdf/errors.hpp"
#include "mdf/matsubara.hpp"

using namespace mdf;
using namespace mdf::matsubara;

TEST_CASE("matsubara oracle battery") { check_battery("matsubara"); }

TEST_CASE("tail bookkeeping")
{
    auto f = induced_free_energy(0.3, MatsubaraGrid::automatic(2.0));
    CHECK(f.value == doctest::Approx(f.partial_sum + f.tail_estimate).epsilon(1e-15));
    CHECK(f.tail_error_bound <= 1e-12);
    CHECK(f.tail_estimate > 0.0);
}

TEST_CASE("a grid too short for its tolerance is refused")
{
    MatsubaraGrid g{1.0, 2, 1e-15};
    CHECK_THROWS_AS(induced_free_energy(1.0, g), NumericError);
}

TEST_CASE("bad beta")
{
    CHECK_THROWS_AS(MatsubaraGrid::automatic(0.0), DomainError);
    CHECK_THROWS_AS(MatsubaraGrid::automatic(-1.0), DomainError);
}
