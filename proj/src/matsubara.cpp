#include "mdf/matsubara.hpp"

#include "mdf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mdf::matsubara {

using std::numbers::pi;

void MatsubaraGrid::validate() const
{
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("MatsubaraGrid: beta must be positive");
    if (n_max < 0) throw DomainError("MatsubaraGrid: n_max must be >= 0");
    if (!(tail_tol > 0.0)) throw DomainError("MatsubaraGrid: tail_tol must be positive");
}

MatsubaraGrid MatsubaraGrid::automatic(double beta, double tail_tol)
{
    if (!(beta > 0.0)) throw DomainError("MatsubaraGrid: beta must be positive");
    if (!(tail_tol > 0.0)) throw DomainError("MatsubaraGrid: tail_tol must be positive");
    // bound ~ (4 / beta) (2 / u^3) du / 12 per unit alpha^2; solve for u, pad by 25%
    const double du = 2.0 * pi / beta;
    double us = std::cbrt(2.0 * du / (3.0 * beta * tail_tol));
    us = std::max(1.25 * us, 64.0);
    double n = std::ceil(us / du);
    return {beta, static_cast<std::int64_t>(std::max(n, 16.0)), tail_tol};
}

double matsubara_frequency(double beta, std::int64_t n)
{
    if (!(beta > 0.0)) throw DomainError("matsubara_frequency: beta must be positive");
    return 2.0 * pi * static_cast<double>(n) / beta;
}

double reference_mode_average(double u) { return 1.0 / (u * u + 1.0); }

double mode_free_energy(double alpha, double u, double beta)
{
    if (!(beta > 0.0)) throw DomainError("mode_free_energy: beta must be positive");
    double q = u * u + 1.0;
    return 2.0 * alpha * alpha / beta * u * u / (q * q);
}

FreeEnergy induced_free_energy(double alpha, const MatsubaraGrid& grid)
{
    grid.validate();
    const double beta = grid.beta;
    const double du = 2.0 * pi / beta;

    // n = 0 vanishes; positive and negative n contribute equally.
    double partial = 0.0;
    for (std::int64_t n = grid.n_max; n >= 1; --n) partial += mode_free_energy(alpha, du * static_cast<double>(n), beta);
    partial *= 2.0;

    // Midpoint tail: sum_{n > N} f(n) ~ int_{N+1/2}^inf f(n) dn, with
    // int u^2/(u^2+1)^2 du = (atan u - u/(u^2+1)) / 2.
    const double us = du * (static_cast<double>(grid.n_max) + 0.5);
    const double prefactor = 2.0 * alpha * alpha / beta;
    const double integral_u = 0.5 * (0.5 * pi - std::atan(us) + us / (us * us + 1.0));
    const double tail = 2.0 * prefactor * integral_u / du;

    // Convexity of u^2/(u^2+1)^2 holds for u above ~1.2; below that the
    // midpoint bound is not certified.
    if (us < 2.0) {
        throw NumericError("induced_free_energy: n_max too small for a certified tail (u = " + std::to_string(us) + ")");
    }
    const double q = us * us + 1.0;
    const double dfdu = 2.0 * us * (1.0 - us * us) / (q * q * q);
    const double bound = 2.0 * prefactor * std::abs(dfdu) * du / 12.0;
    if (bound > grid.tail_tol * std::max(alpha * alpha, 1e-300)) {
        throw NumericError("induced_free_energy: tail error bound " + std::to_string(bound) + " exceeds tail_tol");
    }
    return {partial + tail, partial, tail, bound};
}

} // namespace mdf::matsubara
