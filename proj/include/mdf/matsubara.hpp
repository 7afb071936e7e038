#pragma once

#include <cstdint>

// Imaginary-time (Matsubara) decomposition of the coupled pair and the
// induced free energy.  Reduced units, hbar = k_B = 1.

namespace mdf::matsubara {

struct MatsubaraGrid {
    double beta = 1.0;
    std::int64_t n_max = 0;
    double tail_tol = 1e-12; // relative to alpha^2

    void validate() const;

    /// Smallest grid (with u = 2 pi n_max / beta >= 64) whose certified
    /// tail bound meets tail_tol.
    static MatsubaraGrid automatic(double beta, double tail_tol = 1e-12);
};

/// K_n = 2 pi n / beta.
double matsubara_frequency(double beta, std::int64_t n);

/// <|x~(K)|^2> of an uncoupled unit oscillator, 1/(u^2 + 1).
double reference_mode_average(double u);

/// Second-order free-energy contribution of one Matsubara mode,
/// F_K = (2 alpha^2 / beta) u^2 / (u^2 + 1)^2.
double mode_free_energy(double alpha, double u, double beta);

struct FreeEnergy {
    double value = 0.0;        // partial sum plus tail estimate
    double partial_sum = 0.0;  // |n| <= n_max
    double tail_estimate = 0.0;
    double tail_error_bound = 0.0;
};

/// F = sum over all n of F_K.  Terms with |n| > n_max are replaced by the
/// midpoint-rule integral of the exact summand, whose error is bounded by
/// |f'(n_max + 1/2)| / 12 (both signs of n) because the summand is convex
/// and decreasing there.  Throws NumericError if that bound exceeds
/// tail_tol * alpha^2.
FreeEnergy induced_free_energy(double alpha, const MatsubaraGrid& grid);

} // namespace mdf::matsubara
