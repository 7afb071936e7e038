#pragma once

#include "mdf/oscillator_pair.hpp"
#include "mdf/response_kinetics.hpp"
#include "verify/check.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

// Independent reference computations.  None of these call the routine they
// are meant to check; they rebuild the quantity from a different starting
// point (a discretized path integral, a Gaussian moment, a matrix
// eigenproblem, a brute-force sum, a regularized time integral).

namespace mdf::verify::oracle {

/// <|x(K_n)|^2> for a unit oscillator from the time-sliced path integral:
/// the cyclic tridiagonal action matrix is inverted on the mode vector
/// (Sherman-Morrison), at `slices` and 2*`slices`, then Richardson-extrapolated.
double mode_average_path_integral(double beta, int n, int slices = 4000);

/// -1/beta * (1/2) <dL_K dL_-K> with dL_K = -2 alpha u x(K) y(-K), where the
/// real and imaginary parts of x(K), y(K) are Gaussian with <|x|^2> = 1/(u^2+1).
/// The fourth moment is taken with a 3-point Gauss-Hermite rule in 4D (exact).
double mode_free_energy_gauss_hermite(double alpha, double u, double beta);

/// Normal-mode frequencies from the eigenvalues of the 4x4 first-order
/// generator of the equations of motion, {larger, smaller}.
std::array<double, 2> eigenfrequencies_eigen(const oscillator::OscPairConfig& cfg);

/// Inverse lateral transform (1/2pi) int psi_hat(z0, q) J0(q rho) q dq,
/// which has to give 1 / sqrt(rho^2 + z0^2).
double psi_inverse_transform(double rho, double z0);

/// 2 sum_{n>=1} of the Matsubara mode free energy, summed directly to
/// `terms` and 2*`terms`, then extrapolated in 1/N.
double matsubara_brute_force(double alpha, double beta, std::int64_t terms);

/// Weight of delta(w1 - w2) recovered from the regularized Kubo integral:
/// -G int dw2 int_0^inf phi(t) t e^{-eta t} dt, with phi built from the
/// expanded cos-sin form of M, for eta = e0, e0/10, e0/100 and extrapolated.
double sharp_amplitude_eta_pipeline(const response::OscState& osc1, double mass2, double beta, double G,
                                    double eta0 = 1e-2);

/// |H_quasistatic - H_full| / |H_quasistatic| on the imaginary frequency
/// axis at |zeta r| = x, for a fixed dipole orientation.
double field_relative_deviation(double x);

} // namespace mdf::verify::oracle

namespace mdf::verify {

/// Module batteries: numerics, fields, oscillator, matsubara, response,
/// materials, geometry, forces.  Plus "acceptance" and "all".
std::vector<std::string> suite_names();
Battery run_suite(std::string_view name, std::uint64_t seed);

} // namespace mdf::verify
