#pragma once

#include "mdf/materials_spectral.hpp"
#include "mdf/vec3.hpp"

#include <utility>

// Kubo response of the coupled pair to the velocity-dependent perturbation
// S = (p_1 x_2 / m_1 - x_1 p_2 / m_2) / 2, and the friction amplitudes that
// follow from it.  Reduced units, hbar = 1.
//
// Notation: A = 2<n_1> + 1, B = 2<n_2> + 1, Omega = w1 - w2.

namespace mdf::response {

struct OscState {
    double omega = 1.0;
    double n_mean = 0.0;
    double mass = 1.0;

    /// Oscillator in equilibrium at inverse temperature beta,
    /// 2<n> + 1 = coth(beta omega / 2).
    static OscState thermal(double omega, double mass, double beta);

    double occupation_factor() const { return 2.0 * n_mean + 1.0; }
    /// Polarizability of an isotropic oscillator, 1/(m w^2).
    double polarizability() const { return 1.0 / (mass * omega * omega); }
};

/// Finite prefactor of delta(w1 - w2); never a sampled delta function.
struct DeltaCoefficient {
    double amplitude = 0.0;
    double at_frequency = 0.0;
};

struct LKernels {
    Complex plus;
    Complex minus;
};

/// L+ = (2n+1) cos(wt) + i sin(wt),  L- = cos(wt) + i (2n+1) sin(wt).
LKernels L_kernels(double n, double omega, double t);

/// Thermal average of the commutator kernel built from the four
/// operator products (the L+ and L- pairs).
Complex M_full(const OscState& osc1, const OscState& osc2, double t);

/// The Omega^2-dropped form i w1 w2 (B - A) sin(Omega t).
Complex M_reduced(const OscState& osc1, const OscState& osc2, double t);

/// D = 1 / (2 m1 m2 w1 w2).
double response_D(const OscState& osc1, const OscState& osc2);

/// phi(t) = (1/i)(D/2) M_full(t); real-valued up to rounding.
Complex response_phi(const OscState& osc1, const OscState& osc2, double t, double D);
Complex response_phi(const OscState& osc1, const OscState& osc2, double t);

/// g(w, eta) = int_0^inf t e^{-eta t} sin(w t) dt = 2 eta w / (eta^2 + w^2)^2.
double nascent_delta_g(double w, double eta);

/// int_0^inf t e^{-eta t} cos(w1 t) sin(w2 t) dt = [g(w1 + w2) - g(w1 - w2)] / 2.
double nascent_delta_cos_sin(double omega1, double omega2, double eta);

/// coth(beta w1 / 2) - coth(beta w2 / 2).
double coth_difference(double beta, double omega1, double omega2);

/// Leading behaviour of coth_difference as w2 -> w1:
/// -(beta Omega / 2) / sinh^2(beta w1 / 2).
double coth_difference_limit(double beta, double omega1, double omega2);

/// Friction on a sharp-frequency pair, F = amplitude * delta(w1 - w2):
///   amplitude = -pi beta G / (8 m1 m2 sinh^2(beta w1 / 2)),
/// with G = (grad psi)(v . grad psi).  Every w2 dependence is evaluated on
/// the support w2 = w1.
DeltaCoefficient sharp_friction_amplitude(const OscState& osc1, const OscState& osc2, double beta, double G);

struct CPlusMinus {
    double C_minus = 0.0;
    double C_plus = 0.0;
    double omega_minus = 0.0; // |w1 - w2|
    double omega_plus = 0.0;  // w1 + w2
};

/// phi(t) = C- sin(w- t) + C+ sin(w+ t) with C+- = (w-+/2)^2 H sinh(beta w+- / 2).
CPlusMinus c_plus_minus(const OscState& osc1, const OscState& osc2, double beta, double H);

/// Zero-temperature limit of C+, (w-/2)^2 w1 w2 a1 a2 / 2.
double c_plus_zero_temperature(double omega1, double omega2, double alpha1, double alpha2);

/// H_P = (pi / 120) D1 D2.
double dissipation_H_P(const materials::SpectralAmplitude& s1, const materials::SpectralAmplitude& s2);

/// Zero-temperature energy dissipation rate integral for linear spectra,
/// J = 2 tau w_v^6 H_P.
double dissipation_J(double omega_v, double tau, const materials::SpectralAmplitude& s1,
                     const materials::SpectralAmplitude& s2);

/// General spectra:
///   J = 2 pi tau |w_v| int_0^|w_v| (w-/2)^2 s1(w1) s2(w2) dw1,  w2 = |w_v| - w1,
/// which reduces to the above for s(m) = D m.
double dissipation_J(double omega_v, double tau, const materials::SpectralDensity& s1,
                     const materials::SpectralDensity& s2);

} // namespace mdf::response
