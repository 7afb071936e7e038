#include "mdf/response_kinetics.hpp"

#include "mdf/errors.hpp"
#include "mdf/numerics.hpp"

#include <cmath>
#include <numbers>

namespace mdf::response {

using std::numbers::pi;

namespace {

constexpr Complex I{0.0, 1.0};

void require_eta(double eta, const char* op)
{
    if (!(eta > 0.0)) throw DomainError(std::string(op) + ": eta must be positive");
}

// 1 / sinh^2(x), finite for large x.
double inv_sinh2(double x)
{
    double em = -std::expm1(-2.0 * x);
    return 4.0 * std::exp(-2.0 * x) / (em * em);
}

} // namespace

OscState OscState::thermal(double omega, double mass, double beta)
{
    if (!(omega > 0.0) || !(mass > 0.0) || !(beta > 0.0)) {
        throw DomainError("OscState::thermal: omega, mass and beta must be positive");
    }
    return {omega, 1.0 / std::expm1(beta * omega), mass};
}

LKernels L_kernels(double n, double omega, double t)
{
    double c = std::cos(omega * t);
    double s = std::sin(omega * t);
    double a = 2.0 * n + 1.0;
    return {Complex(a * c, s), Complex(c, a * s)};
}

Complex M_full(const OscState& osc1, const OscState& osc2, double t)
{
    auto l1 = L_kernels(osc1.n_mean, osc1.omega, t);
    auto l2 = L_kernels(osc2.n_mean, osc2.omega, t);
    const double w1 = osc1.omega, w2 = osc2.omega;
    Complex plus = l1.plus * l2.plus - std::conj(l1.plus) * std::conj(l2.plus);
    Complex minus = l1.minus * l2.minus - std::conj(l1.minus) * std::conj(l2.minus);
    return 0.25 * ((w1 * w1 + w2 * w2) * plus - 2.0 * w1 * w2 * minus);
}

Complex M_reduced(const OscState& osc1, const OscState& osc2, double t)
{
    double omega = osc1.omega - osc2.omega;
    return I * osc1.omega * osc2.omega * (osc2.occupation_factor() - osc1.occupation_factor()) *
           std::sin(omega * t);
}

double response_D(const OscState& osc1, const OscState& osc2)
{
    return 1.0 / (2.0 * osc1.mass * osc2.mass * osc1.omega * osc2.omega);
}

Complex response_phi(const OscState& osc1, const OscState& osc2, double t, double D)
{
    return (0.5 * D) * M_full(osc1, osc2, t) / I;
}

Complex response_phi(const OscState& osc1, const OscState& osc2, double t)
{
    return response_phi(osc1, osc2, t, response_D(osc1, osc2));
}

double nascent_delta_g(double w, double eta)
{
    require_eta(eta, "nascent_delta_g");
    double q = eta * eta + w * w;
    return 2.0 * eta * w / (q * q);
}

double nascent_delta_cos_sin(double omega1, double omega2, double eta)
{
    require_eta(eta, "nascent_delta_cos_sin");
    return 0.5 * (nascent_delta_g(omega1 + omega2, eta) - nascent_delta_g(omega1 - omega2, eta));
}

double coth_difference(double beta, double omega1, double omega2)
{
    if (!(beta > 0.0) || !(omega1 > 0.0) || !(omega2 > 0.0)) {
        throw DomainError("coth_difference: beta and frequencies must be positive");
    }
    // coth a - coth b = sinh(b - a) / (sinh a sinh b), no cancellation near a = b
    double a = 0.5 * beta * omega1;
    double b = 0.5 * beta * omega2;
    return std::sinh(b - a) / (std::sinh(a) * std::sinh(b));
}

double coth_difference_limit(double beta, double omega1, double omega2)
{
    if (!(beta > 0.0) || !(omega1 > 0.0)) throw DomainError("coth_difference_limit: beta and w1 must be positive");
    double omega = omega1 - omega2;
    return -0.5 * beta * omega * inv_sinh2(0.5 * beta * omega1);
}

DeltaCoefficient sharp_friction_amplitude(const OscState& osc1, const OscState& osc2, double beta, double G)
{
    if (!(beta > 0.0)) throw DomainError("sharp_friction_amplitude: beta must be positive");
    double amp = -pi * beta * G * inv_sinh2(0.5 * beta * osc1.omega) / (8.0 * osc1.mass * osc2.mass);
    return {amp, osc1.omega};
}

CPlusMinus c_plus_minus(const OscState& osc1, const OscState& osc2, double beta, double H)
{
    if (!(beta > 0.0)) throw DomainError("c_plus_minus: beta must be positive");
    CPlusMinus c;
    c.omega_minus = std::abs(osc1.omega - osc2.omega);
    c.omega_plus = osc1.omega + osc2.omega;
    c.C_minus = 0.25 * c.omega_plus * c.omega_plus * H * std::sinh(0.5 * beta * c.omega_minus);
    c.C_plus = 0.25 * c.omega_minus * c.omega_minus * H * std::sinh(0.5 * beta * c.omega_plus);
    return c;
}

double c_plus_zero_temperature(double omega1, double omega2, double alpha1, double alpha2)
{
    double wm = std::abs(omega1 - omega2);
    return 0.5 * 0.25 * wm * wm * omega1 * omega2 * alpha1 * alpha2;
}

double dissipation_H_P(const materials::SpectralAmplitude& s1, const materials::SpectralAmplitude& s2)
{
    return pi / 120.0 * s1.D * s2.D;
}

double dissipation_J(double omega_v, double tau, const materials::SpectralAmplitude& s1,
                     const materials::SpectralAmplitude& s2)
{
    if (!(tau > 0.0)) throw DomainError("dissipation_J: tau must be positive");
    return 2.0 * tau * std::pow(omega_v, 6) * dissipation_H_P(s1, s2);
}

double dissipation_J(double omega_v, double tau, const materials::SpectralDensity& s1,
                     const materials::SpectralDensity& s2)
{
    if (!(tau > 0.0)) throw DomainError("dissipation_J: tau must be positive");
    const double w = std::abs(omega_v);
    if (w == 0.0) return 0.0;
    auto integrand = [&](double w1) {
        double w2 = w - w1;
        double half_diff = 0.5 * (w1 - w2);
        return half_diff * half_diff * s1.weight(w1) * s2.weight(w2);
    };
    double integral = numerics::quad_finite(integrand, 0.0, w, 1e-13, 1e-300).value;
    return 2.0 * pi * tau * w * integral;
}

} // namespace mdf::response
