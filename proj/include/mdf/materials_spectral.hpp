#pragma once

#include "mdf/vec3.hpp"

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <variant>
#include <vector>

// Polarizability spectra, the Drude metal, and the thermal factors that
// weight energy transfer between the two bodies.
//
// A spectral density is the weight s(m) = m^2 alpha(m^2) distributing the
// polarizability over continuous excitation energies m = hbar omega, so that
//   h(K^2) = int alpha(m^2) m^2 / (K^2 + m^2) d(m^2)
// and, conversely, s(m) = -(1/pi) Im h(-m^2 + i gamma) for gamma -> 0+.
// Reduced units throughout (hbar = k_B = 1).

namespace mdf::materials {

/// Slope D of the linear low-energy spectrum s(m) = D m.
struct SpectralAmplitude {
    double D = 0.0;
};

using AnalyticH = std::function<Complex(Complex)>; // h as a function of complex K^2

struct LinearSpectrum {
    double D = 0.0;
    double m_max = std::numeric_limits<double>::infinity(); // cutoff; infinite is allowed inside convergent integrals
};

struct TabulatedSpectrum {
    std::vector<double> m; // strictly increasing
    std::vector<double> s; // m^2 alpha(m^2) >= 0
};

struct AnalyticSpectrum {
    AnalyticH h;
};

class SpectralDensity {
public:
    using Variant = std::variant<LinearSpectrum, TabulatedSpectrum, AnalyticSpectrum>;

    static SpectralDensity linear(double D, double m_max = std::numeric_limits<double>::infinity());
    static SpectralDensity tabulated(std::vector<double> m, std::vector<double> s);
    static SpectralDensity analytic(AnalyticH h);

    const Variant& variant() const { return v_; }
    bool is_linear() const { return std::holds_alternative<LinearSpectrum>(v_); }

    /// s(m) = m^2 alpha(m^2).  Tabulated spectra interpolate linearly and
    /// vanish outside the table; analytic ones go through spectrum_from_h.
    double weight(double m) const;

    /// Upper end of the support (infinity for analytic / untruncated linear).
    double support_max() const;

private:
    explicit SpectralDensity(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Reads a two-column (m, m^2 alpha) table; '#' starts a comment.
SpectralDensity parse_tabulated_spectrum(std::istream& in, const std::string& source_name = "<stream>");
SpectralDensity load_tabulated_spectrum(const std::string& path);

/// h(K^2) on the real axis.  Linear spectra need a finite cutoff here since
/// the defining integral diverges without one.
double h_from_spectrum(const SpectralDensity& spec, double K2);

/// Closed-form h of a linear spectrum truncated at m_max, continued to
/// complex K^2 (principal square root): 2 D (m_max - K atan(m_max / K)).
Complex linear_spectrum_h(double D, double m_max, Complex K2);

/// s(m) = -(1/pi) Im h(-m^2 + i gamma), evaluated on the ladder
/// gamma = gamma_fraction * m^2 * {1, 1e-1, 1e-2} and extrapolated linearly
/// to gamma = 0.  Throws NumericError if the two extrapolations disagree
/// (h not analytic near the real axis) or values are not finite.
double spectrum_from_h(const AnalyticH& h, double m, double gamma_fraction = 1e-2);

struct DrudeParams {
    double omega_p = 1.0;
    double nu = 1.0;
    double rho = 1.0;

    void validate() const;
};

/// eps(zeta) = 1 + omega_p^2 / (zeta (zeta + nu)) on the imaginary-frequency axis.
double drude_epsilon(const DrudeParams& p, double zeta);

/// Polarizability per particle, (eps - 1)/(eps + 1) / (2 pi rho).
double drude_polarizability_h(const DrudeParams& p, double zeta);

/// The same as an analytic function of complex K^2 (zeta = sqrt(K^2)).
AnalyticH drude_h(const DrudeParams& p);

/// Low-energy slope of the Drude spectrum, D = nu / (rho (pi omega_p)^2).
SpectralAmplitude drude_D(const DrudeParams& p);

/// Thermal weight of a sharp-frequency pair,
/// H = w1 w2 a1 a2 / (4 sinh(beta w1 / 2) sinh(beta w2 / 2)).
double thermal_H(double omega1, double omega2, double alpha1, double alpha2, double beta);

/// I = int_0^inf x^4 e^-x / (1 - e^-x)^2 dx = 4! zeta(4) = 4 pi^4 / 15.
/// Cross-checked once against the quadrature route; a disagreement above
/// 1e-10 throws NumericError.
double universal_I();
double universal_I_quadrature();
double universal_I_series();

/// Smoothed thermal factor
///   H0 = (pi beta / 2) int_0^inf m^2 s1(m) s2(m) / sinh^2(beta m / 2) dm.
/// Two untruncated linear spectra use the closed form (2 pi / beta^4) D1 D2 I;
/// everything else is integrated numerically.
double smoothed_H0(const SpectralDensity& spec1, const SpectralDensity& spec2, double beta);
double smoothed_H0_quadrature(const SpectralDensity& spec1, const SpectralDensity& spec2, double beta);

} // namespace mdf::materials
