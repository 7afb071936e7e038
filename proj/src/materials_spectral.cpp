#include "mdf/materials_spectral.hpp"

#include "mdf/errors.hpp"
#include "mdf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

namespace mdf::materials {

using std::numbers::pi;

SpectralDensity SpectralDensity::linear(double D, double m_max)
{
    if (!(D >= 0.0) || !std::isfinite(D)) throw DomainError("linear spectrum: D must be >= 0");
    if (!(m_max > 0.0)) throw DomainError("linear spectrum: m_max must be positive");
    return SpectralDensity(LinearSpectrum{D, m_max});
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> m, std::vector<double> s)
{
    if (m.size() != s.size()) throw DomainError("tabulated spectrum: column lengths differ");
    if (m.size() < 2) throw DomainError("tabulated spectrum: need at least two samples");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!std::isfinite(m[i]) || !std::isfinite(s[i])) throw DomainError("tabulated spectrum: non-finite entry");
        if (m[i] < 0.0) throw DomainError("tabulated spectrum: negative energy");
        if (s[i] < 0.0) throw DomainError("tabulated spectrum: negative weight violates passivity");
        if (i > 0 && !(m[i] > m[i - 1])) throw DomainError("tabulated spectrum: energies must be strictly increasing");
    }
    return SpectralDensity(TabulatedSpectrum{std::move(m), std::move(s)});
}

SpectralDensity SpectralDensity::analytic(AnalyticH h)
{
    if (!h) throw DomainError("analytic spectrum: empty function");
    return SpectralDensity(AnalyticSpectrum{std::move(h)});
}

double SpectralDensity::weight(double m) const
{
    if (m < 0.0) return 0.0;
    if (const auto* lin = std::get_if<LinearSpectrum>(&v_)) return m <= lin->m_max ? lin->D * m : 0.0;
    if (const auto* tab = std::get_if<TabulatedSpectrum>(&v_)) {
        if (m < tab->m.front() || m > tab->m.back()) return 0.0;
        auto hi = std::upper_bound(tab->m.begin(), tab->m.end(), m);
        if (hi == tab->m.end()) return tab->s.back();
        auto i = static_cast<std::size_t>(hi - tab->m.begin());
        double f = (m - tab->m[i - 1]) / (tab->m[i] - tab->m[i - 1]);
        return tab->s[i - 1] + f * (tab->s[i] - tab->s[i - 1]);
    }
    if (m == 0.0) return 0.0;
    return spectrum_from_h(std::get<AnalyticSpectrum>(v_).h, m);
}

double SpectralDensity::support_max() const
{
    if (const auto* lin = std::get_if<LinearSpectrum>(&v_)) return lin->m_max;
    if (const auto* tab = std::get_if<TabulatedSpectrum>(&v_)) return tab->m.back();
    return std::numeric_limits<double>::infinity();
}

SpectralDensity parse_tabulated_spectrum(std::istream& in, const std::string& source_name)
{
    std::vector<double> m, s;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double a, b;
        if (!(fields >> a)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ConfigError(source_name + ":" + std::to_string(line_no) + ": expected two numbers");
        }
        std::string extra;
        if (!(fields >> b) || (fields >> extra)) {
            throw ConfigError(source_name + ":" + std::to_string(line_no) + ": expected exactly two columns");
        }
        m.push_back(a);
        s.push_back(b);
    }
    try {
        return SpectralDensity::tabulated(std::move(m), std::move(s));
    } catch (const DomainError& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
}

SpectralDensity load_tabulated_spectrum(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectrum file '" + path + "'");
    return parse_tabulated_spectrum(in, path);
}

double h_from_spectrum(const SpectralDensity& spec, double K2)
{
    if (!(K2 >= 0.0)) throw DomainError("h_from_spectrum: K^2 must be >= 0");
    if (const auto* an = std::get_if<AnalyticSpectrum>(&spec.variant())) return an->h(Complex(K2, 0.0)).real();
    if (const auto* lin = std::get_if<LinearSpectrum>(&spec.variant())) {
        if (!std::isfinite(lin->m_max)) {
            throw DomainError("h_from_spectrum: an untruncated linear spectrum diverges; set m_max");
        }
    }
    // d(m^2) = 2 m dm
    auto integrand = [&](double m) { return spec.weight(m) * 2.0 * m / (K2 + m * m); };
    double lo = 0.0;
    double hi = spec.support_max();
    if (const auto* tab = std::get_if<TabulatedSpectrum>(&spec.variant())) {
        // Piecewise-linear table: integrate panel by panel.
        double total = 0.0;
        for (std::size_t i = 1; i < tab->m.size(); ++i) {
            total += numerics::quad_finite(integrand, tab->m[i - 1], tab->m[i], 1e-12, 1e-300).value;
        }
        return total;
    }
    return numerics::quad_finite(integrand, lo, hi, 1e-12, 1e-300).value;
}

Complex linear_spectrum_h(double D, double m_max, Complex K2)
{
    Complex K = std::sqrt(K2);
    if (K == Complex(0.0, 0.0)) return 2.0 * D * m_max;
    return 2.0 * D * (m_max - K * std::atan(m_max / K));
}

double spectrum_from_h(const AnalyticH& h, double m, double gamma_fraction)
{
    if (!(m > 0.0)) throw DomainError("spectrum_from_h: m must be positive");
    if (!(gamma_fraction > 0.0)) throw DomainError("spectrum_from_h: gamma must be positive");
    const double g[3] = {gamma_fraction * m * m, 0.1 * gamma_fraction * m * m, 0.01 * gamma_fraction * m * m};
    double v[3];
    for (int i = 0; i < 3; ++i) {
        v[i] = -h(Complex(-m * m, g[i])).imag() / pi;
        if (!std::isfinite(v[i])) throw NumericError("spectrum_from_h: non-finite h near the real axis");
    }
    auto extrapolate = [&](int a, int b) { return v[b] - (v[a] - v[b]) * g[b] / (g[a] - g[b]); };
    double fine = extrapolate(1, 2);
    double coarse = extrapolate(0, 1);
    double scale = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    if (std::abs(fine - coarse) > 1e-3 * scale + 1e-300) {
        throw NumericError("spectrum_from_h: gamma ladder does not extrapolate consistently; h is not analytic here");
    }
    return fine;
}

void DrudeParams::validate() const
{
    if (!(omega_p > 0.0) || !(rho > 0.0)) throw DomainError("DrudeParams: omega_p and rho must be positive");
    if (!(nu >= 0.0)) throw DomainError("DrudeParams: nu must be >= 0");
}

double drude_epsilon(const DrudeParams& p, double zeta)
{
    p.validate();
    if (zeta == 0.0) throw DomainError("drude_epsilon: diverges at zeta = 0");
    if (!(zeta > 0.0)) throw DomainError("drude_epsilon: zeta must be positive");
    return 1.0 + p.omega_p * p.omega_p / (zeta * (zeta + p.nu));
}

double drude_polarizability_h(const DrudeParams& p, double zeta)
{
    double eps = drude_epsilon(p, zeta);
    return (eps - 1.0) / (eps + 1.0) / (2.0 * pi * p.rho);
}

AnalyticH drude_h(const DrudeParams& p)
{
    p.validate();
    return [p](Complex K2) {
        Complex zeta = std::sqrt(K2);
        Complex chi = p.omega_p * p.omega_p / (zeta * (zeta + p.nu)); // eps - 1
        return chi / (chi + 2.0) / (2.0 * pi * p.rho);
    };
}

SpectralAmplitude drude_D(const DrudeParams& p)
{
    p.validate();
    return {p.nu / (p.rho * pi * pi * p.omega_p * p.omega_p)};
}

double thermal_H(double omega1, double omega2, double alpha1, double alpha2, double beta)
{
    if (!(omega1 > 0.0) || !(omega2 > 0.0) || !(beta > 0.0)) {
        throw DomainError("thermal_H: frequencies and beta must be positive");
    }
    // 1/(sinh a sinh b) = 4 e^{-a-b} / ((1 - e^{-2a})(1 - e^{-2b})) stays finite at large beta
    double a = 0.5 * beta * omega1;
    double b = 0.5 * beta * omega2;
    double inv = 4.0 * std::exp(-a - b) / (-std::expm1(-2.0 * a) * -std::expm1(-2.0 * b));
    return omega1 * omega2 * alpha1 * alpha2 * inv / 4.0;
}

namespace {

// x^4 e^-x / (1 - e^-x)^2, stable at both ends.
double planck_square_integrand(double x)
{
    if (x == 0.0) return 0.0;
    double em = -std::expm1(-x);
    return x * x * x * x * std::exp(-x) / (em * em);
}

// 1 / sinh^2(x / 2) = 4 e^-x / (1 - e^-x)^2
double inv_sinh2_half(double x)
{
    double em = -std::expm1(-x);
    return 4.0 * std::exp(-x) / (em * em);
}

} // namespace

double universal_I_quadrature()
{
    return numerics::quad_semi_infinite(planck_square_integrand, 0.0, 1e-14, 4.0).value;
}

double universal_I_series()
{
    // 24 sum 1/n^4 with the integral tail bound sum_{n>N} 1/n^4 < 1/(3 N^3).
    auto r = numerics::series_sum([](std::int64_t n) { return 24.0 / std::pow(static_cast<double>(n), 4); },
                                  [](std::int64_t n) {
                                      return n == 0 ? 1e300 : 24.0 / (3.0 * std::pow(static_cast<double>(n), 3));
                                  },
                                  1e-15, 1);
    // The remaining tail is 24 (1/(3N^3) - 1/(2N^4) + ...); add its leading part.
    double N = static_cast<double>(r.terms);
    return r.value + 24.0 * (1.0 / (3.0 * N * N * N) - 1.0 / (2.0 * N * N * N * N) + 1.0 / (3.0 * std::pow(N, 5)));
}

double universal_I()
{
    static const double value = [] {
        const double closed = 4.0 * std::pow(pi, 4) / 15.0;
        double quad = universal_I_quadrature();
        if (std::abs(quad - closed) > 1e-10 * closed) {
            throw NumericError("universal_I: quadrature self-check failed");
        }
        return closed;
    }();
    return value;
}

double smoothed_H0_quadrature(const SpectralDensity& spec1, const SpectralDensity& spec2, double beta)
{
    if (!(beta > 0.0)) throw DomainError("smoothed_H0: beta must be positive");
    double upper = std::min(spec1.support_max(), spec2.support_max());
    auto integrand = [&](double m) {
        if (m == 0.0) return 0.0;
        double v = m * m * spec1.weight(m) * spec2.weight(m) * inv_sinh2_half(beta * m);
        if (!std::isfinite(v)) throw NumericError("smoothed_H0: non-integrable spectrum");
        return v;
    };
    double integral;
    if (std::isfinite(upper)) {
        integral = 0.0;
        const auto* t1 = std::get_if<TabulatedSpectrum>(&spec1.variant());
        const auto* t2 = std::get_if<TabulatedSpectrum>(&spec2.variant());
        std::vector<double> breaks{0.0, upper};
        for (const auto* t : {t1, t2}) {
            if (!t) continue;
            for (double m : t->m) if (m > 0.0 && m < upper) breaks.push_back(m);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        for (std::size_t i = 1; i < breaks.size(); ++i) {
            integral += numerics::quad_finite(integrand, breaks[i - 1], breaks[i], 1e-12, 1e-300).value;
        }
    } else {
        integral = numerics::quad_semi_infinite(integrand, 0.0, 1e-12, 4.0 / beta).value;
    }
    return 0.5 * pi * beta * integral;
}

double smoothed_H0(const SpectralDensity& spec1, const SpectralDensity& spec2, double beta)
{
    if (!(beta > 0.0)) throw DomainError("smoothed_H0: beta must be positive");
    const auto* l1 = std::get_if<LinearSpectrum>(&spec1.variant());
    const auto* l2 = std::get_if<LinearSpectrum>(&spec2.variant());
    if (l1 && l2 && std::isinf(l1->m_max) && std::isinf(l2->m_max)) {
        return 2.0 * pi / std::pow(beta, 4) * l1->D * l2->D * universal_I();
    }
    return smoothed_H0_quadrature(spec1, spec2, beta);
}

} // namespace mdf::materials
