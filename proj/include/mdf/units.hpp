#pragma once

#include <string>

// Conversion between the reduced units used internally (hbar = c = k_B = 1,
// lengths in units of `length_scale`) and Gaussian CGS units.
//
// Every reduced quantity carries its CGS dimension as exponents of
// (mass, length, time, temperature).  The reduced base units are
//   length      L
//   time        L / c
//   mass        hbar / (c L)
//   temperature hbar c / (k_B L)
// so a quantity converts with a single multiplicative factor.

namespace mdf::units {

struct Dimension {
    int mass = 0;
    int length = 0;
    int time = 0;
    int temperature = 0;

    friend constexpr Dimension operator*(Dimension a, Dimension b)
    {
        return {a.mass + b.mass, a.length + b.length, a.time + b.time, a.temperature + b.temperature};
    }
    friend constexpr Dimension operator/(Dimension a, Dimension b)
    {
        return {a.mass - b.mass, a.length - b.length, a.time - b.time, a.temperature - b.temperature};
    }
    constexpr Dimension pow(int n) const { return {mass * n, length * n, time * n, temperature * n}; }
    friend constexpr bool operator==(Dimension, Dimension) = default;
};

std::string to_string(Dimension d); // e.g. "g cm^-1 s^-2"

namespace dim {
inline constexpr Dimension none{};
inline constexpr Dimension length{0, 1, 0, 0};
inline constexpr Dimension time{0, 0, 1, 0};
inline constexpr Dimension mass{1, 0, 0, 0};
inline constexpr Dimension temperature{0, 0, 0, 1};
inline constexpr Dimension frequency{0, 0, -1, 0};
inline constexpr Dimension velocity{0, 1, -1, 0};
inline constexpr Dimension energy{1, 2, -2, 0};
inline constexpr Dimension inverse_energy{-1, -2, 2, 0};
inline constexpr Dimension action{1, 2, -1, 0};
inline constexpr Dimension force{1, 1, -2, 0};
inline constexpr Dimension force_per_area{1, -1, -2, 0};
inline constexpr Dimension number_density{0, -3, 0, 0};
inline constexpr Dimension polarizability{0, 3, 0, 0};          // volume, Gaussian
inline constexpr Dimension spectral_slope{-1, 1, 2, 0};         // D: volume / energy
inline constexpr Dimension oscillator_mass{0, -3, 2, 0};        // 1 / (omega^2 alpha)
} // namespace dim

struct Quantity {
    double value = 0.0;
    Dimension dim;
};

class UnitContext {
public:
    // CODATA 2018, CGS.
    static constexpr double hbar_cgs = 1.054571817e-27; // erg s
    static constexpr double c_cgs = 2.99792458e10;      // cm / s
    static constexpr double k_B_cgs = 1.380649e-16;     // erg / K

    /// All scales 1: conversion is the identity.
    static UnitContext identity();
    /// Gaussian units with the reduced unit of length set to `length_scale_cm`.
    static UnitContext gaussian(double length_scale_cm);

    /// Throws DomainError unless every scale is positive and finite and
    /// frequency_scale == c / length_scale (relative 1e-12).
    UnitContext(double hbar, double c, double k_B, double length_scale, double frequency_scale);
    UnitContext(double hbar, double c, double k_B, double length_scale);

    double hbar() const { return hbar_; }
    double c() const { return c_; }
    double k_B() const { return k_B_; }
    double length_scale() const { return length_; }
    double frequency_scale() const { return c_ / length_; }

    /// physical = reduced * factor(d)
    double factor(Dimension d) const;
    double to_physical(double reduced, Dimension d) const { return reduced * factor(d); }
    double to_reduced(double physical, Dimension d) const { return physical / factor(d); }
    Quantity to_physical(const Quantity& q) const { return {to_physical(q.value, q.dim), q.dim}; }
    Quantity to_reduced(const Quantity& q) const { return {to_reduced(q.value, q.dim), q.dim}; }

    /// Reduced inverse temperature for a temperature in kelvin.
    double beta_from_kelvin(double kelvin) const;

private:
    double hbar_, c_, k_B_, length_;
};

} // namespace mdf::units
