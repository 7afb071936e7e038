#include "mdf/units.hpp"

#include "mdf/errors.hpp"

#include <cmath>

namespace mdf::units {

std::string to_string(Dimension d)
{
    std::string out;
    auto add = [&](const char* symbol, int power) {
        if (power == 0) return;
        if (!out.empty()) out += ' ';
        out += symbol;
        if (power != 1) out += "^" + std::to_string(power);
    };
    add("g", d.mass);
    add("cm", d.length);
    add("s", d.time);
    add("K", d.temperature);
    return out.empty() ? "1" : out;
}

UnitContext UnitContext::identity() { return UnitContext(1.0, 1.0, 1.0, 1.0); }

UnitContext UnitContext::gaussian(double length_scale_cm)
{
    return UnitContext(hbar_cgs, c_cgs, k_B_cgs, length_scale_cm);
}

UnitContext::UnitContext(double hbar, double c, double k_B, double length_scale)
    : UnitContext(hbar, c, k_B, length_scale, c / length_scale)
{
}

UnitContext::UnitContext(double hbar, double c, double k_B, double length_scale, double frequency_scale)
    : hbar_(hbar), c_(c), k_B_(k_B), length_(length_scale)
{
    for (double v : {hbar, c, k_B, length_scale, frequency_scale}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("UnitContext: scales must be positive and finite");
    }
    if (std::abs(frequency_scale - c / length_scale) > 1e-12 * frequency_scale) {
        throw DomainError("UnitContext: frequency_scale must equal c / length_scale when c is the reduced velocity unit");
    }
}

double UnitContext::factor(Dimension d) const
{
    const double mass_unit = hbar_ / (c_ * length_);
    const double time_unit = length_ / c_;
    const double temperature_unit = hbar_ * c_ / (k_B_ * length_);
    return std::pow(mass_unit, d.mass) * std::pow(length_, d.length) * std::pow(time_unit, d.time) *
           std::pow(temperature_unit, d.temperature);
}

double UnitContext::beta_from_kelvin(double kelvin) const
{
    if (!(kelvin > 0.0)) throw DomainError("temperature must be positive");
    return to_reduced(1.0 / (k_B_ * kelvin), dim::inverse_energy);
}

} // namespace mdf::units
