#pragma once

#include "mdf/geometry_coupling.hpp"
#include "mdf/materials_spectral.hpp"
#include "mdf/response_kinetics.hpp"
#include "mdf/units.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>

// Assembled friction forces.  Every function computes in reduced units and
// records each factor of the assembly in `intermediates`, tagged with its
// Gaussian dimension so that to_physical_units can restore CGS values.
//
// Sign convention: negative force along v means braking.

namespace mdf::forces {

using units::Quantity;
using units::UnitContext;

enum class Regime {
    pair_sharp,
    pair_smoothed,
    plane,
    plane_sharp,
    slabs_sharp,
    slabs_finite_T,
    slabs_zero_T,
};

std::string_view regime_name(Regime r); // "pair-sharp", "slabs-finite-T", ...
Regime parse_regime(std::string_view name);

enum class UnitSystem { reduced, gaussian };
std::string_view unit_system_name(UnitSystem u);

struct FrictionReport {
    Regime regime = Regime::pair_smoothed;
    UnitSystem unit_system = UnitSystem::reduced;

    // Delta-valued reports hold the prefactor of delta(w1 - w2) in `force`
    // and the frequency it sits at in `delta_frequency`.
    bool delta_valued = false;
    Quantity delta_frequency;

    // Cartesian components.  Plane and slab regimes move along x.
    std::array<Quantity, 3> force{};
    // Signed projection on v_hat (0 for v = 0).
    Quantity force_along_v;

    std::map<std::string, Quantity> intermediates;
    std::map<std::string, Quantity> inputs;          // always reduced
    std::map<std::string, Quantity> inputs_physical; // filled once a context is known
};

/// Sharp pair: F_l = -G_lq v_q H (pi beta w1^2 / 2) delta(w1 - w2).
/// The delta forces w2 = w1, so both polarizabilities are read there,
/// alpha_i = 1 / (m_i w1^2).
FrictionReport pair_force_sharp(const geometry::PairGeometry& geom, const Vec3& v, const response::OscState& osc1,
                                const response::OscState& osc2, double beta);

/// F_l = -G_lq v_q H0.
FrictionReport pair_force_smoothed(const geometry::PairGeometry& geom, const Vec3& v,
                                   const materials::SpectralDensity& spec1, const materials::SpectralDensity& spec2,
                                   double beta);

/// F = -G_factor v H0 for a scalar geometric factor.  Regime must be
/// pair-smoothed, plane or slabs-finite-T; it fixes the dimensions.
FrictionReport smoothed_forces(double G_factor, double v, double H0, Regime regime);

/// Particle above a half-space, smoothed spectra: F_h = -G_h v H0.
FrictionReport plane_force(const geometry::PlaneGeometry& g, double v, const materials::SpectralDensity& spec1,
                           const materials::SpectralDensity& spec2, double beta);

/// Sharp oscillator above a half-space: -G_h v H (pi beta w1^2 / 2) delta.
FrictionReport plane_force_sharp(const geometry::PlaneGeometry& g, double v, const response::OscState& osc1,
                                 const response::OscState& osc2, double beta);

/// Two half-spaces of sharp oscillators, per unit area.
FrictionReport slabs_force_sharp(const geometry::SlabGeometry& g, double v, const response::OscState& osc1,
                                 const response::OscState& osc2, double beta);

/// Drude-linear half-spaces at finite temperature, per unit area:
///   F = -(2 pi^6 / 15) (d/beta)^2 rho1 rho2 D1 D2 v / (beta^2 d^4).
/// Throws NumericError if it departs from -G v H0 by more than 1e-12.
/// `units` only fills the physical echo of the inputs.
FrictionReport finite_T_slab_force(const geometry::SlabGeometry& g, double v, const materials::SpectralAmplitude& D1,
                                   const materials::SpectralAmplitude& D2, double beta, const UnitContext& units);

/// Zero temperature, per unit area:
///   F_P = -(5 pi^2 / (512 d^6)) v^2 rho1 rho2 D1 D2 v^3,
/// cross-checked against -dE/(2 tau v) with dE = 2 tau H_P v^6 G_P at two tau.
FrictionReport zero_T_slab_force(const geometry::SlabGeometry& g, double v, const materials::SpectralAmplitude& D1,
                                 const materials::SpectralAmplitude& D2, const UnitContext& units);

/// Reduced -> Gaussian.  Throws DomainError if the report is not reduced.
FrictionReport to_physical_units(const FrictionReport& report, const UnitContext& units);
/// Gaussian -> reduced.  Throws DomainError if the report is not Gaussian.
FrictionReport to_reduced_units(const FrictionReport& report, const UnitContext& units);

/// Dimensions used by the assembly.
namespace dims {
inline constexpr units::Dimension G_pair{0, -8, 2, 0};   // G_lq and G_h
inline constexpr units::Dimension G_slab{0, -10, 2, 0};  // G
inline constexpr units::Dimension G_P{0, -14, 2, 0};
inline constexpr units::Dimension H_sharp{2, 10, -4, 0};
inline constexpr units::Dimension H0{1, 8, -3, 0};
inline constexpr units::Dimension H_P{1, 8, 1, 0};
inline constexpr units::Dimension energy_per_area_per_time{1, 0, -3, 0};
} // namespace dims

} // namespace mdf::forces
