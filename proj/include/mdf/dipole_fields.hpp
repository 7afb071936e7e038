#pragma once

#include "mdf/vec3.hpp"

// Quasistatic fields of oscillating electric and magnetic dipoles and their
// mutual interaction energies.  Reduced units, c = 1.  The separation `r`
// points from the electric (source) dipole toward the observation point /
// magnetic dipole.

namespace mdf::fields {

enum class DipoleKind { electric, magnetic };

struct DipoleSource {
    DipoleKind kind = DipoleKind::electric;
    Vec3 moment;
    Vec3 moment_rate;
    Vec3 position;
};

/// Retarded magnetic field of an electric dipole with Fourier amplitude P at
/// complex wavenumber zeta = i omega / c:
///   H = -zeta (1 + zeta r) exp(-zeta r) (r_hat x P) / r^2.
ComplexVec3 magnetic_field_full(const Vec3& P, Complex zeta, const Vec3& r);

/// Biot-Savart limit of the above in the time domain: H = (P_dot x r_hat) / r^2.
Vec3 magnetic_field_quasistatic(const Vec3& P_dot, const Vec3& r);

/// Induction field of a magnetic dipole: E = (M_dot x r_hat) / r^2.
Vec3 electric_field_quasistatic(const Vec3& M_dot, const Vec3& r);

/// Field of a source evaluated at `observer`; dispatches on the source kind.
Vec3 quasistatic_field(const DipoleSource& source, const Vec3& observer);

struct InteractionEnergies {
    double from_magnetic_field = 0.0; // -Delta L_H = -H . M
    double from_electric_field = 0.0; // -Delta L_E = -E . P
};

/// Both forms of the dipole-dipole interaction energy, with coupling
/// alpha = 1/(2 r^2).  They differ by 2 alpha d(P.M-projection)/dt and so
/// generate the same dynamics.
InteractionEnergies interaction_energies(const Vec3& P, const Vec3& P_dot, const Vec3& M, const Vec3& M_dot,
                                         const Vec3& r);

/// alpha = 1/(2 r^2), the coupling strength at separation |r|.
double coupling_alpha(double separation);

} // namespace mdf::fields
