#pragma once

#include <array>
#include <utility>
#include <vector>

// Coupled electric (x) / magnetic (y) oscillator pair with the gyroscopic
// coupling L_int = alpha (x y_dot - x_dot y).  Reduced units, hbar = 1.

namespace mdf::oscillator {

struct OscPairConfig {
    double alpha = 0.0;
    double omega_x = 1.0;
    double omega_y = 1.0;
    double mass_x = 1.0;
    double mass_y = 1.0;

    void validate() const;
    bool is_unit() const { return omega_x == 1.0 && omega_y == 1.0 && mass_x == 1.0 && mass_y == 1.0; }
};

struct PhaseState {
    double x = 0.0;
    double y = 0.0;
    double p_x = 0.0;
    double p_y = 0.0;
};

// (x, y, x_dot, y_dot)
using VelocityState = std::array<double, 4>;

/// p_x = m_x x_dot - alpha y,  p_y = m_y y_dot + alpha x.
std::pair<double, double> generalized_momenta(const OscPairConfig& cfg, double x_dot, double y_dot, double x,
                                              double y);

/// H = (p_x + alpha y)^2 / 2m_x + (p_y - alpha x)^2 / 2m_y + potential.
double hamiltonian(const OscPairConfig& cfg, const PhaseState& s);

/// Kinetic plus potential energy written in velocities; the gyroscopic
/// coupling does no work, so this equals the Hamiltonian.
double energy_from_velocities(const OscPairConfig& cfg, const VelocityState& s);

PhaseState to_phase_state(const OscPairConfig& cfg, const VelocityState& s);

/// Time derivative of (x, y, x_dot, y_dot):
///   m_x x_ddot = -m_x w_x^2 x + 2 alpha y_dot,  m_y y_ddot = -m_y w_y^2 y - 2 alpha x_dot.
VelocityState eom_rhs(const OscPairConfig& cfg, const VelocityState& s);

struct Eigenfrequencies {
    double omega_plus = 1.0;
    double omega_minus = 1.0;
};

/// Closed form for unit masses and frequencies: w_pm = +-alpha + sqrt(1 + alpha^2).
Eigenfrequencies eigenfrequencies(double alpha);

/// Ground-state energy (w_+ + w_-)/2 = sqrt(1 + alpha^2), in units of hbar w_0.
double ground_state_energy(double alpha);

struct Trajectory {
    double dt = 0.0;  // spacing of the stored samples
    std::vector<double> t;
    std::vector<VelocityState> states;
    double max_relative_energy_drift = 0.0;
};

/// Fourth-order Gauss-Legendre (implicit, symplectic) integration.  For this
/// linear system the step is the (2,2) Pade propagator of the generator,
/// which preserves every quadratic invariant, the energy included.  Every
/// `stride`-th state is stored.  Throws NumericError when the relative
/// energy drift exceeds `drift_tolerance`.
Trajectory integrate_eom(const OscPairConfig& cfg, const VelocityState& init, double t_end, double dt,
                         int stride = 1, double drift_tolerance = 1e-8);

} // namespace mdf::oscillator
