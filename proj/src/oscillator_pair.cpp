#include "mdf/oscillator_pair.hpp"

#include "mdf/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace mdf::oscillator {

void OscPairConfig::validate() const
{
    if (!std::isfinite(alpha)) throw DomainError("OscPairConfig: alpha must be finite");
    if (alpha < 0.0) throw DomainError("OscPairConfig: alpha must be >= 0");
    if (!(omega_x > 0.0) || !(omega_y > 0.0)) throw DomainError("OscPairConfig: frequencies must be positive");
    if (!(mass_x > 0.0) || !(mass_y > 0.0)) throw DomainError("OscPairConfig: masses must be positive");
}

std::pair<double, double> generalized_momenta(const OscPairConfig& cfg, double x_dot, double y_dot, double x,
                                              double y)
{
    cfg.validate();
    return {cfg.mass_x * x_dot - cfg.alpha * y, cfg.mass_y * y_dot + cfg.alpha * x};
}

double hamiltonian(const OscPairConfig& cfg, const PhaseState& s)
{
    cfg.validate();
    double kx = s.p_x + cfg.alpha * s.y;
    double ky = s.p_y - cfg.alpha * s.x;
    return 0.5 * (kx * kx / cfg.mass_x + ky * ky / cfg.mass_y + cfg.mass_x * cfg.omega_x * cfg.omega_x * s.x * s.x +
                  cfg.mass_y * cfg.omega_y * cfg.omega_y * s.y * s.y);
}

double energy_from_velocities(const OscPairConfig& cfg, const VelocityState& s)
{
    auto [x, y, vx, vy] = s;
    return 0.5 * (cfg.mass_x * (vx * vx + cfg.omega_x * cfg.omega_x * x * x) +
                  cfg.mass_y * (vy * vy + cfg.omega_y * cfg.omega_y * y * y));
}

PhaseState to_phase_state(const OscPairConfig& cfg, const VelocityState& s)
{
    auto [px, py] = generalized_momenta(cfg, s[2], s[3], s[0], s[1]);
    return {s[0], s[1], px, py};
}

VelocityState eom_rhs(const OscPairConfig& cfg, const VelocityState& s)
{
    auto [x, y, vx, vy] = s;
    return {vx, vy, -cfg.omega_x * cfg.omega_x * x + 2.0 * cfg.alpha * vy / cfg.mass_x,
            -cfg.omega_y * cfg.omega_y * y - 2.0 * cfg.alpha * vx / cfg.mass_y};
}

Eigenfrequencies eigenfrequencies(double alpha)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("eigenfrequencies: alpha must be >= 0");
    double root = std::hypot(1.0, alpha);
    // w_- = 1/w_+ avoids cancellation in root - alpha at large alpha.
    double plus = alpha + root;
    return {plus, 1.0 / plus};
}

double ground_state_energy(double alpha)
{
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("ground_state_energy: alpha must be >= 0");
    return std::hypot(1.0, alpha);
}

Trajectory integrate_eom(const OscPairConfig& cfg, const VelocityState& init, double t_end, double dt, int stride,
                         double drift_tolerance)
{
    cfg.validate();
    if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("integrate_eom: dt and t_end must be positive");
    if (stride < 1) throw DomainError("integrate_eom: stride must be >= 1");

    Eigen::Matrix4d gen;
    gen << 0, 0, 1, 0,
           0, 0, 0, 1,
           -cfg.omega_x * cfg.omega_x, 0, 0, 2.0 * cfg.alpha / cfg.mass_x,
           0, -cfg.omega_y * cfg.omega_y, -2.0 * cfg.alpha / cfg.mass_y, 0;
    const Eigen::Matrix4d hg = dt * gen;
    const Eigen::Matrix4d hg2 = hg * hg / 12.0;
    const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d propagator = (id - 0.5 * hg + hg2).partialPivLu().solve(id + 0.5 * hg + hg2);

    const auto steps = static_cast<long long>(std::llround(t_end / dt));
    Trajectory traj;
    traj.dt = dt * stride;
    traj.t.reserve(static_cast<std::size_t>(steps / stride + 1));
    traj.states.reserve(static_cast<std::size_t>(steps / stride + 1));

    Eigen::Vector4d z(init[0], init[1], init[2], init[3]);
    const double e0 = energy_from_velocities(cfg, init);
    double max_drift = 0.0;
    traj.t.push_back(0.0);
    traj.states.push_back(init);
    for (long long n = 1; n <= steps; ++n) {
        z = propagator * z;
        if (n % stride == 0) {
            VelocityState s{z(0), z(1), z(2), z(3)};
            traj.t.push_back(static_cast<double>(n) * dt);
            traj.states.push_back(s);
            double e = energy_from_velocities(cfg, s);
            double drift = e0 != 0.0 ? std::abs(e - e0) / std::abs(e0) : std::abs(e);
            max_drift = std::max(max_drift, drift);
        }
    }
    traj.max_relative_energy_drift = max_drift;
    if (max_drift > drift_tolerance) {
        throw NumericError("integrate_eom: energy drift " + std::to_string(max_drift) + " exceeds tolerance; reduce dt");
    }
    return traj;
}

} // namespace mdf::oscillator
