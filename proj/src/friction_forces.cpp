#include "mdf/friction_forces.hpp"

#include "mdf/errors.hpp"

#include <cmath>
#include <numbers>

namespace mdf::forces {

using std::numbers::pi;
using units::Dimension;
namespace dim = units::dim;

namespace {

constexpr const char* axis_names[3] = {"x", "y", "z"};

constexpr Dimension force_dim{1, 1, -2, 0};
constexpr Dimension force_area_dim{1, -1, -2, 0};
constexpr Dimension sharp_prefactor_dim{-1, -2, 0, 0}; // beta w^2
constexpr Dimension per_frequency{0, 0, 1, 0};          // delta(w1 - w2) carries time

bool close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

void require_beta(double beta, const char* op)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError(std::string(op) + ": beta must be positive");
}

void require_finite(double v, const char* op)
{
    if (!std::isfinite(v)) throw DomainError(std::string(op) + ": velocity must be finite");
}

void require_osc(const response::OscState& o, const char* op)
{
    if (!(o.omega > 0.0) || !(o.mass > 0.0)) {
        throw DomainError(std::string(op) + ": oscillator frequency and mass must be positive");
    }
}

// Scalar force along x.
void set_scalar_force(FrictionReport& r, double f, double v, Dimension d)
{
    r.force = {Quantity{f, d}, Quantity{0.0, d}, Quantity{0.0, d}};
    r.force_along_v = {v == 0.0 ? 0.0 : std::copysign(1.0, v) * f, d};
}

void set_vector_force(FrictionReport& r, const Vec3& f, const Vec3& v, Dimension d)
{
    r.force = {Quantity{f.x, d}, Quantity{f.y, d}, Quantity{f.z, d}};
    double speed = norm(v);
    r.force_along_v = {speed == 0.0 ? 0.0 : dot(f, v) / speed, d};
}

void echo_osc(FrictionReport& r, const response::OscState& o, const std::string& suffix)
{
    r.inputs["omega" + suffix] = {o.omega, dim::frequency};
    r.inputs["m" + suffix] = {o.mass, dim::oscillator_mass};
}

void echo_physical(FrictionReport& r, const UnitContext& units)
{
    r.inputs_physical.clear();
    for (const auto& [name, q] : r.inputs) r.inputs_physical[name] = units.to_physical(q);
}

// H and pi beta w1^2 / 2 on the delta support w2 = w1.
struct SharpFactors {
    double H;
    double prefactor;
    double alpha1;
    double alpha2;
};

SharpFactors sharp_factors(const response::OscState& osc1, const response::OscState& osc2, double beta)
{
    const double w = osc1.omega;
    SharpFactors s{};
    s.alpha1 = 1.0 / (osc1.mass * w * w);
    s.alpha2 = 1.0 / (osc2.mass * w * w);
    s.H = materials::thermal_H(w, w, s.alpha1, s.alpha2, beta);
    s.prefactor = 0.5 * pi * beta * w * w;
    return s;
}

void record_sharp(FrictionReport& r, const SharpFactors& s, const response::OscState& osc1)
{
    r.delta_valued = true;
    r.delta_frequency = {osc1.omega, dim::frequency};
    r.intermediates["H"] = {s.H, dims::H_sharp};
    r.intermediates["alpha1"] = {s.alpha1, dim::polarizability};
    r.intermediates["alpha2"] = {s.alpha2, dim::polarizability};
    r.intermediates["sharp_prefactor"] = {s.prefactor, sharp_prefactor_dim};
}

FrictionReport convert(const FrictionReport& in, const UnitContext& u, bool to_physical)
{
    FrictionReport out = in;
    auto conv = [&](Quantity& q) { q = to_physical ? u.to_physical(q) : u.to_reduced(q); };
    conv(out.delta_frequency);
    for (auto& q : out.force) conv(q);
    conv(out.force_along_v);
    for (auto& [name, q] : out.intermediates) conv(q);
    echo_physical(out, u);
    out.unit_system = to_physical ? UnitSystem::gaussian : UnitSystem::reduced;
    return out;
}

} // namespace

std::string_view regime_name(Regime r)
{
    switch (r) {
    case Regime::pair_sharp: return "pair-sharp";
    case Regime::pair_smoothed: return "pair-smoothed";
    case Regime::plane: return "plane";
    case Regime::plane_sharp: return "plane-sharp";
    case Regime::slabs_sharp: return "slabs-sharp";
    case Regime::slabs_finite_T: return "slabs-finite-T";
    case Regime::slabs_zero_T: return "slabs-zero-T";
    }
    return "unknown";
}

Regime parse_regime(std::string_view name)
{
    for (Regime r : {Regime::pair_sharp, Regime::pair_smoothed, Regime::plane, Regime::plane_sharp,
                     Regime::slabs_sharp, Regime::slabs_finite_T, Regime::slabs_zero_T}) {
        if (regime_name(r) == name) return r;
    }
    throw ConfigError("unknown regime '" + std::string(name) + "'");
}

std::string_view unit_system_name(UnitSystem u) { return u == UnitSystem::reduced ? "reduced" : "gaussian"; }

FrictionReport pair_force_sharp(const geometry::PairGeometry& geom, const Vec3& v, const response::OscState& osc1,
                                const response::OscState& osc2, double beta)
{
    geom.validate();
    require_beta(beta, "pair_force_sharp");
    require_osc(osc1, "pair_force_sharp");
    require_osc(osc2, "pair_force_sharp");
    if (!is_finite(v)) throw DomainError("pair_force_sharp: velocity must be finite");

    FrictionReport r;
    r.regime = Regime::pair_sharp;
    const Tensor2 G = geometry::G_tensor(geom.r);
    const SharpFactors s = sharp_factors(osc1, osc2, beta);

    Vec3 f{};
    for (int l = 0; l < 3; ++l) {
        double gv = 0.0;
        for (int q = 0; q < 3; ++q) gv += G[l][q] * v[q];
        f[l] = -gv * s.H * s.prefactor;
    }
    const Dimension amp_dim = force_dim / per_frequency;
    set_vector_force(r, f, v, amp_dim);
    record_sharp(r, s, osc1);
    for (int l = 0; l < 3; ++l)
        for (int q = 0; q < 3; ++q)
            r.intermediates[std::string("G_") + axis_names[l] + axis_names[q]] = {G[l][q], dims::G_pair};

    for (int i = 0; i < 3; ++i) {
        r.inputs[std::string("r_") + axis_names[i]] = {geom.r[i], dim::length};
        r.inputs[std::string("v_") + axis_names[i]] = {v[i], dim::velocity};
    }
    echo_osc(r, osc1, "1");
    echo_osc(r, osc2, "2");
    r.inputs["beta"] = {beta, dim::inverse_energy};
    return r;
}

FrictionReport pair_force_smoothed(const geometry::PairGeometry& geom, const Vec3& v,
                                   const materials::SpectralDensity& spec1, const materials::SpectralDensity& spec2,
                                   double beta)
{
    geom.validate();
    require_beta(beta, "pair_force_smoothed");
    if (!is_finite(v)) throw DomainError("pair_force_smoothed: velocity must be finite");

    FrictionReport r;
    r.regime = Regime::pair_smoothed;
    const Tensor2 G = geometry::G_tensor(geom.r);
    const double H0 = materials::smoothed_H0(spec1, spec2, beta);

    Vec3 f{};
    for (int l = 0; l < 3; ++l) {
        double gv = 0.0;
        for (int q = 0; q < 3; ++q) gv += G[l][q] * v[q];
        f[l] = -gv * H0;
    }
    set_vector_force(r, f, v, force_dim);
    r.intermediates["H0"] = {H0, dims::H0};
    for (int l = 0; l < 3; ++l)
        for (int q = 0; q < 3; ++q)
            r.intermediates[std::string("G_") + axis_names[l] + axis_names[q]] = {G[l][q], dims::G_pair};
    for (int i = 0; i < 3; ++i) {
        r.inputs[std::string("r_") + axis_names[i]] = {geom.r[i], dim::length};
        r.inputs[std::string("v_") + axis_names[i]] = {v[i], dim::velocity};
    }
    r.inputs["beta"] = {beta, dim::inverse_energy};
    return r;
}

FrictionReport smoothed_forces(double G_factor, double v, double H0, Regime regime)
{
    require_finite(v, "smoothed_forces");
    if (!(G_factor >= 0.0) || !(H0 >= 0.0)) throw DomainError("smoothed_forces: G and H0 must be non-negative");

    Dimension g_dim, f_dim;
    switch (regime) {
    case Regime::pair_smoothed:
    case Regime::plane:
        g_dim = dims::G_pair;
        f_dim = force_dim;
        break;
    case Regime::slabs_finite_T:
        g_dim = dims::G_slab;
        f_dim = force_area_dim;
        break;
    default:
        throw DomainError("smoothed_forces: regime " + std::string(regime_name(regime)) + " is not a smoothed form");
    }
    FrictionReport r;
    r.regime = regime;
    set_scalar_force(r, -G_factor * v * H0, v, f_dim);
    r.intermediates[regime == Regime::slabs_finite_T ? "G" : (regime == Regime::plane ? "G_h" : "G_vv")] = {G_factor,
                                                                                                         g_dim};
    r.intermediates["H0"] = {H0, dims::H0};
    r.inputs["v"] = {v, dim::velocity};
    return r;
}

FrictionReport plane_force(const geometry::PlaneGeometry& g, double v, const materials::SpectralDensity& spec1,
                           const materials::SpectralDensity& spec2, double beta)
{
    require_beta(beta, "plane_force");
    const double Gh = geometry::G_halfspace(g);
    const double H0 = materials::smoothed_H0(spec1, spec2, beta);
    FrictionReport r = smoothed_forces(Gh, v, H0, Regime::plane);
    r.inputs["z0"] = {g.z0, dim::length};
    r.inputs["rho"] = {g.rho, dim::number_density};
    r.inputs["beta"] = {beta, dim::inverse_energy};
    return r;
}

FrictionReport plane_force_sharp(const geometry::PlaneGeometry& g, double v, const response::OscState& osc1,
                                 const response::OscState& osc2, double beta)
{
    require_beta(beta, "plane_force_sharp");
    require_finite(v, "plane_force_sharp");
    require_osc(osc1, "plane_force_sharp");
    require_osc(osc2, "plane_force_sharp");
    const double Gh = geometry::G_halfspace(g);
    const SharpFactors s = sharp_factors(osc1, osc2, beta);

    FrictionReport r;
    r.regime = Regime::plane_sharp;
    set_scalar_force(r, -Gh * v * s.H * s.prefactor, v, force_dim / per_frequency);
    record_sharp(r, s, osc1);
    r.intermediates["G_h"] = {Gh, dims::G_pair};
    r.inputs["z0"] = {g.z0, dim::length};
    r.inputs["rho"] = {g.rho, dim::number_density};
    r.inputs["v"] = {v, dim::velocity};
    echo_osc(r, osc1, "1");
    echo_osc(r, osc2, "2");
    r.inputs["beta"] = {beta, dim::inverse_energy};
    return r;
}

FrictionReport slabs_force_sharp(const geometry::SlabGeometry& g, double v, const response::OscState& osc1,
                                 const response::OscState& osc2, double beta)
{
    require_beta(beta, "slabs_force_sharp");
    require_finite(v, "slabs_force_sharp");
    require_osc(osc1, "slabs_force_sharp");
    require_osc(osc2, "slabs_force_sharp");
    const double G = geometry::G_slabs_realspace(g);
    const SharpFactors s = sharp_factors(osc1, osc2, beta);

    FrictionReport r;
    r.regime = Regime::slabs_sharp;
    set_scalar_force(r, -G * v * s.H * s.prefactor, v, force_area_dim / per_frequency);
    record_sharp(r, s, osc1);
    r.intermediates["G"] = {G, dims::G_slab};
    r.inputs["d"] = {g.d, dim::length};
    r.inputs["rho1"] = {g.rho1, dim::number_density};
    r.inputs["rho2"] = {g.rho2, dim::number_density};
    r.inputs["v"] = {v, dim::velocity};
    echo_osc(r, osc1, "1");
    echo_osc(r, osc2, "2");
    r.inputs["beta"] = {beta, dim::inverse_energy};
    return r;
}

FrictionReport finite_T_slab_force(const geometry::SlabGeometry& g, double v, const materials::SpectralAmplitude& D1,
                                   const materials::SpectralAmplitude& D2, double beta, const UnitContext& units)
{
    g.validate();
    require_beta(beta, "finite_T_slab_force");
    require_finite(v, "finite_T_slab_force");
    if (!(D1.D >= 0.0) || !(D2.D >= 0.0)) throw DomainError("finite_T_slab_force: D1 and D2 must be non-negative");

    const double G = geometry::G_slabs_realspace(g);
    const double I = materials::universal_I();
    const double H0 = 2.0 * pi / std::pow(beta, 4) * D1.D * D2.D * I;
    const double assembled = -G * v * H0;

    const double prefactor = 2.0 * std::pow(pi, 6) / 15.0;
    const double suppression = (g.d / beta) * (g.d / beta);
    const double d4 = std::pow(g.d, 4);
    const double dielectric = -prefactor * g.rho1 * g.rho2 * D1.D * D2.D * v / (beta * beta * d4);
    const double force = -prefactor * suppression * g.rho1 * g.rho2 * D1.D * D2.D * v / (beta * beta * d4);

    if (!close(force, assembled, 1e-12)) {
        throw NumericError("finite_T_slab_force: closed form and -G v H0 disagree");
    }

    FrictionReport r;
    r.regime = Regime::slabs_finite_T;
    set_scalar_force(r, force, v, force_area_dim);
    r.intermediates["G"] = {G, dims::G_slab};
    r.intermediates["H0"] = {H0, dims::H0};
    r.intermediates["I"] = {I, dim::none};
    r.intermediates["prefactor"] = {prefactor, dim::none};
    r.intermediates["suppression_d_over_beta_sq"] = {suppression, dim::none};
    r.intermediates["dielectric_form_force"] = {dielectric, force_area_dim};
    r.intermediates["assembled_force"] = {assembled, force_area_dim};
    r.inputs["d"] = {g.d, dim::length};
    r.inputs["rho1"] = {g.rho1, dim::number_density};
    r.inputs["rho2"] = {g.rho2, dim::number_density};
    r.inputs["D1"] = {D1.D, dim::spectral_slope};
    r.inputs["D2"] = {D2.D, dim::spectral_slope};
    r.inputs["beta"] = {beta, dim::inverse_energy};
    r.inputs["v"] = {v, dim::velocity};
    echo_physical(r, units);
    return r;
}

FrictionReport zero_T_slab_force(const geometry::SlabGeometry& g, double v, const materials::SpectralAmplitude& D1,
                                 const materials::SpectralAmplitude& D2, const UnitContext& units)
{
    g.validate();
    require_finite(v, "zero_T_slab_force");
    if (!(D1.D >= 0.0) || !(D2.D >= 0.0)) throw DomainError("zero_T_slab_force: D1 and D2 must be non-negative");

    const double H_P = response::dissipation_H_P(D1, D2);
    const double G_P = geometry::G_P_slabs(g);
    const double v6 = std::pow(v, 6);
    const double dE_over_tau = 2.0 * H_P * v6 * G_P;

    // F = -dE / (2 tau v); the tau dependence has to cancel.
    auto via_tau = [&](double tau) { return v == 0.0 ? 0.0 : -(dE_over_tau * tau) / (2.0 * tau * v); };
    const double f_tau1 = via_tau(1.0);
    const double f_tau2 = via_tau(1.0e3);
    if (!close(f_tau1, f_tau2, 1e-13)) throw NumericError("zero_T_slab_force: result depends on tau");

    const double prefactor = 5.0 * pi * pi / 512.0;
    const double d6 = std::pow(g.d, 6);
    const double v_sq = v * v;
    const double dielectric = -prefactor / d6 * g.rho1 * g.rho2 * D1.D * D2.D * v * v * v;
    const double force = -prefactor / d6 * v_sq * g.rho1 * g.rho2 * D1.D * D2.D * v * v * v;
    const double assembled = -H_P * std::pow(v, 5) * G_P;

    if (!close(force, assembled, 1e-12) || !close(force, f_tau1, 1e-12)) {
        throw NumericError("zero_T_slab_force: closed form and -H_P v^5 G_P disagree");
    }

    FrictionReport r;
    r.regime = Regime::slabs_zero_T;
    set_scalar_force(r, force, v, force_area_dim);
    r.intermediates["H_P"] = {H_P, dims::H_P};
    r.intermediates["G_P"] = {G_P, dims::G_P};
    r.intermediates["delta_E_over_tau"] = {dE_over_tau, dims::energy_per_area_per_time};
    r.intermediates["prefactor"] = {prefactor, dim::none};
    r.intermediates["suppression_v_over_c_sq"] = {v_sq, dim::none};
    r.intermediates["dielectric_form_force"] = {dielectric, force_area_dim};
    r.intermediates["assembled_force"] = {assembled, force_area_dim};
    r.inputs["d"] = {g.d, dim::length};
    r.inputs["rho1"] = {g.rho1, dim::number_density};
    r.inputs["rho2"] = {g.rho2, dim::number_density};
    r.inputs["D1"] = {D1.D, dim::spectral_slope};
    r.inputs["D2"] = {D2.D, dim::spectral_slope};
    r.inputs["v"] = {v, dim::velocity};
    echo_physical(r, units);
    return r;
}

FrictionReport to_physical_units(const FrictionReport& report, const UnitContext& units)
{
    if (report.unit_system != UnitSystem::reduced) throw DomainError("to_physical_units: report is not in reduced units");
    return convert(report, units, true);
}

FrictionReport to_reduced_units(const FrictionReport& report, const UnitContext& units)
{
    if (report.unit_system != UnitSystem::gaussian) throw DomainError("to_reduced_units: report is not in Gaussian units");
    return convert(report, units, false);
}

} // namespace mdf::forces
