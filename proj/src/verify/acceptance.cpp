#include "verify/acceptance.hpp"

#include "mdf/friction_forces.hpp"
#include "mdf/geometry_coupling.hpp"
#include "mdf/materials_spectral.hpp"
#include "mdf/matsubara.hpp"
#include "mdf/numerics.hpp"
#include "mdf/oscillator_pair.hpp"
#include "mdf/response_kinetics.hpp"
#include "verify/oracles.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace mdf::verify {

namespace {

using std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool passed = false;
    std::string detail;
};

CheckResult timed(std::string name, double limit_seconds, const std::function<Verdict()>& body)
{
    CheckResult r;
    r.name = std::move(name);
    auto start = Clock::now();
    try {
        Verdict v = body();
        r.passed = v.passed;
        r.detail = std::move(v.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_seconds > 0.0 && r.seconds >= limit_seconds) {
        r.passed = false;
        r.detail += fmt::format(" [runtime {:.2f} s over the {:.0f} s limit]", r.seconds, limit_seconds);
    }
    return r;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Single-mode trajectory of the unit pair; returns the fitted frequency.
double fitted_mode_frequency(double alpha, bool plus_mode)
{
    auto w = oscillator::eigenfrequencies(alpha);
    double omega = plus_mode ? w.omega_plus : w.omega_minus;
    // x = cos(wt), y = -+sin(wt) is an exact normal mode
    oscillator::VelocityState init{1.0, 0.0, 0.0, plus_mode ? -omega : omega};
    const int per_period = 16, stride = 8, periods = 40;
    double period = 2.0 * pi / omega;
    double dt = period / (per_period * stride);
    auto tr = oscillator::integrate_eom({alpha}, init, periods * period, dt, stride);
    std::vector<double> x;
    x.reserve(tr.states.size());
    for (const auto& s : tr.states) x.push_back(s[0]);
    return numerics::sinusoid_fit(tr.t, x, 1).components.at(0).frequency;
}

Verdict criterion_eigen_product(std::mt19937_64& eng)
{
    std::uniform_real_distribution<double> dist(0.0, 5.0);
    double worst_closed = 0.0, worst_fit = 0.0;
    for (int i = 0; i < 50; ++i) {
        double alpha = dist(eng);
        auto w = oscillator::eigenfrequencies(alpha);
        worst_closed = std::max(worst_closed, std::abs(w.omega_plus * w.omega_minus - 1.0));
        double prod = fitted_mode_frequency(alpha, true) * fitted_mode_frequency(alpha, false);
        worst_fit = std::max(worst_fit, std::abs(prod - 1.0));
    }
    return {worst_closed <= 1e-14 && worst_fit <= 1e-6,
            fmt::format("closed form max |w+w- - 1| = {:.1e}; trajectory fits max = {:.2e} (tol 1e-6)", worst_closed,
                        worst_fit)};
}

Verdict criterion_matsubara()
{
    const double alpha = 0.1;
    double cold = matsubara::induced_free_energy(alpha, matsubara::MatsubaraGrid::automatic(1e3)).value;
    double hot = matsubara::induced_free_energy(alpha, matsubara::MatsubaraGrid::automatic(1e-6)).value;
    double e = rel(cold, 0.005);
    bool ok = e <= 1e-4 && std::abs(hot) <= 1e-6 * alpha * alpha;
    return {ok, fmt::format("F(beta=1e3) = {:.10f} (rel err {:.1e}); |F(beta=1e-6)| = {:.2e} <= {:.0e}", cold, e,
                            std::abs(hot), 1e-6 * alpha * alpha)};
}

Verdict criterion_universal_integral()
{
    const double exact = 4.0 * std::pow(pi, 4) / 15.0;
    double q = materials::universal_I_quadrature();
    double s = materials::universal_I_series();
    // x^4 e^-x / (1 - e^-x)^2 = sum_n n x^4 e^{-n x}; integrate on a finite
    // window plus the exp-sinh tail as a third, separately coded route.
    auto f = [](double x) {
        if (x == 0.0) return 0.0;
        double em = -std::expm1(-x);
        return std::pow(x, 4) * std::exp(-x) / (em * em);
    };
    double split = numerics::quad_finite(f, 0.0, 40.0, 1e-13, 1e-14).value +
                   numerics::quad_semi_infinite(f, 40.0, 1e-13, 10.0).value;
    double worst = std::max({std::abs(q - exact), std::abs(s - exact), std::abs(split - exact)});
    return {worst <= 1e-10, fmt::format("exp-sinh {:.14f}, zeta series {:.14f}, split GK+tail {:.14f}; max err {:.1e}",
                                        q, s, split, worst)};
}

Verdict criterion_geometry(std::uint64_t seed)
{
    geometry::PlaneGeometry pg{1.0, 1.0};
    auto mc = geometry::G_halfspace_mc(pg, 10'000'000, seed);
    double gh = pi / 2.0;
    double dev = std::abs(mc.value - gh);
    bool mc_ok = dev <= 0.01 * gh && dev <= 3.0 * mc.std_error;

    geometry::SlabGeometry sg{1.3, 0.8, 1.7};
    double G = geometry::G_slabs_realspace_quadrature(sg);
    double G_exact = pi * sg.rho1 * sg.rho2 / (4.0 * sg.d * sg.d);
    double GP = geometry::G_P_slabs_quadrature(sg);
    double GP_exact = 75.0 * pi * sg.rho1 * sg.rho2 / (64.0 * std::pow(sg.d, 6));
    double eG = rel(G, G_exact), eP = rel(GP, GP_exact);
    return {mc_ok && eG <= 1e-9 && eP <= 1e-9,
            fmt::format("MC G_h = {:.6f} +- {:.1e} vs {:.6f} (dev {:.1e}); G rel err {:.1e}; G_P rel err {:.1e}",
                        mc.value, mc.std_error, gh, dev, eG, eP)};
}

Verdict criterion_route_equivalence()
{
    const double ds[] = {0.1, 0.3, 0.7, 1.0, 1.5, 2.2, 3.0, 5.0, 8.0, 20.0};
    const double rhos[] = {0.5, 1.0, 2.0, 0.1, 3.0, 1.0, 0.25, 4.0, 1.5, 0.8};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        geometry::SlabGeometry g{ds[i], rhos[i], rhos[9 - i]};
        worst = std::max(worst, rel(geometry::G_slabs_fourier_quadrature(g), geometry::G_slabs_realspace_quadrature(g)));
    }
    return {worst <= 1e-10, fmt::format("max relative difference over 10 (d, rho) points: {:.1e}", worst)};
}

Verdict criterion_finite_T()
{
    geometry::SlabGeometry g{1.4, 0.6, 1.9};
    const double v = 2e-3, beta = 0.7, D1 = 0.35, D2 = 1.25;
    auto report = forces::finite_T_slab_force(g, v, {D1}, {D2}, beta, units::UnitContext::identity());
    double F = report.force[0].value;
    double Gq = geometry::G_slabs_realspace_quadrature(g);
    double H0q = materials::smoothed_H0_quadrature(materials::SpectralDensity::linear(D1),
                                                   materials::SpectralDensity::linear(D2), beta);
    double e_pipe = rel(F, -Gq * v * H0q);
    double closed = -(2.0 * std::pow(pi, 6) / 15.0) * std::pow(g.d / beta, 2) * g.rho1 * g.rho2 * D1 * D2 * v /
                    (beta * beta * std::pow(g.d, 4));
    double e_closed = rel(F, closed);
    return {e_pipe <= 1e-9 && e_closed <= 1e-12,
            fmt::format("F = {:.12e}; vs -G v H0 by quadrature {:.1e}; vs closed form {:.1e}", F, e_pipe, e_closed)};
}

Verdict criterion_zero_T()
{
    const double D1 = 0.7, D2 = 1.3;
    auto s1 = materials::SpectralDensity::linear(D1), s2 = materials::SpectralDensity::linear(D2);
    const double wv = 0.9;
    double J1 = response::dissipation_J(wv, 1.0, s1, s2);
    double J10 = response::dissipation_J(wv, 10.0, s1, s2);
    double HP = J1 / (2.0 * std::pow(wv, 6));
    double HP_exact = pi / 120.0 * D1 * D2;
    double eH = rel(HP, HP_exact);
    double e_tau = rel(J10 / 10.0, J1);

    geometry::SlabGeometry g{1.2, 0.9, 1.1};
    const double v = 0.02;
    auto report = forces::zero_T_slab_force(g, v, {D1}, {D2}, units::UnitContext::identity());
    double closed = -(5.0 * pi * pi / (512.0 * std::pow(g.d, 6))) * v * v * g.rho1 * g.rho2 * D1 * D2 * v * v * v;
    double eF = rel(report.force[0].value, closed);
    return {eH <= 1e-10 && eF <= 1e-12 && e_tau <= 1e-12,
            fmt::format("H_P by quadrature rel err {:.1e}; F_P vs closed form {:.1e}; tau 1 vs 10 {:.1e}", eH, eF,
                        e_tau)};
}

Verdict criterion_kernels(std::mt19937_64& eng)
{
    using response::OscState;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_identity = 0.0;
    bool bound_ok = true;
    for (int i = 0; i < 1000; ++i) {
        OscState a{0.1 + 3.0 * u(eng), 2.0 * u(eng), 0.5 + u(eng)};
        OscState c{0.1 + 3.0 * u(eng), 2.0 * u(eng), 0.5 + u(eng)};
        double t = 20.0 * u(eng);
        double A = a.occupation_factor(), B = c.occupation_factor();
        double Om = a.omega - c.omega;
        Complex rem = Complex(0.0, 0.5 * Om * Om) * (A * std::cos(a.omega * t) * std::sin(c.omega * t) +
                                                     B * std::cos(c.omega * t) * std::sin(a.omega * t));
        Complex diff = response::M_full(a, c, t) - response::M_reduced(a, c, t);
        double scale = std::max(1.0, 0.5 * Om * Om * (A + B));
        worst_identity = std::max(worst_identity, std::abs(diff - rem) / scale);
        bound_ok = bound_ok && std::abs(diff) <= 0.5 * Om * Om * (A + B) + 1e-12;
    }

    double worst_phi = 0.0;
    for (int i = 0; i < 20; ++i) {
        double beta = 0.2 + 3.0 * u(eng);
        double w1 = 0.2 + 2.0 * u(eng), w2 = 0.2 + 2.0 * u(eng);
        auto a = OscState::thermal(w1, 0.5 + u(eng), beta), c = OscState::thermal(w2, 0.5 + u(eng), beta);
        double H = materials::thermal_H(w1, w2, a.polarizability(), c.polarizability(), beta);
        auto cpm = response::c_plus_minus(a, c, beta, H);
        for (int k = 0; k <= 50; ++k) {
            double t = 0.3 * k;
            double form = cpm.C_minus * std::sin(cpm.omega_minus * t) + cpm.C_plus * std::sin(cpm.omega_plus * t);
            worst_phi = std::max(worst_phi, std::abs(response::response_phi(a, c, t).real() - form));
        }
    }

    double worst_delta = 0.0;
    for (double eta : {1.0, 0.1, 0.01}) {
        double v = 2.0 * numerics::quad_semi_infinite([&](double w) { return w * response::nascent_delta_g(w, eta); },
                                                      0.0, 1e-13, eta)
                             .value;
        worst_delta = std::max(worst_delta, std::abs(v - pi));
    }
    return {worst_identity <= 1e-12 && bound_ok && worst_phi <= 1e-10 && worst_delta <= 1e-8,
            fmt::format("remainder identity {:.1e} (bound holds: {}); phi vs C+- {:.1e}; delta normalization {:.1e}",
                        worst_identity, bound_ok ? "yes" : "no", worst_phi, worst_delta)};
}

Verdict criterion_drude()
{
    materials::DrudeParams p{9.0, 0.1, 1.0};
    double D = materials::drude_D(p).D;
    double worst = 0.0;
    std::string d;
    for (double m : {1e-4, 3e-4, 1e-3}) {
        double slope = materials::spectrum_from_h(materials::drude_h(p), m) / m;
        worst = std::max(worst, rel(slope, D));
        d += fmt::format("s({:.0e})/m = {:.6e}  ", m, slope);
    }
    return {worst <= 1e-2, d + fmt::format("D = {:.6e}, max rel err {:.1e}", D, worst)};
}

Verdict criterion_sign(std::mt19937_64& eng)
{
    using forces::Regime;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto pos = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(eng)); };
    const Regime regimes[] = {Regime::pair_sharp,  Regime::pair_smoothed,  Regime::plane,       Regime::plane_sharp,
                              Regime::slabs_sharp, Regime::slabs_finite_T, Regime::slabs_zero_T};
    const auto id = units::UnitContext::identity();
    int failures = 0;
    std::string first_failure;
    for (int i = 0; i < 1000; ++i) {
        Regime reg = regimes[i % 7];
        double beta = pos(0.1, 10.0), speed = pos(1e-4, 0.1);
        double w1 = pos(0.2, 5.0);
        auto o1 = response::OscState::thermal(w1, pos(0.2, 5.0), beta);
        auto o2 = response::OscState::thermal(w1, pos(0.2, 5.0), beta);
        auto s1 = materials::SpectralDensity::linear(pos(0.05, 5.0));
        auto s2 = materials::SpectralDensity::linear(pos(0.05, 5.0));
        materials::SpectralAmplitude D1{pos(0.05, 5.0)}, D2{pos(0.05, 5.0)};
        geometry::PlaneGeometry pg{pos(0.2, 5.0), pos(0.1, 10.0)};
        geometry::SlabGeometry sg{pos(0.2, 5.0), pos(0.1, 10.0), pos(0.1, 10.0)};
        Vec3 r{u(eng) - 0.5, u(eng) - 0.5, u(eng) - 0.5};
        r = r / norm(r) * pos(0.3, 5.0);
        Vec3 v{u(eng) - 0.5, u(eng) - 0.5, u(eng) - 0.5};
        v = v / norm(v) * speed;

        forces::FrictionReport rep;
        switch (reg) {
        case Regime::pair_sharp: rep = forces::pair_force_sharp({r}, v, o1, o2, beta); break;
        case Regime::pair_smoothed: rep = forces::pair_force_smoothed({r}, v, s1, s2, beta); break;
        case Regime::plane: rep = forces::plane_force(pg, speed, s1, s2, beta); break;
        case Regime::plane_sharp: rep = forces::plane_force_sharp(pg, speed, o1, o2, beta); break;
        case Regime::slabs_sharp: rep = forces::slabs_force_sharp(sg, speed, o1, o2, beta); break;
        case Regime::slabs_finite_T: rep = forces::finite_T_slab_force(sg, speed, D1, D2, beta, id); break;
        case Regime::slabs_zero_T: rep = forces::zero_T_slab_force(sg, speed, D1, D2, id); break;
        }
        if (!(rep.force_along_v.value < 0.0)) {
            if (failures++ == 0)
                first_failure = fmt::format(" first: {} F.v_hat = {:.3e}", forces::regime_name(reg), rep.force_along_v.value);
        }
    }
    return {failures == 0, fmt::format("{} of 1000 draws over 7 regimes fail to oppose v.{}", failures, first_failure)};
}

Verdict criterion_suppression()
{
    const auto id = units::UnitContext::identity();
    geometry::SlabGeometry g{0.8, 1.3, 0.6};
    const double beta = 2.3, v = 0.05;
    auto f = forces::finite_T_slab_force(g, v, {0.4}, {1.6}, beta, id);
    auto z = forces::zero_T_slab_force(g, v, {0.4}, {1.6}, id);
    double ratio_T = f.force[0].value / f.intermediates.at("dielectric_form_force").value;
    double ratio_0 = z.force[0].value / z.intermediates.at("dielectric_form_force").value;
    double want_T = std::pow(g.d / beta, 2), want_0 = v * v;
    double e1 = rel(ratio_T, want_T), e2 = rel(ratio_0, want_0);
    double e3 = rel(f.intermediates.at("suppression_d_over_beta_sq").value, want_T);
    double e4 = rel(z.intermediates.at("suppression_v_over_c_sq").value, want_0);
    double worst = std::max({e1, e2, e3, e4});
    return {worst <= 1e-14, fmt::format("F/F_dielectric = {:.12g} vs (d/beta)^2 = {:.12g}; {:.12g} vs (v/c)^2 = {:.12g}; "
                                        "max rel err {:.1e}",
                                        ratio_T, want_T, ratio_0, want_0, worst)};
}

Verdict criterion_field_limit()
{
    double worst_ratio = 0.0, prev = -1.0;
    bool monotone = true;
    std::string d;
    for (int k = 0; k <= 8; ++k) {
        double x = std::pow(10.0, -4.0 + 0.25 * k);
        double dev = oracle::field_relative_deviation(x);
        worst_ratio = std::max(worst_ratio, dev / x);
        monotone = monotone && dev > prev;
        prev = dev;
        if (k % 4 == 0) d += fmt::format("|zr|={:.0e}: {:.2e}  ", x, dev);
    }
    return {worst_ratio <= 1.0 && monotone,
            d + fmt::format("max err/|zr| = {:.2e} (bound 1), increasing with |zr|: {}", worst_ratio,
                            monotone ? "yes" : "no")};
}

} // namespace

Battery run_acceptance(std::uint64_t seed)
{
    std::mt19937_64 eng(seed);
    Battery b;
    b.push_back(timed("1 eigenfrequency product", 10.0, [&] { return criterion_eigen_product(eng); }));
    b.push_back(timed("2 Matsubara T->0 and classical limits", 5.0, criterion_matsubara));
    b.push_back(timed("3 universal integral", 0.0, criterion_universal_integral));
    b.push_back(timed("4 geometry closed forms", 60.0, [&] { return criterion_geometry(seed); }));
    b.push_back(timed("5 real-space vs Fourier slab factor", 0.0, criterion_route_equivalence));
    b.push_back(timed("6 finite-T assembly", 0.0, criterion_finite_T));
    b.push_back(timed("7 zero-T assembly", 0.0, criterion_zero_T));
    b.push_back(timed("8 response-kernel identities", 0.0, [&] { return criterion_kernels(eng); }));
    b.push_back(timed("9 Drude spectral slope", 0.0, criterion_drude));
    b.push_back(timed("10 friction opposes motion", 0.0, [&] { return criterion_sign(eng); }));
    b.push_back(timed("11 suppression factors", 0.0, criterion_suppression));
    b.push_back(timed("12 quasistatic field limit", 0.0, criterion_field_limit));
    return b;
}

} // namespace mdf::verify
