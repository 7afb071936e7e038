#include "verify/oracles.hpp"

#include "mdf/dipole_fields.hpp"
#include "mdf/errors.hpp"
#include "mdf/friction_forces.hpp"
#include "mdf/geometry_coupling.hpp"
#include "mdf/materials_spectral.hpp"
#include "mdf/matsubara.hpp"
#include "mdf/numerics.hpp"
#include "mdf/oscillator_pair.hpp"
#include "mdf/response_kinetics.hpp"
#include "mdf/units.hpp"
#include "verify/acceptance.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace mdf::verify {

using std::numbers::pi;

namespace oracle {

namespace {

// Solves A x = b for the symmetric cyclic tridiagonal matrix with constant
// diagonal `diag` and off-diagonal `off` (corners included).
std::vector<double> cyclic_tridiagonal_solve(double diag, double off, const std::vector<double>& b)
{
    const std::size_t n = b.size();
    // A = T + u v^T with T tridiagonal, u = (g, 0, ..., 0, off), v = (1, 0, ..., 0, off / g).
    const double g = -diag;
    std::vector<double> a_diag(n, diag);
    a_diag[0] = diag - g;
    a_diag[n - 1] = diag - off * off / g;

    auto thomas = [&](std::vector<double> rhs) {
        std::vector<double> c(n), d(n);
        c[0] = off / a_diag[0];
        d[0] = rhs[0] / a_diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            double m = a_diag[i] - off * c[i - 1];
            c[i] = off / m;
            d[i] = (rhs[i] - off * d[i - 1]) / m;
        }
        std::vector<double> x(n);
        x[n - 1] = d[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
        return x;
    };

    std::vector<double> u(n, 0.0);
    u[0] = g;
    u[n - 1] = off;
    std::vector<double> y = thomas(b);
    std::vector<double> z = thomas(u);
    double vy = y[0] + off / g * y[n - 1];
    double vz = z[0] + off / g * z[n - 1];
    double factor = vy / (1.0 + vz);
    for (std::size_t i = 0; i < n; ++i) y[i] -= factor * z[i];
    return y;
}

double mode_average_at(double beta, int n, int slices)
{
    const double eps = beta / slices;
    const double K = 2.0 * pi * n / beta;
    // S = sum_j (x_{j+1} - x_j)^2 / (2 eps) + eps x_j^2 / 2
    const double diag = 2.0 / eps + eps;
    const double off = -1.0 / eps;
    std::vector<double> c(slices);
    for (int j = 0; j < slices; ++j) c[j] = std::cos(K * eps * j);
    std::vector<double> y = cyclic_tridiagonal_solve(diag, off, c);
    double cy = 0.0, cc = 0.0;
    for (int j = 0; j < slices; ++j) {
        cy += c[j] * y[j];
        cc += c[j] * c[j];
    }
    // <|x~(K)|^2> = (eps^2 / beta) w^H C w with |w|^2 = slices; C restricted to
    // the mode is the scalar cy / cc.
    return eps * eps / beta * slices * cy / cc;
}

double gh_weight(int i) { return i == 1 ? 2.0 / 3.0 : 1.0 / 6.0; }
double gh_node(int i) { return (i - 1) * std::sqrt(3.0); }

} // namespace

double mode_average_path_integral(double beta, int n, int slices)
{
    if (!(beta > 0.0) || slices < 8) throw DomainError("mode_average_path_integral: bad arguments");
    double coarse = mode_average_at(beta, n, slices);
    double fine = mode_average_at(beta, n, 2 * slices);
    return (4.0 * fine - coarse) / 3.0;
}

double mode_free_energy_gauss_hermite(double alpha, double u, double beta)
{
    const double sigma = std::sqrt(1.0 / (u * u + 1.0)); // std of each real component
    Complex acc = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    double w = gh_weight(a) * gh_weight(b) * gh_weight(c) * gh_weight(d);
                    Complex x(sigma * gh_node(a), sigma * gh_node(b));
                    Complex y(sigma * gh_node(c), sigma * gh_node(d));
                    x /= std::sqrt(2.0);
                    y /= std::sqrt(2.0);
                    // dL_K = -2 alpha u x(K) y(-K), dL_-K = 2 alpha u x(-K) y(K)
                    Complex dl_plus = -2.0 * alpha * u * x * std::conj(y);
                    Complex dl_minus = 2.0 * alpha * u * std::conj(x) * y;
                    acc += w * dl_plus * dl_minus;
                }
    // sigma^2 here is the variance of b and c separately; <|x|^2> = sigma^2.
    return -0.5 * acc.real() / beta;
}

std::array<double, 2> eigenfrequencies_eigen(const oscillator::OscPairConfig& cfg)
{
    cfg.validate();
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    A(0, 2) = 1.0;
    A(1, 3) = 1.0;
    A(2, 0) = -cfg.omega_x * cfg.omega_x;
    A(2, 3) = 2.0 * cfg.alpha / cfg.mass_x;
    A(3, 1) = -cfg.omega_y * cfg.omega_y;
    A(3, 2) = -2.0 * cfg.alpha / cfg.mass_y;
    Eigen::EigenSolver<Eigen::Matrix4d> es(A, false);
    std::vector<double> w;
    for (int i = 0; i < 4; ++i) w.push_back(std::abs(es.eigenvalues()[i].imag()));
    std::sort(w.begin(), w.end());
    return {0.5 * (w[2] + w[3]), 0.5 * (w[0] + w[1])};
}

double psi_inverse_transform(double rho, double z0)
{
    if (!(z0 > 0.0)) throw DomainError("psi_inverse_transform: z0 must be positive");
    auto f = [&](double q) {
        if (q == 0.0) return 2.0 * pi / (2.0 * pi); // psi_hat q / (2 pi) -> 1 at q = 0
        double ph = 2.0 * pi * std::exp(-q * z0) / q;
        return ph * std::cyl_bessel_j(0.0, q * rho) * q / (2.0 * pi);
    };
    // Split at the first few Bessel zeros so the oscillation stays resolved.
    double upper = 60.0 / z0;
    return numerics::quad_finite(f, 0.0, upper, 1e-13, 1e-15, 20000).value +
           numerics::quad_semi_infinite(f, upper, 1e-12, 1.0 / z0).value;
}

double matsubara_brute_force(double alpha, double beta, std::int64_t terms)
{
    // S(N) = S - c/N + O(N^-2); two truncations remove the 1/N part
    auto partial = [&](std::int64_t N) {
        double sum = 0.0;
        for (std::int64_t n = N; n >= 1; --n) {
            double u = 2.0 * pi * static_cast<double>(n) / beta;
            double q = u * u + 1.0;
            sum += 2.0 * alpha * alpha / beta * u * u / (q * q);
        }
        return 2.0 * sum;
    };
    return 2.0 * partial(2 * terms) - partial(terms);
}

namespace {

double sharp_weight_at_eta(const response::OscState& osc1, double mass2, double beta, double G, double eta)
{
    const double w1 = osc1.omega;
    const double A = 1.0 / std::tanh(0.5 * beta * w1);
    auto gfun = [eta](double w) {
        double q = eta * eta + w * w;
        return 2.0 * eta * w / (q * q);
    };
    // int_0^inf t e^{-eta t} cos(a t) sin(b t) dt
    auto I = [&](double a, double b) { return 0.5 * (gfun(b + a) + gfun(b - a)); };
    auto force_density = [&](double w2) {
        double B = 1.0 / std::tanh(0.5 * beta * w2);
        double D = 1.0 / (2.0 * osc1.mass * mass2 * w1 * w2);
        // phi = (D/2) M / i, M = (i/2){...}
        double bracket = (w1 * w1 + w2 * w2) * (A * I(w1, w2) + B * I(w2, w1)) -
                         2.0 * w1 * w2 * (A * I(w2, w1) + B * I(w1, w2));
        return -G * 0.5 * D * 0.5 * bracket;
    };
    const double W = 0.5 * w1;
    std::vector<double> cuts = {w1 - W, w1 + W};
    for (double k : {1.0, 10.0, 100.0})
        for (double sgn : {-1.0, 1.0})
            if (k * eta < W) cuts.push_back(w1 + sgn * k * eta);
    cuts.push_back(w1);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        total += numerics::quad_finite(force_density, cuts[i], cuts[i + 1], 1e-13, 1e-16, 20000).value;
    }
    return total;
}

} // namespace

double sharp_amplitude_eta_pipeline(const response::OscState& osc1, double mass2, double beta, double G, double eta0)
{
    // Ladder eta0, eta0/10, eta0/100; the error is a power series in eta.
    double f0 = sharp_weight_at_eta(osc1, mass2, beta, G, eta0);
    double f1 = sharp_weight_at_eta(osc1, mass2, beta, G, eta0 / 10.0);
    double f2 = sharp_weight_at_eta(osc1, mass2, beta, G, eta0 / 100.0);
    double r01 = (10.0 * f1 - f0) / 9.0;
    double r12 = (10.0 * f2 - f1) / 9.0;
    return (100.0 * r12 - r01) / 99.0;
}

double field_relative_deviation(double x)
{
    Vec3 P{1.0, 0.0, 0.0};
    Vec3 r{0.0, 0.0, 1.0};
    Complex zeta(x, 0.0); // real zeta: imaginary frequency axis
    auto full = fields::magnetic_field_full(P, zeta, r);
    Vec3 quasi = fields::magnetic_field_quasistatic(P * x, r);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        num += std::norm(full[i] - Complex(quasi[i], 0.0));
        den += quasi[i] * quasi[i];
    }
    return std::sqrt(num / den);
}

} // namespace oracle

// ---------------------------------------------------------------------------
// Batteries

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed;
    std::string detail;
};

void add(Battery& b, std::string name, const std::function<Outcome()>& fn)
{
    auto start = Clock::now();
    CheckResult r;
    r.name = std::move(name);
    try {
        Outcome o = fn();
        r.passed = o.passed;
        r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    b.push_back(std::move(r));
}

Outcome near(double got, double want, double tol, bool relative = false)
{
    double err = std::abs(got - want);
    if (relative) err /= std::max(std::abs(want), 1e-300);
    return {err <= tol, fmt::format("got {:.15g} want {:.15g} {} err {:.3g} tol {:.1g}", got, want,
                                    relative ? "rel" : "abs", err, tol)};
}

Outcome truth(bool ok, std::string detail) { return {ok, std::move(detail)}; }

template <class F>
bool throws(F f)
{
    try {
        f();
    } catch (const std::exception&) {
        return true;
    }
    return false;
}

double time_domain_sin_integral(double w, double eta)
{
    // int_0^inf t e^{-eta t} sin(w t) dt, period by period
    const double period = 2.0 * pi / std::abs(w);
    double total = 0.0;
    for (int k = 0;; ++k) {
        double a = k * period, b = (k + 1) * period;
        double piece = numerics::quad_finite([&](double t) { return t * std::exp(-eta * t) * std::sin(w * t); }, a, b,
                                             1e-10, 1e-12)
                           .value;
        total += piece;
        if (b * std::exp(-eta * b) < 1e-16 * std::max(1.0, std::abs(total)) && k > 2) break;
    }
    return total;
}

double time_domain_cos_sin_integral(double w1, double w2, double eta)
{
    const double period = 2.0 * pi / std::max(std::abs(w1), std::abs(w2));
    double total = 0.0;
    for (int k = 0;; ++k) {
        double a = k * period, b = (k + 1) * period;
        total += numerics::quad_finite(
                     [&](double t) { return t * std::exp(-eta * t) * std::cos(w1 * t) * std::sin(w2 * t); }, a, b,
                     1e-10, 1e-12)
                     .value;
        if (b * std::exp(-eta * b) < 1e-16 && k > 2) break;
    }
    return total;
}

Battery numerics_battery(std::uint64_t seed)
{
    Battery b;
    add(b, "quad_finite cos^6 over [0, 2pi]", [] {
        auto r = numerics::quad_finite([](double x) { return std::pow(std::cos(x), 6); }, 0.0, 2.0 * pi);
        return near(r.value, 5.0 * pi / 8.0, 1e-12);
    });
    add(b, "quad_finite zero integrand", [] {
        return near(numerics::quad_finite([](double) { return 0.0; }, 0.0, 1.0).value, 0.0, 0.0);
    });
    add(b, "quad_finite x", [] { return near(numerics::quad_finite([](double x) { return x; }, 0.0, 1.0).value, 0.5, 1e-15); });
    add(b, "quad_semi_infinite u^2/(u^2+1)^2", [] {
        auto r = numerics::quad_semi_infinite([](double u) { return u * u / ((u * u + 1) * (u * u + 1)); }, 0.0);
        return near(r.value, pi / 4.0, 1e-10);
    });
    add(b, "quad_semi_infinite Bose integral", [] {
        auto r = numerics::quad_semi_infinite(
            [](double x) {
                if (x == 0.0) return 0.0;
                double em = -std::expm1(-x);
                return std::pow(x, 4) * std::exp(-x) / (em * em);
            },
            0.0, 1e-13, 4.0);
        return near(r.value, 4.0 * std::pow(pi, 4) / 15.0, 1e-10);
    });
    add(b, "quad_semi_infinite q^5 e^-2q", [] {
        auto r = numerics::quad_semi_infinite([](double q) { return std::pow(q, 5) * std::exp(-2.0 * q); }, 0.0);
        return near(r.value, 1.875, 1e-10);
    });
    add(b, "quad_semi_infinite rejects non-decay", [] {
        return truth(throws([] { numerics::quad_semi_infinite([](double) { return 1.0; }, 0.0); }), "constant integrand");
    });
    add(b, "mc constant integrand", [seed] {
        auto sampler = [](std::mt19937_64& e) {
            std::uniform_real_distribution<double> u(0.0, 2.0);
            return numerics::McSample<double>{u(e), 0.5};
        };
        auto r = numerics::mc_integrate([](double) { return 3.0; }, sampler, 1000, seed);
        return truth(r.value == 6.0 && r.std_error == 0.0, fmt::format("value {} std_error {}", r.value, r.std_error));
    });
    add(b, "mc half-space r^-6 (1e7 samples)", [seed] {
        const double z0 = 1.0;
        // z ~ z^-4 tail, lateral radius from the 2D Cauchy law of width z.
        auto sampler = [z0](std::mt19937_64& e) {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            double z = z0 / std::cbrt(1.0 - u(e));
            double v = u(e);
            double s = z * std::sqrt(v / (1.0 - v));
            double phi = 2.0 * pi * u(e);
            Vec3 p{s * std::cos(phi), s * std::sin(phi), z};
            double r2 = s * s + z * z;
            double density = 3.0 * z0 * z0 * z0 / std::pow(z, 4) * z * z / (pi * r2 * r2);
            return numerics::McSample<Vec3>{p, density};
        };
        auto f = [](const Vec3& p) {
            double r2 = dot(p, p);
            return 1.0 / (r2 * r2 * r2);
        };
        auto r = numerics::mc_integrate(f, sampler, 10'000'000, seed);
        double target = pi / 6.0;
        double dev = std::abs(r.value - target);
        return truth(dev <= 3.0 * r.std_error,
                     fmt::format("value {:.6f} target {:.6f} dev {:.2e} 3sigma {:.2e}", r.value, target, dev,
                                 3.0 * r.std_error));
    });
    add(b, "mc determinism across thread counts", [seed] {
        geometry::PlaneGeometry g{1.0, 1.0};
        auto a = geometry::G_halfspace_mc(g, 200'000, seed, 8, 1);
        auto c = geometry::G_halfspace_mc(g, 200'000, seed, 8, 4);
        return truth(a.value == c.value && a.std_error == c.std_error,
                     fmt::format("1 thread {:.17g}, 4 threads {:.17g}", a.value, c.value));
    });
    add(b, "mc rejects zero density", [seed] {
        auto sampler = [](std::mt19937_64&) { return numerics::McSample<double>{0.0, 0.0}; };
        return truth(throws([&] { numerics::mc_integrate([](double) { return 1.0; }, sampler, 10, seed); }),
                     "zero-density sample");
    });
    add(b, "series sum 1/n^4", [] {
        auto r = numerics::series_sum([](std::int64_t n) { return 1.0 / std::pow(double(n), 4); },
                                      [](std::int64_t N) { return 1.0 / (3.0 * std::pow(double(N), 3)); }, 1e-13);
        return near(r.value, std::pow(pi, 4) / 90.0, 1e-12);
    });
    add(b, "series sum of zeros", [] {
        auto r = numerics::series_sum([](std::int64_t) { return 0.0; }, [](std::int64_t) { return 0.0; }, 1e-13);
        return near(r.value, 0.0, 0.0);
    });
    add(b, "series detects a false tail bound", [] {
        return truth(throws([] {
                         numerics::series_sum([](std::int64_t n) { return 1.0 / double(n); },
                                              [](std::int64_t N) { return 1e-20 / double(N); }, 1e-12);
                     }),
                     "harmonic series with a vanishing bound");
    });
    add(b, "central difference of sin", [] {
        return near(numerics::central_difference([](double x) { return std::sin(x); }, 1.0, 1e-3), std::cos(1.0), 1e-11);
    });
    add(b, "sinusoid fit pure cos t", [] {
        std::vector<double> t, y;
        for (int i = 0; i < 400; ++i) {
            t.push_back(0.1 * i);
            y.push_back(std::cos(0.1 * i));
        }
        auto fit = numerics::sinusoid_fit(t, y, 1);
        return near(fit.components[0].frequency, 1.0, 1e-8);
    });
    add(b, "sinusoid fit two modes at alpha 0.75", [] {
        std::vector<double> t, y;
        for (int i = 0; i < 800; ++i) {
            double ti = 0.1 * i;
            t.push_back(ti);
            y.push_back(0.7 * std::cos(2.0 * ti + 0.3) + 0.4 * std::cos(0.5 * ti - 1.1));
        }
        auto fit = numerics::sinusoid_fit(t, y, 2);
        double err = std::max(std::abs(fit.components[0].frequency - 2.0), std::abs(fit.components[1].frequency - 0.5));
        return truth(err <= 1e-6 && fit.rms_residual <= 1e-10,
                     fmt::format("freq err {:.2e} residual {:.2e}", err, fit.rms_residual));
    });
    return b;
}

Battery fields_battery()
{
    Battery b;
    add(b, "quasistatic H for P_dot = x, r = z", [] {
        Vec3 h = fields::magnetic_field_quasistatic({1, 0, 0}, {0, 0, 1});
        return truth(h == Vec3{0, -1, 0}, fmt::format("({}, {}, {})", h.x, h.y, h.z));
    });
    add(b, "quasistatic E for M_dot = y, r = z", [] {
        Vec3 e = fields::electric_field_quasistatic({0, 1, 0}, {0, 0, 1});
        return truth(e == Vec3{1, 0, 0}, fmt::format("({}, {}, {})", e.x, e.y, e.z));
    });
    add(b, "parallel sources give zero field", [] {
        Vec3 h = fields::magnetic_field_quasistatic({0, 0, 2}, {0, 0, 1});
        Vec3 e = fields::electric_field_quasistatic({0, 0, 2}, {0, 0, 1});
        auto full = fields::magnetic_field_full({0, 0, 2}, Complex(0, 0.3), {0, 0, 1});
        bool ok = norm(h) == 0.0 && norm(e) == 0.0 && std::abs(full[0]) + std::abs(full[1]) + std::abs(full[2]) == 0.0;
        return truth(ok, "P parallel to r");
    });
    add(b, "full field vanishes at zeta = 0", [] {
        auto full = fields::magnetic_field_full({1, 0, 0}, Complex(0, 0), {0, 0, 1});
        return truth(std::abs(full[0]) + std::abs(full[1]) + std::abs(full[2]) == 0.0, "zeta = 0");
    });
    add(b, "full field against its power series at zeta = 0.01i", [] {
        Complex zeta(0.0, 0.01);
        Vec3 r{0, 0, 1};
        auto full = fields::magnetic_field_full({1, 0, 0}, zeta, r);
        // (1 + x) e^{-x} = sum_n (-1)^n (1 - n) x^n / n!
        Complex x = zeta * 1.0, s = 0.0, pw = 1.0;
        double fact = 1.0;
        for (int n = 0; n < 25; ++n) {
            if (n > 0) {
                pw *= x;
                fact *= n;
            }
            s += (n % 2 ? -1.0 : 1.0) * (1.0 - n) * pw / fact;
        }
        // r_hat x P = z x x = y
        Complex want = -zeta * s;
        double err = std::abs(full[1] - want) + std::abs(full[0]) + std::abs(full[2]);
        return truth(err <= 1e-15, fmt::format("err {:.2e}", err));
    });
    add(b, "quasistatic vs full is O(|zeta r|)", [] {
        std::string d;
        bool ok = true;
        for (double x : {1e-2, 1e-3, 1e-4}) {
            double dev = oracle::field_relative_deviation(x);
            ok = ok && dev <= x;
            d += fmt::format("|zr|={:.0e}: {:.2e}  ", x, dev);
        }
        return truth(ok, d);
    });
    add(b, "fields orthogonal to r and source", [] {
        std::mt19937_64 eng(7);
        std::normal_distribution<double> n(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            Vec3 p{n(eng), n(eng), n(eng)}, r{n(eng), n(eng), n(eng)};
            Vec3 h = fields::magnetic_field_quasistatic(p, r);
            Vec3 e = fields::electric_field_quasistatic(p, r);
            double scale = norm(p) / dot(r, r);
            for (double v : {dot(h, r) / norm(r), dot(h, p) / norm(p), dot(e, r) / norm(r), dot(e, p) / norm(p)})
                worst = std::max(worst, std::abs(v) / scale);
        }
        return truth(worst <= 1e-14, fmt::format("max normalized projection {:.2e}", worst));
    });
    add(b, "interaction energies in the canonical orientation", [] {
        double x = 0.3, y = -0.7, xd = 1.1, yd = 0.4, sep = 1.7;
        double alpha = fields::coupling_alpha(sep);
        auto e = fields::interaction_energies({x, 0, 0}, {xd, 0, 0}, {0, y, 0}, {0, yd, 0}, {0, 0, sep});
        double dl_h = -e.from_magnetic_field, dl_e = -e.from_electric_field;
        double err = std::abs(dl_h - (-2 * alpha * xd * y)) + std::abs(dl_e - 2 * alpha * x * yd);
        return truth(err <= 1e-15, fmt::format("err {:.2e}", err));
    });
    add(b, "static dipoles do not interact", [] {
        auto e = fields::interaction_energies({1, 2, 3}, {0, 0, 0}, {3, 1, 2}, {0, 0, 0}, {0, 1, 1});
        return truth(e.from_magnetic_field == 0.0 && e.from_electric_field == 0.0, "P_dot = M_dot = 0");
    });
    add(b, "dL_H + dL_E differs from 4 alpha x y_dot by a total derivative", [] {
        // x = cos t, y = sin 2t along the x / y / z canonical geometry
        double sep = 1.3, T = 5.0;
        double alpha = fields::coupling_alpha(sep);
        auto integrand = [&](double t) {
            double x = std::cos(t), xd = -std::sin(t), y = std::sin(2 * t), yd = 2 * std::cos(2 * t);
            auto e = fields::interaction_energies({x, 0, 0}, {xd, 0, 0}, {0, y, 0}, {0, yd, 0}, {0, 0, sep});
            return -(e.from_magnetic_field + e.from_electric_field) - 4.0 * alpha * x * yd;
        };
        double lhs = numerics::quad_finite(integrand, 0.0, T, 1e-12, 1e-13).value;
        double rhs = -2.0 * alpha * (std::cos(T) * std::sin(2 * T) - 0.0);
        return near(lhs, rhs, 1e-12);
    });
    add(b, "zero separation rejected", [] {
        return truth(throws([] { fields::magnetic_field_quasistatic({1, 0, 0}, {0, 0, 0}); }), "r = 0");
    });
    return b;
}

Battery oscillator_battery()
{
    using namespace oscillator;
    Battery b;
    add(b, "generalized momenta alpha=1 at (1,1,0,0)", [] {
        auto [px, py] = generalized_momenta({1.0}, 0.0, 0.0, 1.0, 1.0);
        return truth(px == -1.0 && py == 1.0, fmt::format("({}, {})", px, py));
    });
    add(b, "generalized momenta alpha=0", [] {
        auto [px, py] = generalized_momenta({0.0}, 0.3, -0.2, 5.0, 7.0);
        return truth(px == 0.3 && py == -0.2, fmt::format("({}, {})", px, py));
    });
    add(b, "Legendre round trip", [] {
        std::mt19937_64 eng(3);
        std::uniform_real_distribution<double> u(-2, 2);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            OscPairConfig cfg{std::abs(u(eng)), 1.0 + std::abs(u(eng)), 1.0 + std::abs(u(eng)), 0.5 + std::abs(u(eng)),
                              0.5 + std::abs(u(eng))};
            VelocityState s{u(eng), u(eng), u(eng), u(eng)};
            double h = hamiltonian(cfg, to_phase_state(cfg, s));
            double e = energy_from_velocities(cfg, s);
            worst = std::max(worst, std::abs(h - e) / std::max(1.0, std::abs(e)));
        }
        return truth(worst <= 1e-13, fmt::format("max rel diff {:.2e}", worst));
    });
    add(b, "hamiltonian simple values", [] {
        double h0 = hamiltonian({0.7}, {0, 0, 0, 0});
        double h1 = hamiltonian({0.0}, {1, 0, 0, 1});
        return truth(h0 == 0.0 && h1 == 1.0, fmt::format("{} {}", h0, h1));
    });
    add(b, "eom_rhs simple values", [] {
        auto d = eom_rhs({0.0}, {1, 0, 0, 0});
        auto z = eom_rhs({0.9}, {0, 0, 0, 0});
        return truth(d[2] == -1.0 && d[3] == 0.0 && z == VelocityState{0, 0, 0, 0}, "");
    });
    add(b, "eigenfrequencies alpha=0.75 and 0.5", [] {
        auto a = eigenfrequencies(0.75);
        auto c = eigenfrequencies(0.5);
        double err = std::abs(a.omega_plus - 2.0) + std::abs(a.omega_minus - 0.5) +
                     std::abs(c.omega_plus - (1 + std::sqrt(5.0)) / 2) + std::abs(c.omega_minus - (std::sqrt(5.0) - 1) / 2);
        return truth(err <= 1e-15, fmt::format("err {:.2e}", err));
    });
    add(b, "eigenfrequencies match the 4x4 eigensolve", [] {
        double worst = 0.0;
        for (double alpha : {0.0, 0.1, 0.5, 0.75, 1.0, 2.0, 5.0}) {
            auto c = eigenfrequencies(alpha);
            auto o = oracle::eigenfrequencies_eigen({alpha});
            worst = std::max({worst, std::abs(c.omega_plus - o[0]), std::abs(c.omega_minus - o[1])});
        }
        return truth(worst <= 1e-12, fmt::format("max diff {:.2e}", worst));
    });
    add(b, "ground state energy", [] {
        std::string d;
        bool ok = ground_state_energy(0.0) == 1.0 && std::abs(ground_state_energy(0.75) - 1.25) <= 1e-15;
        for (double a : {1e-1, 1e-2, 1e-3}) {
            double ratio = (ground_state_energy(a) - 1.0 - 0.5 * a * a) / std::pow(a, 4);
            ok = ok && std::abs(ratio + 0.125) <= 0.01;
            d += fmt::format("a={:.0e}: (E0-1-a^2/2)/a^4={:.5f}  ", a, ratio);
        }
        return truth(ok, d);
    });
    add(b, "negative alpha rejected", [] { return truth(throws([] { eigenfrequencies(-0.1); }), ""); });
    add(b, "energy drift over t=1000 at dt=1e-3", [] {
        auto tr = integrate_eom({0.6}, {1.0, -0.5, 0.2, 0.7}, 1000.0, 1e-3, 1000);
        return truth(tr.max_relative_energy_drift <= 1e-8, fmt::format("drift {:.2e}", tr.max_relative_energy_drift));
    });
    add(b, "alpha=0 gives x = cos t", [] {
        auto tr = integrate_eom({0.0}, {1, 0, 0, 0}, 20.0, 1e-3, 100);
        double worst = 0.0;
        for (std::size_t i = 0; i < tr.t.size(); ++i) worst = std::max(worst, std::abs(tr.states[i][0] - std::cos(tr.t[i])));
        return truth(worst <= 1e-9, fmt::format("max deviation {:.2e}", worst));
    });
    add(b, "trajectory spectrum has two lines at w+-", [] {
        auto tr = integrate_eom({0.75}, {1, 0, 0, 0.3}, 200.0, 0.005, 20);
        std::vector<double> x;
        for (auto& s : tr.states) x.push_back(s[0]);
        auto fit = numerics::sinusoid_fit(tr.t, x, 2);
        double err = std::max(std::abs(fit.components[0].frequency - 2.0), std::abs(fit.components[1].frequency - 0.5));
        return truth(err <= 1e-6, fmt::format("freq err {:.2e}", err));
    });
    return b;
}

Battery matsubara_battery()
{
    using namespace matsubara;
    Battery b;
    add(b, "matsubara frequencies", [] {
        bool ok = matsubara_frequency(3.0, 0) == 0.0 && std::abs(matsubara_frequency(2 * pi, 3) - 3.0) <= 1e-15 &&
                  matsubara_frequency(1.7, -4) == -matsubara_frequency(1.7, 4);
        return truth(ok, "");
    });
    add(b, "reference mode average simple values", [] {
        return truth(reference_mode_average(0.0) == 1.0 && reference_mode_average(1.0) == 0.5, "");
    });
    add(b, "reference mode average vs time-sliced path integral", [] {
        double worst = 0.0;
        for (auto [beta, n] : {std::pair{2 * pi, 1}, std::pair{1.0, 1}, std::pair{10.0, 3}}) {
            double u = 2 * pi * n / beta;
            worst = std::max(worst, std::abs(oracle::mode_average_path_integral(beta, n, 5000) - reference_mode_average(u)));
        }
        return truth(worst <= 1e-3, fmt::format("max diff {:.2e}", worst));
    });
    add(b, "mode free energy simple values", [] {
        return truth(mode_free_energy(0.3, 0.0, 2.0) == 0.0 && std::abs(mode_free_energy(1, 1, 1) - 0.5) <= 1e-16, "");
    });
    add(b, "mode free energy vs Gaussian moments", [] {
        double worst = 0.0;
        for (double u : {0.1, 1.0, 3.0})
            for (double alpha : {0.1, 1.0})
                worst = std::max(worst, std::abs(oracle::mode_free_energy_gauss_hermite(alpha, u, 2.0) -
                                                 mode_free_energy(alpha, u, 2.0)));
        return truth(worst <= 1e-14, fmt::format("max diff {:.2e}", worst));
    });
    add(b, "T -> 0 limit alpha^2/2", [] {
        auto f = induced_free_energy(0.1, MatsubaraGrid::automatic(1000.0));
        return near(f.value, 0.005, 1e-4, true);
    });
    add(b, "classical limit vanishes", [] {
        auto f = induced_free_energy(0.1, MatsubaraGrid::automatic(1e-6));
        return truth(std::abs(f.value) <= 1e-6 * 0.01, fmt::format("|F| = {:.3e}", std::abs(f.value)));
    });
    add(b, "beta=10 against a 1e6-term direct sum", [] {
        auto f = induced_free_energy(0.1, MatsubaraGrid::automatic(10.0));
        return near(f.value, oracle::matsubara_brute_force(0.1, 10.0, 1'000'000), 1e-10);
    });
    add(b, "quadratic scaling in alpha", [] {
        auto g = MatsubaraGrid::automatic(3.0);
        double f1 = induced_free_energy(1.0, g).value;
        double f3 = induced_free_energy(0.3, g).value;
        return near(f3, 0.09 * f1, 1e-14, true);
    });
    add(b, "F non-negative and non-decreasing in beta", [] {
        double prev = -1.0;
        bool ok = true;
        for (double beta : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
            double f = induced_free_energy(0.2, MatsubaraGrid::automatic(beta)).value;
            ok = ok && f >= 0.0 && f >= prev;
            prev = f;
        }
        return truth(ok, "beta grid 0.01 .. 100");
    });
    add(b, "integral of u^2/(u^2+1)^2 over the real line", [] {
        double v = 2.0 * numerics::quad_semi_infinite([](double u) { return u * u / ((u * u + 1) * (u * u + 1)); }, 0.0).value;
        return near(v, pi / 2.0, 1e-10);
    });
    add(b, "|F - alpha^2/2| <= C / beta", [] {
        std::string d;
        bool ok = true;
        for (double beta : {10.0, 100.0, 1000.0}) {
            double dev = beta * std::abs(induced_free_energy(1.0, MatsubaraGrid::automatic(beta)).value - 0.5);
            ok = ok && dev <= 1.0;
            d += fmt::format("beta={}: beta*dev={:.2e}  ", beta, dev);
        }
        return truth(ok, d);
    });
    return b;
}

Battery response_battery()
{
    using namespace response;
    Battery b;
    add(b, "L kernels at t=0 and n=0", [] {
        auto l0 = L_kernels(0.7, 1.3, 0.0);
        auto g = L_kernels(0.0, 1.3, 0.4);
        Complex e = std::exp(Complex(0, 1.3 * 0.4));
        bool ok = l0.plus == Complex(2.4, 0.0) && l0.minus == Complex(1.0, 0.0) && std::abs(g.plus - e) <= 1e-15 &&
                  std::abs(g.minus - e) <= 1e-15;
        return truth(ok, "");
    });
    add(b, "L kernels periodic", [] {
        auto a = L_kernels(0.4, 1.7, 0.3), c = L_kernels(0.4, 1.7, 0.3 + 2 * pi / 1.7);
        double err = std::abs(a.plus - c.plus) + std::abs(a.minus - c.minus);
        return truth(err <= 1e-12, fmt::format("err {:.2e}", err));
    });
    add(b, "M_full vanishes at t=0 and for identical oscillators", [] {
        OscState o{1.2, 0.3, 1.0};
        double worst = std::abs(M_full(o, {0.7, 0.1, 2.0}, 0.0));
        for (int i = 0; i <= 100; ++i) worst = std::max(worst, std::abs(M_full(o, o, 0.1 * i)));
        return truth(worst <= 1e-14, fmt::format("max |M| {:.2e}", worst));
    });
    add(b, "M_full = M_reduced + exact Omega^2 remainder", [] {
        std::mt19937_64 eng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        bool bound_ok = true;
        for (int i = 0; i < 1000; ++i) {
            OscState a{0.2 + 2 * u(eng), 3 * u(eng), 1.0}, c{0.2 + 2 * u(eng), 3 * u(eng), 1.0};
            double t = 10 * u(eng);
            double A = a.occupation_factor(), B = c.occupation_factor();
            double Om = a.omega - c.omega;
            Complex rem = Complex(0, 0.5) * Om * Om *
                          (A * std::cos(a.omega * t) * std::sin(c.omega * t) + B * std::cos(c.omega * t) * std::sin(a.omega * t));
            Complex diff = M_full(a, c, t) - M_reduced(a, c, t);
            worst = std::max(worst, std::abs(diff - rem));
            bound_ok = bound_ok && std::abs(diff) <= 0.5 * Om * Om * (A + B) * (1 + 1e-12) + 1e-14;
        }
        return truth(worst <= 1e-12 && bound_ok, fmt::format("max identity error {:.2e}, bound {}", worst, bound_ok));
    });
    add(b, "M_reduced zero cases", [] {
        OscState a{1.0, 0.5, 1.0}, c{1.4, 0.5, 1.0};
        return truth(std::abs(M_reduced(a, c, 0.7)) == 0.0 && std::abs(M_reduced(a, a, 0.7)) == 0.0, "");
    });
    add(b, "response phi is real and vanishes at t=0", [] {
        auto a = OscState::thermal(1.0, 1.0, 1.0), c = OscState::thermal(1.5, 2.0, 1.0);
        double worst = std::abs(response_phi(a, c, 0.0));
        for (int i = 0; i < 50; ++i) worst = std::max(worst, std::abs(response_phi(a, c, 0.2 * i).imag()));
        return truth(worst <= 1e-15, fmt::format("max |Im phi| {:.2e}", worst));
    });
    add(b, "phi equals the two-sinusoid C+- form", [] {
        double worst = 0.0;
        for (auto [w1, w2, beta] : {std::tuple{1.0, 1.5, 1.0}, std::tuple{2.0, 0.7, 0.3}, std::tuple{0.5, 0.5001, 4.0}}) {
            auto a = OscState::thermal(w1, 1.3, beta), c = OscState::thermal(w2, 0.8, beta);
            double H = materials::thermal_H(w1, w2, a.polarizability(), c.polarizability(), beta);
            auto cpm = c_plus_minus(a, c, beta, H);
            for (int i = 0; i <= 100; ++i) {
                double t = 0.1 * i;
                double form = cpm.C_minus * std::sin(cpm.omega_minus * t) + cpm.C_plus * std::sin(cpm.omega_plus * t);
                worst = std::max(worst, std::abs(response_phi(a, c, t).real() - form));
            }
        }
        return truth(worst <= 1e-10, fmt::format("max diff {:.2e}", worst));
    });
    add(b, "nascent delta normalization", [] {
        double worst = 0.0;
        for (double eta : {1.0, 0.1, 0.01}) {
            double v = 2.0 * numerics::quad_semi_infinite([&](double w) { return w * nascent_delta_g(w, eta); }, 0.0, 1e-13,
                                                          eta)
                                 .value;
            worst = std::max(worst, std::abs(v - pi));
        }
        return truth(nascent_delta_g(0.0, 0.3) == 0.0 && worst <= 1e-8, fmt::format("max err {:.2e}", worst));
    });
    add(b, "nascent delta vs damped time integral", [] {
        double err = std::abs(nascent_delta_g(1.3, 0.05) - time_domain_sin_integral(1.3, 0.05));
        double err2 = std::abs(nascent_delta_cos_sin(1.0, 1.3, 0.05) - time_domain_cos_sin_integral(1.0, 1.3, 0.05));
        return truth(err <= 1e-9 && err2 <= 1e-9, fmt::format("g err {:.2e}, cos-sin err {:.2e}", err, err2));
    });
    add(b, "cos-sin kernel zero at w2=0 and -pi/2 weight", [] {
        bool zero = nascent_delta_cos_sin(1.0, 0.0, 0.1) == 0.0;
        std::string d;
        bool ok = zero;
        for (double eta : {1e-1, 1e-2, 1e-3}) {
            auto f = [&](double Om) { return Om * (-0.5) * nascent_delta_g(Om, eta); };
            double v = 2.0 * numerics::quad_semi_infinite(f, 0.0, 1e-13, eta).value;
            ok = ok && std::abs(v + pi / 2) <= 1e-8;
            d += fmt::format("eta={:.0e}: {:.12f}  ", eta, v);
        }
        return truth(ok, d);
    });
    add(b, "coth difference limit", [] {
        // ratio - 1 is O(Omega)
        std::string d;
        bool ok = coth_difference(2.0, 0.8, 0.8) == 0.0 && coth_difference(1.0, 1.0, 0.9) < 0.0 &&
                  coth_difference_limit(1.0, 1.0, 0.9) < 0.0;
        for (double om : {1e-3, 1e-4, 1e-5}) {
            double dev = std::abs(coth_difference(1.0, 1.0, 1.0 - om) / coth_difference_limit(1.0, 1.0, 1.0 - om) - 1.0);
            ok = ok && dev <= 2.0 * om;
            d += fmt::format("Omega={:.0e}: |ratio-1|={:.2e}  ", om, dev);
        }
        return truth(ok, d);
    });
    add(b, "sharp amplitude example", [] {
        auto a = OscState::thermal(1.0, 1.0, 1.0);
        auto amp = sharp_friction_amplitude(a, a, 1.0, 1.0);
        double want = -pi / (8.0 * std::pow(std::sinh(0.5), 2));
        bool ok = amp.amplitude < 0.0 && sharp_friction_amplitude(a, a, 1.0, 0.0).amplitude == 0.0 &&
                  amp.at_frequency == 1.0;
        auto r = near(amp.amplitude, want, 1e-14, true);
        return truth(ok && r.passed, r.detail);
    });
    add(b, "sharp amplitude vs eta-extrapolated Kubo pipeline", [] {
        std::string d;
        bool ok = true;
        for (auto [w1, m1, m2, beta] : {std::tuple{1.0, 1.0, 1.0, 1.0}, std::tuple{1.7, 0.6, 1.4, 0.5}}) {
            auto a = OscState::thermal(w1, m1, beta);
            double amp = sharp_friction_amplitude(a, OscState::thermal(w1, m2, beta), beta, 1.0).amplitude;
            double pipe = oracle::sharp_amplitude_eta_pipeline(a, m2, beta, 1.0, 1e-2);
            double rel = std::abs(pipe / amp - 1.0);
            ok = ok && rel <= 1e-6;
            d += fmt::format("w1={}: closed {:.8f} pipeline {:.8f}  ", w1, amp, pipe);
        }
        return truth(ok, d);
    });
    add(b, "C+ vanishes for equal frequencies; T -> 0 limit", [] {
        auto a = OscState::thermal(1.0, 1.0, 2.0);
        auto z = c_plus_minus(a, a, 2.0, 0.3);
        double w1 = 1.0, w2 = 1.6, a1 = 0.7, a2 = 1.2, beta = 60.0;
        auto o1 = OscState::thermal(w1, 1.0 / (w1 * w1 * a1), beta), o2 = OscState::thermal(w2, 1.0 / (w2 * w2 * a2), beta);
        auto c = c_plus_minus(o1, o2, beta, materials::thermal_H(w1, w2, a1, a2, beta));
        double want = c_plus_zero_temperature(w1, w2, a1, a2);
        return truth(z.C_plus == 0.0 && std::abs(c.C_plus / want - 1.0) <= 1e-12,
                     fmt::format("C+ {:.15g} vs {:.15g}", c.C_plus, want));
    });
    add(b, "dissipation J: linear closed form and quadrature", [] {
        materials::SpectralAmplitude d1{0.7}, d2{1.9};
        auto s1 = materials::SpectralDensity::linear(0.7), s2 = materials::SpectralDensity::linear(1.9);
        double closed = dissipation_J(1.3, 0.4, d1, d2);
        double quad = dissipation_J(1.3, 0.4, s1, s2);
        double ratio = dissipation_J(2.6, 0.4, d1, d2) / closed;
        bool ok = dissipation_J(0.0, 1.0, s1, s2) == 0.0 && std::abs(quad / closed - 1) <= 1e-10 &&
                  std::abs(ratio - 64.0) <= 1e-12;
        return truth(ok, fmt::format("quad/closed-1 {:.2e}, J(2w)/J(w) {:.15g}", quad / closed - 1, ratio));
    });
    return b;
}

Battery materials_battery()
{
    using namespace materials;
    Battery b;
    add(b, "truncated linear h: closed form vs quadrature", [] {
        auto s = SpectralDensity::linear(0.8, 3.0);
        double worst = 0.0;
        for (double K2 : {0.01, 0.5, 2.0, 30.0}) {
            double q = h_from_spectrum(s, K2);
            double c = linear_spectrum_h(0.8, 3.0, Complex(K2, 0)).real();
            worst = std::max(worst, std::abs(q / c - 1));
        }
        return truth(worst <= 1e-10, fmt::format("max rel diff {:.2e}", worst));
    });
    add(b, "sum rule K^2 h -> int s d(m^2)", [] {
        double K2 = 1e9;
        double v = K2 * h_from_spectrum(SpectralDensity::linear(1.0, 1.0), K2);
        return near(v, 2.0 / 3.0, 1e-6, true);
    });
    add(b, "spectral extraction round trip on linear spectrum", [] {
        double worst = 0.0;
        auto h = [](Complex K2) { return linear_spectrum_h(2.0, 10.0, K2); };
        for (double m : {0.05, 0.3, 1.0}) worst = std::max(worst, std::abs(spectrum_from_h(h, m) / (2.0 * m) - 1.0));
        return truth(worst <= 1e-2, fmt::format("max rel err {:.2e}", worst));
    });
    add(b, "spectral extraction of a dissipationless h", [] {
        auto h = [](Complex K2) { return 1.0 / (K2 + 4.0); };
        double s = spectrum_from_h(h, 1.0);
        return truth(std::abs(s) <= 1e-8, fmt::format("s = {:.2e}", s));
    });
    add(b, "Drude epsilon values", [] {
        DrudeParams p{1.0, 1.0, 1.0};
        bool mono = drude_epsilon(p, 0.5) > drude_epsilon(p, 1.0) && drude_epsilon(p, 1.0) > drude_epsilon(p, 2.0);
        return truth(drude_epsilon(p, 1.0) == 1.5 && std::abs(drude_epsilon(p, 1e9) - 1.0) <= 1e-17 && mono &&
                         throws([&] { drude_epsilon(p, 0.0); }),
                     "");
    });
    add(b, "Drude polarizability limits", [] {
        DrudeParams p{2.0, 0.5, 3.0};
        double lo = drude_polarizability_h(p, 1e-9), hi = drude_polarizability_h(p, 1e9);
        double eps = drude_epsilon(p, 1.3);
        double mid = drude_polarizability_h(p, 1.3);
        bool ok = std::abs(lo * 2 * pi * 3.0 - 1.0) <= 1e-8 && hi <= 1e-17 &&
                  std::abs(mid - (eps - 1) / (eps + 1) / (2 * pi * 3.0)) <= 1e-16;
        return truth(ok, "");
    });
    add(b, "Drude D", [] {
        double d = drude_D({9.0, 0.1, 1.0}).D;
        return truth(std::abs(d - 0.1 / (81 * pi * pi)) <= 1e-18 && std::abs(d - 1.2508e-4) <= 1e-8 &&
                         drude_D({9.0, 0.0, 1.0}).D == 0.0,
                     fmt::format("D = {:.6e}", d));
    });
    add(b, "Drude slope from spectral extraction", [] {
        DrudeParams p{9.0, 0.1, 1.0};
        double worst = 0.0;
        for (double m : {1e-4, 1e-3})
            worst = std::max(worst, std::abs(spectrum_from_h(drude_h(p), m) / m / drude_D(p).D - 1.0));
        return truth(worst <= 1e-2, fmt::format("max rel err {:.2e}", worst));
    });
    add(b, "thermal H", [] {
        double h = thermal_H(2, 2, 1, 1, 1);
        bool ok = std::abs(h - 1.0 / std::pow(std::sinh(1.0), 2)) <= 1e-15 &&
                  thermal_H(1.2, 0.4, 0.3, 2.0, 0.7) == thermal_H(0.4, 1.2, 2.0, 0.3, 0.7) && thermal_H(1, 1, 1, 1, 800) < 1e-300;
        return truth(ok, fmt::format("H(2,2,1,1,1) = {:.8f}", h));
    });
    add(b, "universal I: value, series and quadrature", [] {
        double I = universal_I(), q = universal_I_quadrature(), s = universal_I_series();
        bool ok = std::abs(I - 25.975757609067) <= 1e-11 && std::abs(q - s) <= 1e-12;
        return truth(ok, fmt::format("I {:.15g}, |quad - series| {:.2e}", I, std::abs(q - s)));
    });
    add(b, "universal I partial sums increase", [] {
        double prev = 0.0, sum = 0.0;
        bool ok = true;
        for (int n = 1; n <= 50; ++n) {
            sum += 24.0 / std::pow(double(n), 4);
            ok = ok && sum > prev && sum < universal_I();
            prev = sum;
        }
        return truth(ok, "");
    });
    add(b, "H0 for linear spectra", [] {
        auto s = SpectralDensity::linear(1.0);
        double h = smoothed_H0(s, s, 1.0);
        double q = smoothed_H0_quadrature(s, s, 1.0);
        double scale = smoothed_H0(s, s, 2.0) / h;
        bool ok = std::abs(h - 2 * pi * 4 * std::pow(pi, 4) / 15) <= 1e-11 && std::abs(q / h - 1) <= 1e-9 &&
                  std::abs(scale - 1.0 / 16) <= 1e-15;
        return truth(ok, fmt::format("H0 {:.10f}, quad rel {:.2e}, H0(2b)/H0(b) {:.15g}", h, q / h - 1, scale));
    });
    add(b, "tabulated spectrum parsing", [] {
        std::istringstream in("# m  s\n0 0\n1 0.5  # trailing\n\n2 1.0\n");
        auto s = parse_tabulated_spectrum(in);
        std::istringstream bad("0 0\n1 x\n");
        return truth(std::abs(s.weight(1.5) - 0.75) <= 1e-15 && throws([&] { parse_tabulated_spectrum(bad); }), "");
    });
    return b;
}

Battery geometry_battery(std::uint64_t seed)
{
    using namespace geometry;
    Battery b;
    add(b, "psi on the z axis and tracelessness", [] {
        auto p = coupling_psi({0, 0, 2.0});
        bool ok = std::abs(std::abs(p[0][1]) - 0.25) <= 1e-16 && p[0][1] == -p[1][0] && p[0][0] == 0 && p[1][1] == 0 && p[2][2] == 0;
        return truth(ok, fmt::format("psi_xy = {}", p[0][1]));
    });
    add(b, "psi: tensor and vector forms agree", [] {
        std::mt19937_64 eng(5);
        std::normal_distribution<double> n(0, 1);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            Vec3 r{n(eng), n(eng), n(eng)};
            auto a = coupling_psi(r), c = coupling_psi_vector_form(r);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[i][j] - c[i][j]) * dot(r, r));
        }
        return truth(worst <= 1e-12, fmt::format("max scaled diff {:.2e}", worst));
    });
    add(b, "T matches finite differences of psi", [] {
        std::mt19937_64 eng(6);
        std::normal_distribution<double> n(0, 1);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            Vec3 r{n(eng), n(eng), n(eng)};
            double h = 1e-5 * norm(r);
            auto T = coupling_gradient_T(r);
            double scale = std::pow(norm(r), 3);
            for (int l = 0; l < 3; ++l)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        auto f = [&](double s) {
                            Vec3 p = r;
                            p[l] += s;
                            return coupling_psi(p)[i][j];
                        };
                        worst = std::max(worst, std::abs(numerics::central_difference(f, 0.0, h) - T[l][i][j]) * scale);
                    }
        }
        return truth(worst <= 1e-8, fmt::format("max scaled diff {:.2e}", worst));
    });
    add(b, "T homogeneity and T_lii = 0", [] {
        Vec3 r{0.3, -1.2, 0.8};
        auto a = coupling_gradient_T(r), c = coupling_gradient_T(r * 2.0);
        double worst = 0.0;
        for (int l = 0; l < 3; ++l) {
            for (int i = 0; i < 3; ++i) {
                worst = std::max(worst, std::abs(a[l][i][i]));
                for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(c[l][i][j] * 8.0 - a[l][i][j]));
            }
        }
        return truth(worst <= 1e-14, fmt::format("{:.2e}", worst));
    });
    add(b, "G on the z axis", [] {
        auto g = G_tensor({0, 0, 1});
        bool ok = g[0][0] == 2.0 && g[1][1] == 2.0 && g[2][2] == 8.0 && g[0][1] == 0.0 && g[0][2] == 0.0 && g[1][2] == 0.0;
        return truth(ok, "");
    });
    add(b, "G: contraction vs closed form, positive definite", [] {
        std::mt19937_64 eng(8);
        std::normal_distribution<double> n(0, 1);
        double worst = 0.0;
        bool pd = true;
        for (int k = 0; k < 100; ++k) {
            Vec3 r{n(eng), n(eng), n(eng)};
            auto a = G_tensor(r), c = G_tensor_contraction(r);
            double scale = std::pow(dot(r, r), 3);
            Eigen::Matrix3d m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    worst = std::max(worst, std::abs(a[i][j] - c[i][j]) * scale);
                    m(i, j) = a[i][j];
                }
            pd = pd && Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues().minCoeff() > 0.0;
        }
        return truth(worst <= 1e-12 && pd, fmt::format("max scaled diff {:.2e}", worst));
    });
    add(b, "G_h closed form and cubic law", [] {
        double g2 = G_halfspace({2.0, 1.0});
        return truth(std::abs(g2 - pi / 16) <= 1e-16 && std::abs(G_halfspace({4.0, 1.0}) * 8.0 - g2) <= 1e-16,
                     fmt::format("G_h(z0=2) = {:.6f}", g2));
    });
    add(b, "G_h Monte Carlo (1e7 samples)", [seed] {
        auto r = G_halfspace_mc({1.0, 1.0}, 10'000'000, seed);
        double dev = std::abs(r.value - pi / 2);
        return truth(dev <= 3 * r.std_error && dev <= 0.01 * pi / 2,
                     fmt::format("{:.6f} +- {:.2e}, target {:.6f}", r.value, r.std_error, pi / 2));
    });
    add(b, "slab G: closed, real-space quadrature, Fourier quadrature", [] {
        SlabGeometry g{1.0, 1.0, 1.0};
        double c = G_slabs_realspace(g);
        double worst = std::max(std::abs(G_slabs_realspace_quadrature(g) / c - 1), std::abs(G_slabs_fourier_quadrature(g) / c - 1));
        return truth(std::abs(c - pi / 4) <= 1e-16 && G_slabs_fourier(g) == c && worst <= 1e-10,
                     fmt::format("max rel diff {:.2e}", worst));
    });
    add(b, "<k_x^2> = q^2/2 by angular quadrature", [] {
        double v = numerics::quad_finite([](double p) { return std::cos(p) * std::cos(p); }, 0.0, 2 * pi).value;
        return near(v / (2 * pi), 0.5, 1e-14);
    });
    add(b, "psi_hat values and inverse transform", [] {
        bool ok = psi_hat(0.0, 2.0) == pi && psi_hat(50.0, 2.0) < 1e-40;
        double worst = 0.0;
        for (auto [rho, z0] : {std::pair{0.0, 1.0}, std::pair{0.5, 1.0}, std::pair{1.0, 2.0}})
            worst = std::max(worst, std::abs(oracle::psi_inverse_transform(rho, z0) * std::hypot(rho, z0) - 1.0));
        return truth(ok && worst <= 1e-10 && throws([] { psi_hat(1.0, 0.0); }), fmt::format("max rel err {:.2e}", worst));
    });
    add(b, "G_hat: height quadrature and d law", [] {
        double worst = 0.0;
        for (double q : {0.2, 1.0, 3.0}) worst = std::max(worst, std::abs(G_hat_q_quadrature(1.0, q) / G_hat_q(1.0, q) - 1));
        double law = std::abs(G_hat_q(2.0, 0.7) - G_hat_q(1.0, 0.7) * std::exp(-1.4));
        return truth(worst <= 1e-10 && law <= 1e-15, fmt::format("max rel diff {:.2e}", worst));
    });
    add(b, "angular moment cos^6", [] {
        double q = numerics::quad_finite([](double p) { return std::pow(std::cos(p), 6); }, 0, 2 * pi).value;
        double wallis = 2 * pi * (5.0 * 3 * 1) / (6.0 * 4 * 2);
        return truth(std::abs(angular_moment6() - q) <= 1e-12 && std::abs(angular_moment6() - wallis) <= 1e-15,
                     fmt::format("{:.9f}", angular_moment6()));
    });
    add(b, "G_P: closed, quadrature, d^-6 law", [] {
        SlabGeometry g{1.0, 1.0, 1.0};
        double c = G_P_slabs(g);
        double q = G_P_slabs_quadrature(g);
        double slope = std::log(G_P_slabs({2.0, 1, 1}) / c) / std::log(2.0);
        return truth(std::abs(c - 75 * pi / 64) <= 1e-15 && std::abs(q / c - 1) <= 1e-10 && std::abs(slope + 6) <= 1e-12,
                     fmt::format("G_P {:.6f}, quad rel {:.2e}, slope {:.12f}", c, q / c - 1, slope));
    });
    return b;
}

Battery forces_battery()
{
    using namespace forces;
    Battery b;
    const auto id = UnitContext::identity();
    add(b, "finite-T slab example", [&] {
        auto r = finite_T_slab_force({1, 1, 1}, 1e-3, {1.0}, {1.0}, 1.0, id);
        double want = -2 * std::pow(pi, 6) / 15 * 1e-3;
        bool ok = std::abs(r.intermediates.at("G").value - pi / 4) <= 1e-15;
        auto n = near(r.force[0].value, want, 1e-14, true);
        return truth(ok && n.passed && std::abs(r.force[0].value + 0.12819) < 1e-5, n.detail);
    });
    add(b, "finite-T equals smoothed pipeline with quadrature factors", [&] {
        geometry::SlabGeometry g{1.3, 0.7, 2.1};
        auto lin1 = materials::SpectralDensity::linear(0.4), lin2 = materials::SpectralDensity::linear(1.7);
        double G = geometry::G_slabs_realspace_quadrature(g);
        double H0 = materials::smoothed_H0_quadrature(lin1, lin2, 0.8);
        auto s = smoothed_forces(G, 0.01, H0, Regime::slabs_finite_T);
        auto f = finite_T_slab_force(g, 0.01, {0.4}, {1.7}, 0.8, id);
        return near(s.force[0].value, f.force[0].value, 1e-9, true);
    });
    add(b, "finite-T beta^-4 law", [&] {
        double f1 = finite_T_slab_force({1, 1, 1}, 1e-3, {1}, {1}, 1.0, id).force[0].value;
        double f2 = finite_T_slab_force({1, 1, 1}, 1e-3, {1}, {1}, 2.0, id).force[0].value;
        return near(std::log(f2 / f1) / std::log(2.0), -4.0, 1e-12);
    });
    add(b, "zero-T slab example and v^5 law", [&] {
        auto r = zero_T_slab_force({1, 1, 1}, 0.01, {1}, {1}, id);
        double want = -5 * pi * pi / 512 * 1e-10;
        double f2 = zero_T_slab_force({1, 1, 1}, 0.02, {1}, {1}, id).force[0].value;
        double slope = std::log(f2 / r.force[0].value) / std::log(2.0);
        bool ok = zero_T_slab_force({1, 1, 1}, 0.0, {1}, {1}, id).force[0].value == 0.0 && std::abs(slope - 5) <= 1e-12;
        auto n = near(r.force[0].value, want, 1e-14, true);
        return truth(ok && n.passed, n.detail + fmt::format(" slope {:.12f}", slope));
    });
    add(b, "smoothed forces trivial cases", [] {
        auto z = smoothed_forces(2.0, 0.3, 0.0, Regime::plane);
        auto a = smoothed_forces(2.0, 0.3, 5.0, Regime::plane), c = smoothed_forces(2.0, 0.6, 5.0, Regime::plane);
        return truth(z.force[0].value == 0.0 && std::abs(c.force[0].value - 2 * a.force[0].value) <= 1e-15 &&
                         throws([] { smoothed_forces(1, 1, 1, Regime::slabs_zero_T); }),
                     "");
    });
    add(b, "plane force: cubic law, sign, product identity", [] {
        auto s = materials::SpectralDensity::linear(0.9);
        auto r1 = plane_force({1.0, 2.0}, 0.05, s, s, 1.5), r2 = plane_force({2.0, 2.0}, 0.05, s, s, 1.5);
        double direct = -geometry::G_halfspace({1.0, 2.0}) * 0.05 * materials::smoothed_H0(s, s, 1.5);
        bool ok = std::abs(r1.force[0].value / r2.force[0].value - 8.0) <= 1e-12 && r1.force[0].value < 0 &&
                  std::abs(r1.force[0].value / direct - 1) <= 1e-12;
        return truth(ok, fmt::format("F {:.6e}", r1.force[0].value));
    });
    add(b, "pair sharp: zero velocity and agreement with the Kubo amplitude", [] {
        auto o1 = response::OscState::thermal(1.3, 0.8, 0.9), o2 = response::OscState::thermal(1.3, 1.6, 0.9);
        Vec3 r{0.2, 1.1, -0.4}, v{0.03, -0.01, 0.02};
        auto rep = pair_force_sharp({r}, v, o1, o2, 0.9);
        auto G = geometry::G_tensor(r);
        double worst = 0.0;
        for (int l = 0; l < 3; ++l) {
            double gv = G[l][0] * v.x + G[l][1] * v.y + G[l][2] * v.z;
            double amp = response::sharp_friction_amplitude(o1, o2, 0.9, gv).amplitude;
            worst = std::max(worst, std::abs(rep.force[l].value / amp - 1));
        }
        auto zero = pair_force_sharp({r}, {0, 0, 0}, o1, o2, 0.9);
        bool z = zero.force[0].value == 0 && zero.force[1].value == 0 && zero.force[2].value == 0;
        return truth(z && worst <= 1e-13 && rep.force_along_v.value < 0, fmt::format("max rel diff {:.2e}", worst));
    });
    add(b, "suppression factors are exact ratios", [&] {
        auto f = finite_T_slab_force({0.7, 1.2, 0.4}, 0.02, {0.3}, {2.0}, 1.9, id);
        auto z = zero_T_slab_force({0.7, 1.2, 0.4}, 0.02, {0.3}, {2.0}, id);
        double e1 = std::abs(f.force[0].value / f.intermediates.at("dielectric_form_force").value /
                                 f.intermediates.at("suppression_d_over_beta_sq").value - 1);
        double e2 = std::abs(z.force[0].value / z.intermediates.at("dielectric_form_force").value /
                                 z.intermediates.at("suppression_v_over_c_sq").value - 1);
        return truth(e1 <= 1e-14 && e2 <= 1e-14, fmt::format("{:.2e} {:.2e}", e1, e2));
    });
    add(b, "unit conversion: identity, round trip, length rescaling", [] {
        auto rep = finite_T_slab_force({1.0, 1.0, 1.0}, 1e-3, {1.0}, {1.0}, 1.0, UnitContext::identity());
        auto same = to_physical_units(rep, UnitContext::identity());
        bool ok = same.force[0].value == rep.force[0].value;
        auto ctx = UnitContext::gaussian(1e-5), ctx2 = UnitContext::gaussian(2e-5);
        auto phys = to_physical_units(rep, ctx);
        auto back = to_reduced_units(phys, ctx);
        double worst = 0.0;
        for (auto& [k, q] : rep.intermediates)
            worst = std::max(worst, std::abs(back.intermediates.at(k).value - q.value) / std::max(std::abs(q.value), 1e-300));
        worst = std::max(worst, std::abs(back.force[0].value / rep.force[0].value - 1));
        double scaling = to_physical_units(rep, ctx2).force[0].value / phys.force[0].value;
        ok = ok && worst <= 1e-14 && std::abs(scaling - 1.0 / 16) <= 1e-14;
        return truth(ok, fmt::format("round trip {:.2e}, F(2L)/F(L) {:.15g}", worst, scaling));
    });
    return b;
}

} // namespace

std::vector<std::string> suite_names()
{
    return {"numerics", "fields", "oscillator", "matsubara", "response", "materials", "geometry", "forces", "acceptance", "all"};
}

Battery run_suite(std::string_view name, std::uint64_t seed)
{
    if (name == "numerics") return numerics_battery(seed);
    if (name == "fields") return fields_battery();
    if (name == "oscillator") return oscillator_battery();
    if (name == "matsubara") return matsubara_battery();
    if (name == "response") return response_battery();
    if (name == "materials") return materials_battery();
    if (name == "geometry") return geometry_battery(seed);
    if (name == "forces") return forces_battery();
    if (name == "acceptance") return run_acceptance(seed);
    if (name == "all") {
        Battery all;
        for (const auto& s : suite_names()) {
            if (s == "all") continue;
            Battery part = run_suite(s, seed);
            for (auto& c : part) {
                c.name = s + ": " + c.name;
                all.push_back(std::move(c));
            }
        }
        return all;
    }
    throw ConfigError("unknown verify suite '" + std::string(name) + "'");
}

} // namespace mdf::verify
