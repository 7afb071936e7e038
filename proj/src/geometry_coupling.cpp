#include "mdf/geometry_coupling.hpp"

#include "mdf/errors.hpp"

#include <cmath>
#include <numbers>

namespace mdf::geometry {

using std::numbers::pi;

namespace {

double checked_norm(const Vec3& r, const char* op)
{
    if (!is_finite(r)) throw DomainError(std::string(op) + ": non-finite separation");
    double d = norm(r);
    if (!(d > 0.0)) throw DomainError(std::string(op) + ": zero separation");
    return d;
}

} // namespace

void PairGeometry::validate() const { checked_norm(r, "PairGeometry"); }

void PlaneGeometry::validate() const
{
    if (!(z0 > 0.0) || !(rho > 0.0)) throw DomainError("PlaneGeometry: z0 and rho must be positive");
}

void SlabGeometry::validate() const
{
    if (!(d > 0.0) || !(rho1 > 0.0) || !(rho2 > 0.0)) {
        throw DomainError("SlabGeometry: d, rho1 and rho2 must be positive");
    }
}

Tensor2 coupling_psi(const Vec3& r)
{
    double d = checked_norm(r, "coupling_psi");
    double inv3 = 1.0 / (d * d * d);
    Tensor2 psi{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) psi[i][j] += levi_civita(k, i, j) * r[k] * inv3;
    return psi;
}

Tensor2 coupling_psi_vector_form(const Vec3& r)
{
    double d = checked_norm(r, "coupling_psi_vector_form");
    Vec3 r_hat = r / d;
    Tensor2 psi{};
    // psi_ij = -(e_i x r_hat)_j / r^2
    for (int i = 0; i < 3; ++i) {
        Vec3 row = cross(unit_vector(i), r_hat) * (-1.0 / (d * d));
        psi[i] = {row.x, row.y, row.z};
    }
    return psi;
}

Tensor3 coupling_gradient_T(const Vec3& r)
{
    double d = checked_norm(r, "coupling_gradient_T");
    double inv3 = 1.0 / (d * d * d);
    double inv5 = inv3 / (d * d);
    Tensor3 t{};
    for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) {
            double a = (l == k ? inv3 : 0.0) - 3.0 * r[l] * r[k] * inv5;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) t[l][i][j] += a * levi_civita(k, i, j);
        }
    return t;
}

Tensor2 G_tensor(const Vec3& r)
{
    double d = checked_norm(r, "G_tensor");
    double r2 = d * d;
    double inv6 = 1.0 / (r2 * r2 * r2);
    double inv8 = inv6 / r2;
    Tensor2 g{};
    for (int l = 0; l < 3; ++l)
        for (int q = 0; q < 3; ++q) g[l][q] = 2.0 * ((l == q ? inv6 : 0.0) + 3.0 * r[l] * r[q] * inv8);
    return g;
}

Tensor2 G_tensor_contraction(const Vec3& r)
{
    Tensor3 t = coupling_gradient_T(r);
    Tensor2 g{};
    for (int l = 0; l < 3; ++l)
        for (int q = 0; q < 3; ++q)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) g[l][q] += t[l][i][j] * t[q][i][j];
    return g;
}

double G_halfspace(const PlaneGeometry& g)
{
    g.validate();
    return pi * g.rho / (2.0 * g.z0 * g.z0 * g.z0);
}

numerics::McResult G_halfspace_mc(const PlaneGeometry& g, std::uint64_t samples, std::uint64_t seed,
                                  std::uint32_t partitions, unsigned threads)
{
    g.validate();
    const double z0 = g.z0;
    // Joint density p(x) = 6 z0^3 / (pi r^6) on z > z0:
    //   z = z0 U^{-1/3}                     (density 3 z0^3 / z^4)
    //   s^2 = z^2 (1 / sqrt(1 - V) - 1)     (density 4 z^4 s / (s^2 + z^2)^3)
    //   phi uniform.
    auto sampler = [z0](std::mt19937_64& eng) {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        double u = 1.0 - uni(eng); // (0, 1]
        double z = z0 / std::cbrt(u);
        double v = uni(eng);       // [0, 1)
        double s = z * std::sqrt(1.0 / std::sqrt(1.0 - v) - 1.0);
        double phi = 2.0 * pi * uni(eng);
        Vec3 p{s * std::cos(phi), s * std::sin(phi), z};
        double r2 = dot(p, p);
        double density = 6.0 * z0 * z0 * z0 / (pi * r2 * r2 * r2);
        return numerics::McSample<Vec3>{p, density};
    };
    const double rho = g.rho;
    auto gxx = [rho](const Vec3& p) {
        double r2 = dot(p, p);
        double inv6 = 1.0 / (r2 * r2 * r2);
        return rho * 2.0 * (inv6 + 3.0 * p.x * p.x * inv6 / r2);
    };
    return numerics::mc_integrate(gxx, sampler, samples, seed, partitions, threads);
}

double G_slabs_realspace(const SlabGeometry& g)
{
    g.validate();
    return pi * g.rho1 * g.rho2 / (4.0 * g.d * g.d);
}

double G_slabs_realspace_quadrature(const SlabGeometry& g)
{
    g.validate();
    auto integrand = [&](double z0) { return g.rho2 * G_halfspace({z0, g.rho1}); };
    return numerics::quad_semi_infinite(integrand, g.d, 1e-13, g.d).value;
}

double psi_hat(double z0, double q)
{
    if (!(q > 0.0)) throw DomainError("psi_hat: q must be positive");
    return 2.0 * pi * std::exp(-q * std::abs(z0)) / q;
}

double G_hat_q(double d, double q)
{
    if (!(d > 0.0) || !(q > 0.0)) throw DomainError("G_hat_q: d and q must be positive");
    return 4.0 * pi * pi * std::exp(-2.0 * q * d) / (q * q);
}

double G_hat_q_quadrature(double d, double q)
{
    if (!(d > 0.0) || !(q > 0.0)) throw DomainError("G_hat_q: d and q must be positive");
    // z1 in (d, inf), z2 in (-inf, 0); write z2 = -w with w in (0, inf).
    auto inner = [&](double z1) {
        auto f = [&](double w) {
            double p = psi_hat(z1 + w, q);
            return 4.0 * q * q * p * p;
        };
        return numerics::quad_semi_infinite(f, 0.0, 1e-13, 1.0 / q).value;
    };
    return numerics::quad_semi_infinite(inner, d, 1e-12, 1.0 / q).value;
}

double G_slabs_fourier(const SlabGeometry& g)
{
    g.validate();
    // (rho1 rho2/(2 pi)^2) (2 pi)^2 pi int q e^{-2qd} dq,  int q e^{-2qd} dq = 1/(4 d^2)
    return g.rho1 * g.rho2 * pi / (4.0 * g.d * g.d);
}

double G_slabs_fourier_quadrature(const SlabGeometry& g)
{
    g.validate();
    auto integrand = [&](double q) {
        if (q == 0.0) return 0.0;
        return 0.5 * q * q * G_hat_q(g.d, q) * 2.0 * pi * q;
    };
    double integral = numerics::quad_semi_infinite(integrand, 0.0, 1e-13, 1.0 / g.d).value;
    return g.rho1 * g.rho2 / (4.0 * pi * pi) * integral;
}

double angular_moment6() { return 5.0 * pi / 8.0; }

double G_P_slabs(const SlabGeometry& g)
{
    g.validate();
    double d6 = std::pow(g.d, 6);
    return 75.0 * pi * g.rho1 * g.rho2 / (64.0 * d6);
}

double G_P_slabs_quadrature(const SlabGeometry& g)
{
    g.validate();
    auto integrand = [&](double q) {
        if (q == 0.0) return 0.0;
        return 5.0 / 16.0 * std::pow(q, 6) * G_hat_q(g.d, q) * 2.0 * pi * q;
    };
    double integral = numerics::quad_semi_infinite(integrand, 0.0, 1e-13, 1.0 / g.d).value;
    return g.rho1 * g.rho2 / (4.0 * pi * pi) * integral;
}

} // namespace mdf::geometry
