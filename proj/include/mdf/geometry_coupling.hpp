#pragma once

#include "mdf/numerics.hpp"
#include "mdf/vec3.hpp"

#include <cstdint>

// Magnetodielectric coupling tensor psi_ij, its gradient T_lij, the
// contracted factor G_lq = T_lij T_qij, and the geometric reductions of G
// for a particle above a half-space and for two half-spaces.  Reduced units,
// c = 1.

namespace mdf::geometry {

struct PairGeometry {
    Vec3 r;
    void validate() const;
};

struct PlaneGeometry {
    double z0 = 1.0;  // particle to surface
    double rho = 1.0; // half-space number density
    void validate() const;
};

struct SlabGeometry {
    double d = 1.0; // gap
    double rho1 = 1.0;
    double rho2 = 1.0;
    void validate() const;
};

/// psi_ij = eps_kij x_k / r^3.
Tensor2 coupling_psi(const Vec3& r);

/// The same tensor read off the vector form -(s1_dot x r_hat) . s2 / r^2.
Tensor2 coupling_psi_vector_form(const Vec3& r);

/// T_lij = d psi_ij / d x_l = (delta_lk / r^3 - 3 x_l x_k / r^5) eps_kij.
Tensor3 coupling_gradient_T(const Vec3& r);

/// G_lq = 2 (delta_lq / r^6 + 3 x_l x_q / r^8).
Tensor2 G_tensor(const Vec3& r);

/// G_lq by explicit contraction of T.
Tensor2 G_tensor_contraction(const Vec3& r);

/// G_h = rho int_{z > z0} G_xx dV = pi rho / (2 z0^3).
double G_halfspace(const PlaneGeometry& g);

/// Monte-Carlo estimate of rho int_{z > z0} G_xx dV.  Points are drawn with
/// density proportional to r^-6 restricted to the half-space (z ~ z^-4,
/// lateral radius from its exact conditional), which leaves a bounded
/// weight.  Deterministic in (seed, samples, partitions).
numerics::McResult G_halfspace_mc(const PlaneGeometry& g, std::uint64_t samples, std::uint64_t seed,
                                  std::uint32_t partitions = 8, unsigned threads = 0);

/// G = rho2 int_d^inf G_h dz0 = pi rho1 rho2 / (4 d^2).
double G_slabs_realspace(const SlabGeometry& g);
double G_slabs_realspace_quadrature(const SlabGeometry& g);

/// Lateral transform of 1/r at height z0: 2 pi exp(-q |z0|) / q.
double psi_hat(double z0, double q);

/// G^(q) = (2 pi)^2 exp(-2 q d) / q^2.
double G_hat_q(double d, double q);

/// The double height integral over z1 > d, z2 < 0 of 4 q^2 psi_hat^2.
double G_hat_q_quadrature(double d, double q);

/// G = (rho1 rho2 / (2 pi)^2) int_0^inf (q^2/2) G^(q) 2 pi q dq.
double G_slabs_fourier(const SlabGeometry& g);
double G_slabs_fourier_quadrature(const SlabGeometry& g);

/// int_0^{2 pi} cos^6 phi dphi = 5 pi / 8.
double angular_moment6();

/// G_P = (rho1 rho2 / (2 pi)^2) int_0^inf (5/16) q^6 G^(q) 2 pi q dq
///     = 75 pi rho1 rho2 / (64 d^6).
double G_P_slabs(const SlabGeometry& g);
double G_P_slabs_quadrature(const SlabGeometry& g);

} // namespace mdf::geometry
