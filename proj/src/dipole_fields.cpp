#include "mdf/dipole_fields.hpp"

#include "mdf/errors.hpp"

namespace mdf::fields {

namespace {

double checked_separation(const Vec3& r, const char* op)
{
    if (!is_finite(r)) throw DomainError(std::string(op) + ": non-finite separation");
    double d = norm(r);
    if (!(d > 0.0)) throw DomainError(std::string(op) + ": zero separation");
    return d;
}

} // namespace

ComplexVec3 magnetic_field_full(const Vec3& P, Complex zeta, const Vec3& r)
{
    double d = checked_separation(r, "magnetic_field_full");
    Vec3 rxp = cross(r / d, P);
    Complex prefactor = -zeta * (1.0 + zeta * d) * std::exp(-zeta * d) / (d * d);
    return {prefactor * rxp.x, prefactor * rxp.y, prefactor * rxp.z};
}

Vec3 magnetic_field_quasistatic(const Vec3& P_dot, const Vec3& r)
{
    double d = checked_separation(r, "magnetic_field_quasistatic");
    return cross(P_dot, r / d) / (d * d);
}

Vec3 electric_field_quasistatic(const Vec3& M_dot, const Vec3& r)
{
    double d = checked_separation(r, "electric_field_quasistatic");
    return cross(M_dot, r / d) / (d * d);
}

Vec3 quasistatic_field(const DipoleSource& source, const Vec3& observer)
{
    Vec3 r = observer - source.position;
    return source.kind == DipoleKind::electric ? magnetic_field_quasistatic(source.moment_rate, r)
                                               : electric_field_quasistatic(source.moment_rate, r);
}

double coupling_alpha(double separation)
{
    if (!(separation > 0.0)) throw DomainError("coupling_alpha: zero separation");
    return 1.0 / (2.0 * separation * separation);
}

InteractionEnergies interaction_energies(const Vec3& P, const Vec3& P_dot, const Vec3& M, const Vec3& M_dot,
                                         const Vec3& r)
{
    double d = checked_separation(r, "interaction_energies");
    double alpha = coupling_alpha(d);
    Vec3 r_hat = r / d;
    InteractionEnergies e;
    e.from_magnetic_field = -2.0 * alpha * dot(cross(P_dot, r_hat), M);
    e.from_electric_field = -2.0 * alpha * dot(cross(M_dot, r_hat), P);
    return e;
}

} // namespace mdf::fields
