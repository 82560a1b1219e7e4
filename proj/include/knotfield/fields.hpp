#pragma once

#include "knotfield/core.hpp"

namespace knotfield::fields {

/// Shorthand variables of the time-dependent solution:
///   A = (R^2 - T^2 + 1)/2,  P = T(T^2 - 3A^2),  Q = A(A^2 - 3T^2).
/// A^2 + T^2 = 0 would need T = 0 and R^2 = -1, so the denominators of the
/// closed-form fields never vanish on real points.
struct APQ {
    double A = 0.0, P = 0.0, Q = 0.0;
};

APQ apq(double R2, double T);

struct HVectors {
    Vec3 H1, H2, H3, H4;
};

HVectors h_vectors(const Point4& p, const KnotIndices& k);

struct FieldSample {
    Vec3 E, B;
    Point4 at;
};

/// E, B at any dimensionless spacetime point. Natural units carry the
/// sqrt(a)/(pi L0^2) prefactors with c = 1; in SI the electric prefactor
/// picks up c.
FieldSample field_at(const Point4& p, const KnotIndices& k, const PhysicalScales& s);

/// The t = 0 closed form. Requires p.T == 0; equal to field_at there.
FieldSample initial_fields(const Point4& p, const KnotIndices& k, const PhysicalScales& s);

double energy_density(const FieldSample& fs, const PhysicalScales& s);

Vec3 poynting_classical(const FieldSample& fs, const PhysicalScales& s);

struct MaxwellResidual {
    double divE = 0.0, divB = 0.0;
    Vec3 faraday; // curl E + dB/dT
    Vec3 ampere;  // curl B - dE/dT   (dimensionless form; c factors cancel)
    double field_scale = 0.0; // max norm of the individual derivative terms
    double max_relative() const;
};

/// Central finite differences with one Richardson extrapolation level.
/// h <= 0 selects the default step 1e-4 * max(1, |p|).
MaxwellResidual maxwell_residual(const Point4& p, const KnotIndices& k, const PhysicalScales& s,
                                 double h = 0.0);

} // namespace knotfield::fields
