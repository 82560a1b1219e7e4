#include "knotfield/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace knotfield::fields {

APQ apq(double R2, double T) {
    APQ out;
    out.A = (R2 - T * T + 1.0) / 2.0;
    out.P = T * (T * T - 3.0 * out.A * out.A);
    out.Q = out.A * (out.A * out.A - 3.0 * T * T);
    return out;
}

HVectors h_vectors(const Point4& p, const KnotIndices& k) {
    const double X = p.X, Y = p.Y, Z = p.Z, T = p.T;
    const double n = k.n, m = k.m, l = k.l, s = k.s;
    const double half_pm = (X * X + Y * Y - Z * Z - 1.0 + T * T) / 2.0;
    const double half_pe = (1.0 + X * X - Y * Y - Z * Z - T * T) / 2.0;
    HVectors h;
    h.H1 = {-n * X * Z + m * Y + s * T,
            -n * Y * Z - m * X - l * T * Z,
            n * half_pm + l * T * Y};
    h.H2 = {s * half_pe - m * T * Y,
            s * X * Y - l * Z + m * T * X,
            s * X * Z + l * Y + n * T};
    h.H3 = {-m * X * Z + n * Y + l * T,
            -m * Y * Z - n * X - s * T * Z,
            m * half_pm + s * T * Y};
    h.H4 = {l * half_pe - n * T * Y,
            l * X * Y - s * Z + n * T * X,
            l * X * Z + s * Y + m * T};
    return h;
}

FieldSample field_at(const Point4& p, const KnotIndices& k, const PhysicalScales& s) {
    const APQ v = apq(p.R2(), p.T);
    const double den0 = v.A * v.A + p.T * p.T;
    const double den = den0 * den0 * den0;
    if (den == 0.0 || !std::isfinite(den)) {
        throw_error(ErrorKind::NumericOverflow, "(A^2+T^2)^3 not representable at this point");
    }
    const HVectors h = h_vectors(p, k);
    const double L2 = s.L0 * s.L0;
    const double pb = std::sqrt(s.a) / (std::numbers::pi * L2);
    const double pe = pb * s.c();
    FieldSample out;
    out.E = (pe / den) * (v.Q * h.H4 - v.P * h.H3);
    out.B = (pb / den) * (v.Q * h.H1 + v.P * h.H2);
    out.at = p;
    if (!out.E.finite() || !out.B.finite()) {
        throw_error(ErrorKind::NumericOverflow, "field evaluation produced non-finite components");
    }
    return out;
}

FieldSample initial_fields(const Point4& p, const KnotIndices& k, const PhysicalScales& s) {
    if (p.T != 0.0) {
        throw_error(ErrorKind::NotInitialTime, "initial_fields requires T = 0");
    }
    const double X = p.X, Y = p.Y, Z = p.Z;
    const double n = k.n, m = k.m, l = k.l, ss = k.s;
    const double R2 = p.R2();
    const double L2 = s.L0 * s.L0;
    const double cube = (1.0 + R2) * (1.0 + R2) * (1.0 + R2);
    const double pb = 8.0 * std::sqrt(s.a) / (std::numbers::pi * L2 * cube);
    const double pe = pb * s.c();
    FieldSample out;
    out.E = pe * Vec3{l * (X * X - Y * Y - Z * Z + 1.0) / 2.0,
                      l * X * Y - ss * Z,
                      l * X * Z + ss * Y};
    out.B = pb * Vec3{m * Y - n * X * Z,
                      -m * X - n * Y * Z,
                      n * (X * X + Y * Y - Z * Z - 1.0) / 2.0};
    out.at = p;
    return out;
}

double energy_density(const FieldSample& fs, const PhysicalScales& s) {
    if (s.unit_system == UnitSystem::SI) {
        constexpr double eps0 = 8.8541878128e-12;
        constexpr double mu0 = 1.25663706212e-6;
        return 0.5 * (eps0 * fs.E.norm2() + fs.B.norm2() / mu0);
    }
    return 0.5 * (fs.E.norm2() + fs.B.norm2());
}

Vec3 poynting_classical(const FieldSample& fs, const PhysicalScales& s) {
    if (s.unit_system == UnitSystem::SI) {
        constexpr double mu0 = 1.25663706212e-6;
        return fs.E.cross(fs.B) / mu0;
    }
    return fs.E.cross(fs.B);
}

double MaxwellResidual::max_relative() const {
    const double scale = std::max(field_scale, std::numeric_limits<double>::min());
    double r = std::abs(divE);
    r = std::max(r, std::abs(divB));
    r = std::max(r, faraday.norm());
    r = std::max(r, ampere.norm());
    return r / scale;
}

MaxwellResidual maxwell_residual(const Point4& p, const KnotIndices& k, const PhysicalScales& s,
                                 double h) {
    const double pnorm = std::sqrt(p.R2() + p.T * p.T);
    if (h <= 0.0) h = 1e-4 * std::max(1.0, pnorm);
    const double hmin = 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, pnorm);
    if (h < hmin) {
        throw_error(ErrorKind::StepTooSmall, "finite-difference step below round-off floor");
    }

    // All eight directional derivatives (dE_i/dx_j, dB_i/dx_j and the T
    // derivatives), central differences at step h, with one Richardson level.
    auto derivs = [&](double step, Vec3 dE[4], Vec3 dB[4]) {
        for (int ax = 0; ax < 4; ++ax) {
            Point4 pp = p, pm = p;
            double* cp[] = {&pp.X, &pp.Y, &pp.Z, &pp.T};
            double* cm[] = {&pm.X, &pm.Y, &pm.Z, &pm.T};
            *cp[ax] += step;
            *cm[ax] -= step;
            const FieldSample fp = field_at(pp, k, s);
            const FieldSample fm = field_at(pm, k, s);
            dE[ax] = (fp.E - fm.E) / (2.0 * step);
            dB[ax] = (fp.B - fm.B) / (2.0 * step);
        }
    };
    Vec3 dE1[4], dB1[4], dE2[4], dB2[4];
    derivs(h, dE1, dB1);
    derivs(h / 2.0, dE2, dB2);
    Vec3 dE[4], dB[4];
    for (int ax = 0; ax < 4; ++ax) {
        dE[ax] = (4.0 * dE2[ax] - dE1[ax]) / 3.0;
        dB[ax] = (4.0 * dB2[ax] - dB1[ax]) / 3.0;
    }

    // Natural internal units: the dimensionless Maxwell system is
    // div E = div B = 0, curl E + dB/dT = 0, curl B - dE/dT = 0.
    const double c = s.c();
    MaxwellResidual r;
    r.divE = dE[0].x + dE[1].y + dE[2].z;
    r.divB = dB[0].x + dB[1].y + dB[2].z;
    const Vec3 curlE{dE[1].z - dE[2].y, dE[2].x - dE[0].z, dE[0].y - dE[1].x};
    const Vec3 curlB{dB[1].z - dB[2].y, dB[2].x - dB[0].z, dB[0].y - dB[1].x};
    r.faraday = curlE * (1.0 / c) + dB[3];
    r.ampere = curlB - dE[3] * (1.0 / c);
    r.field_scale = std::max({curlE.norm() / c, dB[3].norm(), curlB.norm(), dE[3].norm() / c,
                              std::abs(dE[0].x) + std::abs(dE[1].y) + std::abs(dE[2].z),
                              std::abs(dB[0].x) + std::abs(dB[1].y) + std::abs(dB[2].z)});
    return r;
}

} // namespace knotfield::fields
