#include "knotfield/core.hpp"

#include <numeric>
#include <string>

namespace knotfield {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonPositive: return "NonPositive";
        case ErrorKind::NotCoprime: return "NotCoprime";
        case ErrorKind::NotInitialTime: return "NotInitialTime";
        case ErrorKind::NumericOverflow: return "NumericOverflow";
        case ErrorKind::StepTooSmall: return "StepTooSmall";
        case ErrorKind::ZeroWaveVector: return "ZeroWaveVector";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::DomainTooSmall: return "DomainTooSmall";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
        case ErrorKind::NullFieldRegion: return "NullFieldRegion";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::AmbiguousWinding: return "AmbiguousWinding";
        case ErrorKind::CurvesTooClose: return "CurvesTooClose";
        case ErrorKind::ZeroIntensity: return "ZeroIntensity";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::UsageError: return "UsageError";
    }
    return "Error";
}

KnotIndices KnotIndices::validated(int n, int m, int l, int s) {
    if (n <= 0 || m <= 0 || l <= 0 || s <= 0) {
        throw_error(ErrorKind::NonPositive,
                    "knot indices must be strictly positive, got (" + std::to_string(n) + "," +
                        std::to_string(m) + "," + std::to_string(l) + "," + std::to_string(s) + ")");
    }
    if (std::gcd(n, m) != 1) {
        throw_error(ErrorKind::NotCoprime, "gcd(n,m) = " + std::to_string(std::gcd(n, m)));
    }
    if (std::gcd(l, s) != 1) {
        throw_error(ErrorKind::NotCoprime, "gcd(l,s) = " + std::to_string(std::gcd(l, s)));
    }
    return {n, m, l, s};
}

KnotIndices validate_indices(int n, int m, int l, int s) {
    return KnotIndices::validated(n, m, l, s);
}

PhysicalScales PhysicalScales::natural(double a, double L0) {
    PhysicalScales out{a, L0, UnitSystem::Natural};
    out.validate();
    return out;
}

PhysicalScales PhysicalScales::si(double a, double L0) {
    PhysicalScales out{a, L0, UnitSystem::SI};
    out.validate();
    return out;
}

void PhysicalScales::validate() const {
    if (!(a > 0.0)) throw_error(ErrorKind::NonPositive, "field constant a must be > 0");
    if (!(L0 > 0.0)) throw_error(ErrorKind::NonPositive, "length scale L0 must be > 0");
}

Point4 to_dimensionless(const Vec3& x, double t, const PhysicalScales& scales) {
    scales.validate();
    return {x.x / scales.L0, x.y / scales.L0, x.z / scales.L0, scales.c() * t / scales.L0};
}

SpacetimePoint from_dimensionless(const Point4& p, const PhysicalScales& scales) {
    scales.validate();
    return {{p.X * scales.L0, p.Y * scales.L0, p.Z * scales.L0}, p.T * scales.L0 / scales.c()};
}

} // namespace knotfield
