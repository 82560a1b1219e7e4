#pragma once

#include "knotfield/errors.hpp"
#include "knotfield/vec3.hpp"

namespace knotfield {

inline constexpr double kSpeedOfLightSI = 299792458.0; // m/s

enum class UnitSystem { Natural, SI };

/// The four positive integers (n,m),(l,s) labeling a solution. Both pairs
/// must be coprime; use validated() for user input, unchecked() only for
/// internal superposition tests that exploit linearity in the indices.
struct KnotIndices {
    int n = 1, m = 1, l = 1, s = 1;

    static KnotIndices validated(int n, int m, int l, int s);
    static KnotIndices unchecked(int n, int m, int l, int s) { return {n, m, l, s}; }

    int sum_of_squares() const { return n * n + m * m + l * l + s * s; }
    int helicity_combination() const { return m * n + l * s; }
    bool operator==(const KnotIndices&) const = default;
};

inline KnotIndices hopfion_indices() { return {1, 1, 1, 1}; }

/// Field intensity constant a and length scale L0. All internal computation
/// is in natural units (hbar = c = eps0 = mu0 = 1) on dimensionless
/// coordinates; a and L0 enter only as explicit prefactors, and SI values
/// attach at the I/O boundary.
struct PhysicalScales {
    double a = 1.0;
    double L0 = 1.0;
    UnitSystem unit_system = UnitSystem::Natural;

    static PhysicalScales natural(double a = 1.0, double L0 = 1.0);
    static PhysicalScales si(double a, double L0);

    double c() const { return unit_system == UnitSystem::SI ? kSpeedOfLightSI : 1.0; }
    void validate() const;
};

/// Dimensionless spacetime point: (X,Y,Z) = x/L0, T = ct/L0.
struct Point4 {
    double X = 0.0, Y = 0.0, Z = 0.0, T = 0.0;

    double R2() const { return X * X + Y * Y + Z * Z; }
    Vec3 spatial() const { return {X, Y, Z}; }
};

KnotIndices validate_indices(int n, int m, int l, int s);

Point4 to_dimensionless(const Vec3& x, double t, const PhysicalScales& scales);

struct SpacetimePoint {
    Vec3 x;
    double t = 0.0;
};

SpacetimePoint from_dimensionless(const Point4& p, const PhysicalScales& scales);

} // namespace knotfield
