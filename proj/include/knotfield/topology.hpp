#pragma once

#include "knotfield/core.hpp"

#include <vector>

namespace knotfield::topology {

enum class FieldKind { E, B };

struct Curve {
    std::vector<Vec3> points;
    std::vector<double> arc; // arc length at each point
    bool closed = false;
    double arc_length = 0.0;
    double closure_gap = 0.0; // distance from last point to seed at detection

    double min_distance_to(const Curve& other) const;
};

struct TraceOptions {
    double rel_tol = 1e-9;     // integrator tolerance on the unit tangent field
    double closure_tol = 1e-4; // accept closure when within this of the seed
    double min_arc = 1.0;      // ignore the seed neighborhood before this arc length
    double max_arc = 1000.0;
    double max_step = 0.2;
    double null_threshold_rel = 1e-10; // relative to sqrt(a)/(pi L0^2)
    long max_steps = 5'000'000;
};

/// Arc-length integration of dX/ds = F/|F| with adaptive Dormand-Prince 5(4).
/// Terminates on closure (the curve re-enters closure_tol of the seed with an
/// aligned tangent after min_arc) or on max_arc (closed = false; reported,
/// not fatal). Throws NullFieldRegion if |F| drops below the null threshold.
Curve trace_fieldline(FieldKind which, const Vec3& seed, const KnotIndices& k,
                      const PhysicalScales& s, const TraceOptions& opts = {});

struct WindingCount {
    int toroidal = 0;  // about the Z axis
    int poloidal = 0;  // about the unit circle in the Z = 0 plane
    double residual = 0.0;
};

/// Accumulated-angle winding counts in the torus frame fixed by the solution
/// family (Z axis; core = unit circle in the Z = 0 plane). Throws NotClosed /
/// AmbiguousWinding (rounding residual > 0.1).
WindingCount winding_numbers(const Curve& c);

struct LinkingResult {
    int value = 0;
    double raw = 0.0;
    double residual = 0.0;
};

/// Gauss double line integral by the midpoint rule over polyline segments.
/// Curves must be closed and separated by more than 1e-3.
LinkingResult linking_number(const Curve& a, const Curve& b);

/// Uniform arc-length resampling (closed polyline) to meet a segment budget.
Curve resample(const Curve& c, int segments);

/// Circle helper used by tests and the canonical examples.
Curve make_circle(const Vec3& center, const Vec3& normal, double radius, int segments);

} // namespace knotfield::topology
