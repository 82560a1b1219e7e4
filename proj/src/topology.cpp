#include "knotfield/topology.hpp"

#include "knotfield/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace knotfield::topology {

namespace {

constexpr double kPi = std::numbers::pi;

// Dormand-Prince 5(4) coefficients
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

} // namespace

double Curve::min_distance_to(const Curve& other) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points)
        for (const auto& q : other.points) best = std::min(best, (p - q).norm());
    return best;
}

Curve trace_fieldline(FieldKind which, const Vec3& seed, const KnotIndices& k,
                      const PhysicalScales& s, const TraceOptions& opts) {
    const double field_scale = std::sqrt(s.a) / (kPi * s.L0 * s.L0);
    const double null_threshold = opts.null_threshold_rel * field_scale;

    auto tangent = [&](const Vec3& x) -> Vec3 {
        const fields::FieldSample fs = fields::field_at({x.x, x.y, x.z, 0.0}, k, s);
        const Vec3 f = which == FieldKind::B ? fs.B : fs.E;
        const double n = f.norm();
        if (n < null_threshold) {
            throw_error(ErrorKind::NullFieldRegion,
                        "|field| = " + std::to_string(n) + " below the null threshold");
        }
        return f / n;
    };

    Curve curve;
    curve.points.push_back(seed);
    curve.arc.push_back(0.0);

    Vec3 x = seed;
    Vec3 k1 = tangent(x);
    const Vec3 seed_tangent = k1;
    double h = 1e-3;
    double arc = 0.0;
    const double tol = opts.rel_tol;

    for (long step = 0; arc < opts.max_arc && step < opts.max_steps; ++step) {
        h = std::min(h, opts.max_step);
        // shrink steps while approaching the seed so closure cannot be jumped
        const double dseed = (x - seed).norm();
        if (arc > opts.min_arc && dseed < 0.25) h = std::min(h, std::max(dseed * 0.5, 1e-7));

        const Vec3 k2 = tangent(x + h * (A21 * k1));
        const Vec3 k3 = tangent(x + h * (A31 * k1 + A32 * k2));
        const Vec3 k4 = tangent(x + h * (A41 * k1 + A42 * k2 + A43 * k3));
        const Vec3 k5 = tangent(x + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
        const Vec3 k6 = tangent(x + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
        const Vec3 xn = x + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
        const Vec3 k7 = tangent(xn);
        const Vec3 err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
        const double enorm = err.norm() / (tol * (1.0 + xn.norm()));

        if (enorm <= 1.0) {
            x = xn;
            k1 = k7; // FSAL
            arc += h;
            curve.points.push_back(x);
            curve.arc.push_back(arc);
            if (arc > opts.min_arc) {
                const double d = (x - seed).norm();
                if (d < opts.closure_tol && k1.dot(seed_tangent) > 0.5) {
                    curve.closed = true;
                    curve.closure_gap = d;
                    curve.arc_length = arc;
                    // close the polyline exactly
                    curve.points.push_back(seed);
                    curve.arc.push_back(arc + d);
                    return curve;
                }
            }
        }
        const double grow = enorm > 0.0 ? 0.9 * std::pow(enorm, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
        h = std::max(h, 1e-9);
    }
    curve.closed = false;
    curve.arc_length = arc;
    curve.closure_gap = (x - seed).norm();
    return curve;
}

WindingCount winding_numbers(const Curve& c) {
    if (!c.closed) throw_error(ErrorKind::NotClosed, "winding counts need a closed curve");
    double phi_acc = 0.0, psi_acc = 0.0;
    double phi_prev = std::atan2(c.points[0].y, c.points[0].x);
    const double rho0 = std::hypot(c.points[0].x, c.points[0].y);
    double psi_prev = std::atan2(c.points[0].z, rho0 - 1.0);
    for (size_t i = 1; i < c.points.size(); ++i) {
        const Vec3& p = c.points[i];
        const double phi = std::atan2(p.y, p.x);
        double dphi = phi - phi_prev;
        if (dphi > kPi) dphi -= 2.0 * kPi;
        if (dphi < -kPi) dphi += 2.0 * kPi;
        phi_acc += dphi;
        phi_prev = phi;

        const double rho = std::hypot(p.x, p.y);
        const double psi = std::atan2(p.z, rho - 1.0);
        double dpsi = psi - psi_prev;
        if (dpsi > kPi) dpsi -= 2.0 * kPi;
        if (dpsi < -kPi) dpsi += 2.0 * kPi;
        psi_acc += dpsi;
        psi_prev = psi;
    }
    WindingCount out;
    const double wt = phi_acc / (2.0 * kPi);
    const double wp = psi_acc / (2.0 * kPi);
    out.toroidal = static_cast<int>(std::lround(wt));
    out.poloidal = static_cast<int>(std::lround(wp));
    out.residual = std::max(std::abs(wt - out.toroidal), std::abs(wp - out.poloidal));
    if (out.residual > 0.1) {
        throw_error(ErrorKind::AmbiguousWinding,
                    "winding residual " + std::to_string(out.residual));
    }
    return out;
}

LinkingResult linking_number(const Curve& a, const Curve& b) {
    if (!a.closed || !b.closed) throw_error(ErrorKind::NotClosed, "linking needs closed curves");
    if (a.min_distance_to(b) <= 1e-3) {
        throw_error(ErrorKind::CurvesTooClose, "curves closer than 1e-3");
    }
    double acc = 0.0;
    const size_t na = a.points.size() - 1, nb = b.points.size() - 1;
    for (size_t i = 0; i < na; ++i) {
        const Vec3 ta = a.points[i + 1] - a.points[i];
        const Vec3 ma = 0.5 * (a.points[i + 1] + a.points[i]);
        for (size_t j = 0; j < nb; ++j) {
            const Vec3 tb = b.points[j + 1] - b.points[j];
            const Vec3 mb = 0.5 * (b.points[j + 1] + b.points[j]);
            const Vec3 r = ma - mb;
            const double d = r.norm();
            acc += ta.cross(tb).dot(r) / (d * d * d);
        }
    }
    LinkingResult out;
    out.raw = acc / (4.0 * kPi);
    out.value = static_cast<int>(std::lround(out.raw));
    out.residual = std::abs(out.raw - out.value);
    // reject rather than silently round a poorly converged integral
    if (out.residual > 0.05) {
        throw_error(ErrorKind::AmbiguousWinding,
                    "gauss integral residual " + std::to_string(out.residual) +
                        " (refine the segment budget)");
    }
    return out;
}

Curve resample(const Curve& c, int segments) {
    Curve out;
    out.closed = c.closed;
    out.arc_length = c.arc_length;
    out.closure_gap = c.closure_gap;
    const double total = c.arc.back();
    out.points.reserve(segments + 1);
    out.arc.reserve(segments + 1);
    size_t j = 0;
    for (int i = 0; i <= segments; ++i) {
        const double target = total * i / segments;
        while (j + 1 < c.arc.size() && c.arc[j + 1] < target) ++j;
        if (j + 1 >= c.points.size()) {
            out.points.push_back(c.points.back());
            out.arc.push_back(total);
            continue;
        }
        const double span = c.arc[j + 1] - c.arc[j];
        const double w = span > 0.0 ? (target - c.arc[j]) / span : 0.0;
        out.points.push_back(c.points[j] + w * (c.points[j + 1] - c.points[j]));
        out.arc.push_back(target);
    }
    if (c.closed) out.points.back() = c.points.front();
    return out;
}

Curve make_circle(const Vec3& center, const Vec3& normal, double radius, int segments) {
    const Vec3 nz = normal.normalized();
    Vec3 u = std::abs(nz.z) < 0.9 ? Vec3{0, 0, 1}.cross(nz) : Vec3{1, 0, 0}.cross(nz);
    u = u.normalized();
    const Vec3 v = nz.cross(u);
    Curve c;
    c.closed = true;
    c.arc_length = 2.0 * kPi * radius;
    for (int i = 0; i <= segments; ++i) {
        const double t = 2.0 * kPi * i / segments;
        c.points.push_back(center + radius * (std::cos(t) * u + std::sin(t) * v));
        c.arc.push_back(radius * t);
    }
    c.points.back() = c.points.front();
    return c;
}

} // namespace knotfield::topology
