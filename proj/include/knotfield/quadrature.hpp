#pragma once

#include "knotfield/errors.hpp"
#include "knotfield/vec3.hpp"

#include <functional>
#include <vector>

namespace knotfield::quadrature {

/// Product rule for integrals over R^3 of smooth integrands carrying an
/// exponential radial envelope: Gauss-Laguerre in the radius (after the
/// substitution u = radial_scale*K, so radial_scale matches the envelope
/// e^{-radial_scale*K}), Gauss-Legendre in cos(theta), uniform in phi.
struct QuadratureSpec {
    int radial_order = 16;    // >= 8
    int angular_order = 8;    // Legendre points in mu; phi count = 2*angular_order + 1
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double radial_scale = 2.0;
    int max_radial_order = 64;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int nodes_used = 0;
};

struct Node {
    Vec3 K;
    double weight; // includes K^2 measure and the e^{+radial_scale*K} envelope compensation
};

/// Nodes/weights such that  sum_i w_i f(K_i) ~ int_{R^3} f(K) d^3K  for
/// integrands decaying like e^{-radial_scale*K} * poly.
std::vector<Node> nodes_k3(int radial_order, int angular_order, double radial_scale);

QuadResult integrate_k3(const std::function<double(const Vec3&)>& f, const QuadratureSpec& spec);

/// Exact integral over the unit sphere of Khat_x^px * Khat_y^py * Khat_z^pz.
double angular_moment(int px, int py, int pz);

// 1D Gauss rules (exposed for reuse and for oracle tests)
void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w);
void gauss_laguerre(int order, std::vector<double>& x, std::vector<double>& w);

/// Composite Gauss-Legendre panels over [a,b]; panel edges given.
struct Panel1D {
    std::vector<double> x, w;
};
Panel1D panel_rule(const std::vector<double>& edges, int order_per_panel);

} // namespace knotfield::quadrature
