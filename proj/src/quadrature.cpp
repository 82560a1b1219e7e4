#include "knotfield/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace knotfield::quadrature {

namespace {

// Legendre P_n and derivative at x via recurrence.
std::pair<double, double> legendre_pd(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

// Laguerre L_n and derivative at x.
std::pair<double, double> laguerre_pd(int n, double x) {
    double l0 = 1.0, l1 = 1.0 - x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        double l2 = ((2 * k - 1 - x) * l1 - (k - 1) * l0) / k;
        l0 = l1;
        l1 = l2;
    }
    double dl = n * (l1 - l0) / x;
    return {l1, dl};
}

std::mutex cache_mutex;

} // namespace

void QuadratureSpec::validate() const {
    if (radial_order < 8) throw_error(ErrorKind::InvalidConfig, "radial_order must be >= 8");
    if (angular_order < 2) throw_error(ErrorKind::InvalidConfig, "angular_order must be >= 2");
    if (!(radial_scale > 0)) throw_error(ErrorKind::InvalidConfig, "radial_scale must be > 0");
}

void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(order);
        if (it != cache.end()) {
            x = it->second.first;
            w = it->second.second;
            return;
        }
    }
    x.assign(order, 0.0);
    w.assign(order, 0.0);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre_pd(order, xi);
            double dx = p / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, dp] = legendre_pd(order, xi);
        (void)p;
        x[i] = -xi;
        x[order - 1 - i] = xi;
        double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
        w[i] = wi;
        w[order - 1 - i] = wi;
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[order] = {x, w};
}

void gauss_laguerre(int order, std::vector<double>& x, std::vector<double>& w) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(order);
        if (it != cache.end()) {
            x = it->second.first;
            w = it->second.second;
            return;
        }
    }
    x.assign(order, 0.0);
    w.assign(order, 0.0);
    double xi = 0.0;
    for (int i = 0; i < order; ++i) {
        // Stroud-Secrest initial guesses
        if (i == 0) {
            xi = 3.0 / (1.0 + 2.4 * order);
        } else if (i == 1) {
            xi += 15.0 / (1.0 + 2.5 * order);
        } else {
            xi += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (xi - x[i - 2]);
        }
        for (int it = 0; it < 200; ++it) {
            auto [l, dl] = laguerre_pd(order, xi);
            double dx = l / dl;
            xi -= dx;
            if (std::abs(dx) < 1e-14 * std::max(1.0, xi)) break;
        }
        x[i] = xi;
        // weight for weight function e^{-x}: w = x / ((n+1)^2 [L_{n+1}(x)]^2)
        auto [ln1, d1] = laguerre_pd(order + 1, xi);
        (void)d1;
        w[i] = xi / ((order + 1.0) * (order + 1.0) * ln1 * ln1);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[order] = {x, w};
}

std::vector<Node> nodes_k3(int radial_order, int angular_order, double radial_scale) {
    std::vector<double> u, wu, mu, wmu;
    gauss_laguerre(radial_order, u, wu);
    gauss_legendre(angular_order, mu, wmu);
    const int nphi = 2 * angular_order + 1;
    const double dphi = 2.0 * std::numbers::pi / nphi;

    std::vector<Node> nodes;
    nodes.reserve(static_cast<size_t>(radial_order) * angular_order * nphi);
    for (int i = 0; i < radial_order; ++i) {
        const double K = u[i] / radial_scale;
        // measure K^2 dK = (u/s)^2 du/s ; Laguerre handles e^{-u}, so put e^{+u}
        // back: the integrand still carries its own envelope e^{-s K} = e^{-u}.
        const double wr = wu[i] * std::exp(u[i]) * K * K / radial_scale;
        for (int j = 0; j < angular_order; ++j) {
            const double st = std::sqrt(std::max(0.0, 1.0 - mu[j] * mu[j]));
            for (int p = 0; p < nphi; ++p) {
                const double phi = dphi * (p + 0.5);
                nodes.push_back({{K * st * std::cos(phi), K * st * std::sin(phi), K * mu[j]},
                                 wr * wmu[j] * dphi});
            }
        }
    }
    return nodes;
}

namespace {

double sum_rule(const std::function<double(const Vec3&)>& f, int radial, int angular,
                 double scale, int& nodes_used) {
    auto nodes = nodes_k3(radial, angular, scale);
    nodes_used = static_cast<int>(nodes.size());
    double acc = 0.0;
    for (const auto& nd : nodes) acc += nd.weight * f(nd.K);
    return acc;
}

} // namespace

QuadResult integrate_k3(const std::function<double(const Vec3&)>& f, const QuadratureSpec& spec) {
    spec.validate();
    int radial = spec.radial_order;
    int angular = spec.angular_order;
    QuadResult res;
    for (;;) {
        int n1 = 0, n2 = 0;
        const double v1 = sum_rule(f, radial, angular, spec.radial_scale, n1);
        const double v2 = sum_rule(f, radial + 4, angular + 4, spec.radial_scale, n2);
        res.value = v2;
        res.error_estimate = std::abs(v2 - v1);
        res.nodes_used = n1 + n2;
        if (res.error_estimate <= spec.abs_tol + spec.rel_tol * std::abs(v2)) return res;
        if (radial + 8 > spec.max_radial_order) {
            throw_error(ErrorKind::NoConvergence,
                        "error estimate " + std::to_string(res.error_estimate) +
                            " above tolerance at radial order " + std::to_string(radial + 4));
        }
        radial += 8;
        angular += 8;
    }
}

double angular_moment(int px, int py, int pz) {
    if (px < 0 || py < 0 || pz < 0 || px + py + pz > 8) {
        throw_error(ErrorKind::UnsupportedDegree, "monomial degree must be <= 8");
    }
    if (px % 2 || py % 2 || pz % 2) return 0.0;
    auto dfact = [](int k) { // (k-1)!! with (-1)!! = 1
        double r = 1.0;
        for (int v = k - 1; v > 1; v -= 2) r *= v;
        return r;
    };
    const int d = px + py + pz;
    return 4.0 * std::numbers::pi * dfact(px) * dfact(py) * dfact(pz) / dfact(d + 2);
}

Panel1D panel_rule(const std::vector<double>& edges, int order_per_panel) {
    std::vector<double> gx, gw;
    gauss_legendre(order_per_panel, gx, gw);
    Panel1D out;
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e], b = edges[e + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < order_per_panel; ++i) {
            out.x.push_back(mid + half * gx[i]);
            out.w.push_back(half * gw[i]);
        }
    }
    return out;
}

} // namespace knotfield::quadrature
