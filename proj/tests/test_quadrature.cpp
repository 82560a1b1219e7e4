#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knotfield/quadrature.hpp"
#include "knotfield/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace knotfield;
using namespace knotfield::quadrature;

namespace {
constexpr double kPi = std::numbers::pi;

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}
} // namespace

TEST_CASE("gauss rules reproduce moments") {
    std::vector<double> x, w;
    gauss_laguerre(16, x, w);
    for (int p = 0; p <= 8; ++p) {
        double acc = 0.0;
        for (size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], p);
        CHECK(acc == doctest::Approx(factorial(p)).epsilon(1e-12));
    }
    gauss_legendre(12, x, w);
    for (int p = 0; p <= 10; p += 2) {
        double acc = 0.0;
        for (size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], p);
        CHECK(acc == doctest::Approx(2.0 / (p + 1)).epsilon(1e-12));
    }
}

TEST_CASE("plain gaussian envelope integrates to pi") {
    // 4 pi int K^2 e^{-2K} dK = 4 pi * 2/8 = pi
    const auto r = integrate_k3([](const Vec3& K) { return std::exp(-2.0 * K.norm()); }, {});
    CHECK(r.value == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(r.error_estimate < 1e-10);
}

TEST_CASE("K-weighted envelope integrates to 3 pi / 2") {
    const auto r = integrate_k3(
        [](const Vec3& K) {
            const double k = K.norm();
            return k * std::exp(-2.0 * k);
        },
        {});
    CHECK(r.value == doctest::Approx(1.5 * kPi).epsilon(1e-12));
}

TEST_CASE("hopfion spectral moment equals 20 pi") {
    // Independent reduction: int dOmega |W|^2 = (8 pi/3) K^2 (n^2+m^2+l^2+s^2)
    // (angular_moment oracle), then int K^5 e^{-2K} dK = 5!/2^6.
    const KnotIndices hop = hopfion_indices();
    const double sigma = hop.sum_of_squares();
    const double angular = angular_moment(0, 0, 0) - angular_moment(0, 0, 2);
    CHECK(angular == doctest::Approx(8.0 * kPi / 3.0));
    const double expected = angular * sigma * (factorial(5) / 64.0);
    CHECK(expected == doctest::Approx(20.0 * kPi).epsilon(1e-14));

    const auto r = integrate_k3(
        [&](const Vec3& K) {
            const double k = K.norm();
            return k * std::exp(-2.0 * k) * spectral::w_norm_sq(K, hop);
        },
        {});
    CHECK(r.value == doctest::Approx(20.0 * kPi).epsilon(1e-10));
}

TEST_CASE("odd integrands cancel") {
    const auto r = integrate_k3(
        [](const Vec3& K) { return K.y * std::exp(-2.0 * K.norm()); }, {});
    CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("exactness against the angular moment oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> deg(0, 2);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        const int px = deg(rng), py = deg(rng), pz = deg(rng);
        const double c = coef(rng);
        const int radial_degree = px + py + pz + 2; // + K^2 measure
        auto f = [&](const Vec3& K) {
            const double k = K.norm();
            return c * std::pow(K.x, px) * std::pow(K.y, py) * std::pow(K.z, pz) *
                   std::exp(-2.0 * k);
        };
        // exact: c * angular_moment * int K^{px+py+pz+2} e^{-2K} dK / ... the
        // monomial in components = K^(p) * Khat monomial
        const double radial = factorial(radial_degree) / std::pow(2.0, radial_degree + 1);
        const double exact = c * angular_moment(px, py, pz) * radial;
        const auto r = integrate_k3(f, {});
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));
    }
}

TEST_CASE("angular moments") {
    CHECK(angular_moment(0, 0, 0) == doctest::Approx(4.0 * kPi));
    CHECK(angular_moment(0, 0, 2) == doctest::Approx(4.0 * kPi / 3.0));
    CHECK(angular_moment(0, 1, 0) == 0.0);
    CHECK(angular_moment(2, 2, 0) == doctest::Approx(4.0 * kPi / 15.0));
    CHECK_THROWS_AS(angular_moment(4, 4, 2), Error);
}

TEST_CASE("error estimate shrinks with order for non-polynomial integrands") {
    // W-based integrands are exact at every order, so probe with a radial
    // oscillation the low-order rule genuinely misses
    auto f = [&](const Vec3& K) {
        const double kk = K.norm();
        return std::cos(2.7 * kk) * std::exp(-2.0 * kk);
    };
    QuadratureSpec lo;
    lo.radial_order = 8;
    lo.angular_order = 4;
    lo.rel_tol = 1.0; // no escalation, probe the raw estimate
    QuadratureSpec hi;
    hi.radial_order = 24;
    hi.rel_tol = 1.0;
    const auto rlo = integrate_k3(f, lo);
    const auto rhi = integrate_k3(f, hi);
    CHECK(rhi.error_estimate < rlo.error_estimate);
}

TEST_CASE("spec validation") {
    QuadratureSpec bad;
    bad.radial_order = 4;
    CHECK_THROWS_AS(integrate_k3([](const Vec3&) { return 1.0; }, bad), Error);
}

TEST_CASE("no convergence is reported at max order") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-14;
    tight.abs_tol = 0.0;
    tight.max_radial_order = 20;
    auto f = [](const Vec3& K) {
        const double k = K.norm();
        return std::cos(40.0 * k) * std::exp(-2.0 * k);
    };
    try {
        integrate_k3(f, tight);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoConvergence);
    }
}
