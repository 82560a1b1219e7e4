#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knotfield/fields.hpp"
#include "knotfield/observables.hpp"
#include "knotfield/quantumstate.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace knotfield;
using namespace knotfield::quantumstate;

namespace {
constexpr double kPi = std::numbers::pi;
const PhysicalScales kNat = PhysicalScales::natural();

// brute-force 3D product-rule evaluation of the mode integral behind e_plus
Vec3C e_plus_bruteforce(const CorrelationPoint& p, const KnotIndices& k, const PhysicalScales& s,
                        AmplitudeModel model) {
    const KnotIndices ki = model == AmplitudeModel::ClosedForm
                               ? k
                               : KnotIndices::unchecked(k.m, -k.n, -k.l, k.s);
    const double C = model == AmplitudeModel::ClosedForm
                         ? std::sqrt(s.a) / (std::pow(2.0, 1.5) * kPi * kPi)
                         : 2.0 * kPi * std::sqrt(s.a);
    const auto nodes = quadrature::nodes_k3(48, 48, 1.0);
    Vec3C acc;
    for (const auto& nd : nodes) {
        const double Kmag = nd.K.norm();
        const Vec3C w = spectral::w_vector(nd.K, ki);
        const double phase = nd.K.dot(p.X) - Kmag * p.T;
        const Complex osc(std::cos(phase), std::sin(phase));
        acc += (nd.weight * std::exp(-Kmag)) * osc * w;
    }
    const Complex i1(0, 1);
    return (i1 * C / 2.0 / std::pow(2.0 * kPi, 3)) * acc;
}
} // namespace

TEST_CASE("e_plus agrees with the brute-force mode integral") {
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    for (const auto& model : {AmplitudeModel::ClosedForm, AmplitudeModel::FieldConsistent}) {
        EplusOptions opts;
        opts.model = model;
        for (const CorrelationPoint p :
             {CorrelationPoint{{0.0, 0.0, 0.0}, 0.0}, CorrelationPoint{{1.2, -0.7, 0.4}, 0.3},
              CorrelationPoint{{-0.5, 0.8, 1.5}, -0.6}}) {
            const Vec3C fast = e_plus(p, k, kNat, opts);
            const Vec3C slow = e_plus_bruteforce(p, k, kNat, model);
            CHECK((fast - slow).norm() < 1e-8 * (1.0 + slow.norm()));
        }
    }
}

TEST_CASE("2 Re E+ reconstructs the classical field (field-consistent amplitudes)") {
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    EplusOptions opts;
    opts.model = AmplitudeModel::FieldConsistent;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.5, 2.5), ut(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i) {
        const Vec3 x{u(rng), u(rng), u(rng)};
        const double T = ut(rng);
        const Vec3 rebuilt = 2.0 * e_plus({x, T}, k, kNat, opts).real();
        const auto fs = fields::field_at({x.x, x.y, x.z, T}, k, kNat);
        worst = std::max(worst, (rebuilt - fs.E).norm() / fs.E.norm());
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("e_plus decays in the far zone") {
    const KnotIndices k = hopfion_indices();
    const double at0 = e_plus({{0, 0, 0}, 0.0}, k, kNat).norm();
    const double far = e_plus({{50.0, 0, 0}, 0.0}, k, kNat).norm();
    CHECK(far < 1e-6 * at0);
}

TEST_CASE("e_plus scales with sqrt(a) and vanishes in the zero-field limit") {
    const KnotIndices k = hopfion_indices();
    const CorrelationPoint p{{0.4, -0.2, 0.9}, 0.2};
    const double base = e_plus(p, k, kNat).norm();
    PhysicalScales s4 = kNat;
    s4.a = 4.0;
    CHECK(e_plus(p, k, s4).norm() == doctest::Approx(2.0 * base).epsilon(1e-12));
    PhysicalScales tiny = kNat;
    tiny.a = 1e-30;
    CHECK(e_plus(p, k, tiny).norm() < 1e-10 * base);
}

TEST_CASE("g1 normalization, bound, and depolarization") {
    const KnotIndices k = hopfion_indices();
    const CorrelationPoint x{{0.3, 0.1, -0.2}, 0.0};
    CHECK(std::abs(g1(x, x, k, kNat)) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double min_g1 = 1.0, max_g1 = 0.0;
    for (int i = 0; i < 25; ++i) {
        const CorrelationPoint a{{u(rng), u(rng), u(rng)}, 0.3 * u(rng)};
        const CorrelationPoint b{{u(rng), u(rng), u(rng)}, 0.3 * u(rng)};
        const double v = std::abs(g1(a, b, k, kNat));
        min_g1 = std::min(min_g1, v);
        max_g1 = std::max(max_g1, v);
    }
    CHECK(max_g1 <= 1.0 + 1e-12);
    CHECK(min_g1 < 1.0 - 1e-3); // polarization direction varies with position
}

TEST_CASE("g2 is identically one") {
    const KnotIndices k = hopfion_indices();
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 10; ++i) {
        const CorrelationPoint a{{u(rng), u(rng), u(rng)}, 0.2 * u(rng)};
        const CorrelationPoint b{{u(rng), u(rng), u(rng)}, 0.2 * u(rng)};
        CHECK(g2(a, b, k, kNat) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g2(a, a, k, kNat) == doctest::Approx(1.0).epsilon(1e-14));
    }
    // independent of a
    PhysicalScales s9 = kNat;
    s9.a = 9.0;
    const CorrelationPoint a{{0.5, 0.5, 0.5}, 0.0};
    const CorrelationPoint b{{-0.5, 0.2, 0.1}, 0.4};
    CHECK(g2(a, b, k, s9) == doctest::Approx(g2(a, b, k, kNat)).epsilon(1e-13));
}

TEST_CASE("zero intensity is rejected") {
    // the zero-field limit: with a at the smallest denormal, |E+|^2
    // underflows to exactly zero and the guard must fire
    PhysicalScales dead = kNat;
    dead.a = 5e-324;
    const KnotIndices k = hopfion_indices();
    const CorrelationPoint x{{0.0, 0.0, 0.0}, 0.0};
    CHECK_THROWS_AS(g1(x, x, k, dead), Error);
    try {
        g2(x, x, k, dead);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroIntensity);
    }
}

TEST_CASE("mode statistics are Poissonian") {
    const auto ms = ModeSet::build(hopfion_indices(), kNat);
    REQUIRE(ms.size() > 0);
    size_t idx = 0;
    double best = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) {
        const double n = std::norm(ms.mode(i).amplitude);
        if (n > best) {
            best = n;
            idx = i;
        }
    }
    const auto st = mode_statistics(ms, idx);
    CHECK(st.mean == doctest::Approx(best));
    CHECK(st.variance == doctest::Approx(st.mean));
    CHECK(st.fano == doctest::Approx(1.0));

    // sampled statistics agree within 3 sigma
    const int draws = 100000;
    const auto sampled = sampled_statistics(ms, idx, draws, 42);
    const double sigma = std::sqrt(st.mean / draws);
    CHECK(std::abs(sampled.mean - st.mean) < 3.0 * sigma);
    CHECK(sampled.fano == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("vacuum-limit mode statistics are zero") {
    ModeStatistics st;
    const auto ms = ModeSet::build(hopfion_indices(), kNat);
    // the hopfion has exact zeros of alpha_+ on the +z axis; find a tiny one
    size_t idx = 0;
    double smallest = 1e300;
    for (size_t i = 0; i < ms.size(); ++i) {
        const double n = std::norm(ms.mode(i).amplitude);
        if (n < smallest) {
            smallest = n;
            idx = i;
        }
    }
    st = mode_statistics(ms, idx);
    CHECK(st.mean == doctest::Approx(st.variance));
    CHECK(st.fano <= 1.0);
}

TEST_CASE("quadrature uncertainties are minimal") {
    const auto ms = ModeSet::build(hopfion_indices(), kNat);
    for (size_t i = 0; i < ms.size(); i += ms.size() / 11 + 1) {
        const auto u = quadrature_uncertainties(ms, i);
        CHECK(u.var_x == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(u.var_p == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(u.product == doctest::Approx(0.5).epsilon(1e-13));
        const Complex a = ms.mode(i).amplitude;
        CHECK(u.mean_x == doctest::Approx(std::sqrt(2.0) * a.real()));
        CHECK(u.mean_p == doctest::Approx(std::sqrt(2.0) * a.imag()));
    }
}

TEST_CASE("evolution is a pure phase") {
    const auto ms = ModeSet::build(KnotIndices::validated(2, 3, 1, 1), kNat);
    const auto evolved = ms.evolved(0.7);
    REQUIRE(evolved.size() == ms.size());
    for (size_t i = 0; i < ms.size(); i += 97) {
        CHECK(std::abs(evolved.mode(i).amplitude) ==
              doctest::Approx(std::abs(ms.mode(i).amplitude)).epsilon(1e-14));
    }
    // full period for omega * t = 2 pi
    const auto full = ms.evolved(2.0 * kPi);
    for (size_t i = 0; i < ms.size(); ++i) {
        if (std::abs(ms.mode(i).K.norm() - 1.0) < 1e-9) {
            CHECK(std::abs(full.mode(i).amplitude - ms.mode(i).amplitude) < 1e-12);
        }
    }
    // composition law
    const auto two_step = ms.evolved(0.3).evolved(0.4);
    for (size_t i = 0; i < ms.size(); i += 211) {
        CHECK(std::abs(two_step.mode(i).amplitude - evolved.mode(i).amplitude) < 1e-13);
    }
}

TEST_CASE("mode-set totals match their gamma reductions") {
    // with the closed-form amplitudes: sum w |alpha|^2 = a Sigma/(128 pi^6),
    // sum w omega |alpha|^2 = a Sigma/(64 pi^6),
    // helicity = -a (nm+ls)/(64 pi^6) (= the observables-module value)
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    const auto ms = ModeSet::build(k, kNat);
    const double sigma = k.sum_of_squares();
    const double p6 = std::pow(kPi, 6);
    CHECK(ms.total_photon_number() == doctest::Approx(sigma / (128.0 * p6)).epsilon(1e-10));
    CHECK(ms.total_energy() == doctest::Approx(sigma / (64.0 * p6)).epsilon(1e-10));
    CHECK(ms.spin_helicity() ==
          doctest::Approx(observables::spin_helicity_expectation(k, kNat).value).epsilon(1e-9));
}
