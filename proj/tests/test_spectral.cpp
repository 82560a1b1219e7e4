#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knotfield/fields.hpp"
#include "knotfield/spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace knotfield;
using namespace knotfield::spectral;

namespace {
constexpr double kPi = std::numbers::pi;

KnotIndices random_indices(std::mt19937_64& rng, int max_entry) {
    std::uniform_int_distribution<int> d(1, max_entry);
    for (;;) {
        const int n = d(rng), m = d(rng), l = d(rng), s = d(rng);
        if (std::gcd(n, m) == 1 && std::gcd(l, s) == 1) return KnotIndices::unchecked(n, m, l, s);
    }
}
} // namespace

TEST_CASE("w_vector on the coordinate axes") {
    const KnotIndices k = KnotIndices::validated(2, 3, 4, 1);
    const double K0 = 1.7;

    const Vec3C wz = w_vector({0, 0, K0}, k);
    CHECK(wz.x == Complex(0.0, k.l * K0));
    CHECK(wz.y == Complex(k.s * K0, 0.0));
    CHECK(std::abs(wz.z) < 1e-15);

    const Vec3C wx = w_vector({K0, 0, 0}, k);
    CHECK(std::abs(wx.x) < 1e-15);
    CHECK(wx.y == Complex(0.0, -k.m * K0));
    CHECK(wx.z == Complex(-k.n * K0, 0.0));

    const Vec3C w0 = w_vector({0, 0, 0}, k);
    CHECK(w0.norm() == 0.0);
}

TEST_CASE("w_norm_sq closed form matches the componentwise norm") {
    // the axis value the closed form must reproduce: |W(0,0,1)|^2 = 2 for the
    // hopfion (the componentwise norm of (i, 1, 0) adjudicates)
    const KnotIndices hop = hopfion_indices();
    CHECK(w_norm_sq({0, 0, 1}, hop) == doctest::Approx(2.0));
    CHECK(w_norm_sq({1, 0, 0}, hop) == doctest::Approx(2.0));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 2000; ++i) {
        const KnotIndices k = random_indices(rng, 5);
        const Vec3 K{u(rng), u(rng), u(rng)};
        const double direct = w_vector(K, k).norm2();
        const double closed = w_norm_sq(K, k);
        CHECK(std::abs(direct - closed) <= 1e-12 * (1.0 + direct));
    }
}

TEST_CASE("W is homogeneous of degree one and linear in the indices") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const KnotIndices k = random_indices(rng, 5);
        const Vec3 K{u(rng), u(rng), u(rng)};
        if (K.norm() < 1e-3) continue;
        const Vec3C w1 = w_vector(K, k);
        const Vec3C w2 = w_vector(2.5 * K, k);
        CHECK((w2 - Complex(2.5, 0.0) * w1).norm() < 1e-12 * w1.norm());

        const Vec3C wa = w_vector(K, KnotIndices::unchecked(k.n, 0, 0, 0));
        const Vec3C wb = w_vector(K, KnotIndices::unchecked(0, k.m, k.l, k.s));
        CHECK((wa + wb - w1).norm() < 1e-12 * (1.0 + w1.norm()));
    }
    CHECK(w_norm_sq({0, 0, 2}, hopfion_indices()) ==
          doctest::Approx(4.0 * w_norm_sq({0, 0, 1}, hopfion_indices())));
}

TEST_CASE("transversality K.W = 0") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const KnotIndices k = random_indices(rng, 5);
        const Vec3 K{u(rng), u(rng), u(rng)};
        const Vec3C w = w_vector(K, k);
        if (w.norm() == 0.0) continue;
        worst = std::max(worst, std::abs(Vec3C(K).dot(w)) / (K.norm() * w.norm()));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("polarization basis") {
    const auto b = polarization_basis({0, 0, 2.0});
    CHECK(b.e1.x == doctest::Approx(1.0));
    CHECK(b.e2.y == doctest::Approx(1.0));

    const auto bx = polarization_basis({3.0, 0, 0});
    CHECK(std::abs(bx.e1.dot({1, 0, 0})) < 1e-14);
    CHECK(std::abs(bx.e2.dot({1, 0, 0})) < 1e-14);
    CHECK(bx.e1.norm() == doctest::Approx(1.0));
    CHECK(bx.e1.dot(bx.e2) == doctest::Approx(0.0));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const Vec3 K{u(rng), u(rng), u(rng)};
        if (K.norm() < 1e-6) continue;
        const auto basis = polarization_basis(K);
        CHECK(std::abs(basis.eplus.cdot(basis.eminus)) < 1e-14);
        CHECK(basis.eplus.cdot(basis.eplus).real() == doctest::Approx(1.0));
        // right-handed: e1 x e2 = Khat
        CHECK((basis.e1.cross(basis.e2) - K.normalized()).norm() < 1e-13);
    }
    CHECK_THROWS_AS(polarization_basis({0, 0, 0}), Error);
}

TEST_CASE("polarization completeness for transverse W") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const KnotIndices k = random_indices(rng, 5);
        const Vec3 K{u(rng), u(rng), u(rng)};
        if (K.norm() < 1e-6) continue;
        const auto b = polarization_basis(K);
        const Vec3C w = w_vector(K, k);
        const double sum = std::norm(b.eplus.cdot(w)) + std::norm(b.eminus.cdot(w));
        CHECK(sum == doctest::Approx(w_norm_sq(K, k)).epsilon(1e-12));
    }
}

TEST_CASE("alpha on the z axis") {
    const PhysicalScales s = PhysicalScales::natural();
    const double K0 = 0.9;

    // hopfion: conj(eps+).W = i K0 (l-s)/sqrt(2) = 0 on the +z axis
    CHECK(std::abs(alpha({0, 0, K0}, Polarization::Plus, hopfion_indices(), s)) < 1e-16);

    // l != s: both amplitudes from the closed-form projection
    const KnotIndices k = KnotIndices::validated(1, 1, 3, 2);
    const double pref = std::sqrt(s.a) / (std::pow(2.0, 1.5) * kPi * kPi * std::sqrt(2.0 * K0)) *
                        std::exp(-K0);
    const Complex ap = alpha({0, 0, K0}, Polarization::Plus, k, s);
    const Complex am = alpha({0, 0, K0}, Polarization::Minus, k, s);
    CHECK(std::abs(ap - Complex(0.0, pref * K0 * (k.l - k.s) / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(am - Complex(0.0, pref * K0 * (k.l + k.s) / std::sqrt(2.0))) < 1e-15);

    CHECK_THROWS_AS(alpha({0, 0, 0}, Polarization::Plus, k, s), Error);
}

TEST_CASE("alpha decays faster than any power") {
    const PhysicalScales s = PhysicalScales::natural();
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    double prev = std::abs(alpha({0, 1.0, 0.4}, Polarization::Minus, k, s));
    for (const double mag : {5.0, 10.0, 20.0}) {
        const double cur = std::abs(alpha({0, mag, 0.4 * mag}, Polarization::Minus, k, s));
        CHECK(cur < prev * std::exp(-0.5 * mag) * std::pow(mag, 3));
        prev = cur;
    }
}

TEST_CASE("spectral_amplitude bundles W with both projections") {
    const PhysicalScales s = PhysicalScales::natural();
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    const Vec3 K{0.7, -0.4, 1.1};
    const auto amp = spectral_amplitude(K, k, s);
    CHECK((amp.W - w_vector(K, k)).norm() == 0.0);
    CHECK(amp.alpha_plus == alpha(K, Polarization::Plus, k, s));
    CHECK(amp.alpha_minus == alpha(K, Polarization::Minus, k, s));
    // amplitudes carry the e^{-K} envelope
    const auto far = spectral_amplitude(10.0 * K, k, s);
    CHECK(std::abs(far.alpha_plus) < std::exp(-5.0 * K.norm()) * std::abs(amp.alpha_plus));
}

TEST_CASE("helicity density follows from the two amplitudes") {
    const PhysicalScales s = PhysicalScales::natural();
    const KnotIndices k = KnotIndices::validated(1, 1, 3, 2);
    const double K0 = 1.3;
    const Complex ap = alpha({0, 0, K0}, Polarization::Plus, k, s);
    const Complex am = alpha({0, 0, K0}, Polarization::Minus, k, s);
    CHECK(helicity_density({0, 0, K0}, k, s) ==
          doctest::Approx(std::norm(ap) - std::norm(am)).epsilon(1e-13));
    // on the +z axis the density carries the -2ls structure
    CHECK(helicity_density({0, 0, K0}, k, s) < 0.0);

    // zero field limit
    const PhysicalScales tiny = PhysicalScales::natural(1e-30);
    CHECK(std::abs(helicity_density({0, 0, K0}, k, tiny)) < 1e-25);
}

TEST_CASE("amplitude magnitudes are gauge invariant under basis rotation") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3.0, 3.0), upsi(0.0, 2.0 * kPi);
    const PhysicalScales s = PhysicalScales::natural();
    for (int i = 0; i < 200; ++i) {
        const KnotIndices k = random_indices(rng, 4);
        const Vec3 K{u(rng), u(rng), u(rng)};
        if (K.norm() < 1e-3) continue;
        const auto b = polarization_basis(K);
        const double psi = upsi(rng);
        // rotate (e1,e2) about Khat
        const Vec3 e1r = std::cos(psi) * b.e1 + std::sin(psi) * b.e2;
        const Vec3 e2r = -std::sin(psi) * b.e1 + std::cos(psi) * b.e2;
        const double r = 1.0 / std::sqrt(2.0);
        const Vec3C epr(e1r * r, e2r * r);
        const Vec3C emr(e1r * r, -(e2r * r));
        const Vec3C w = w_vector(K, k);
        CHECK(std::abs(epr.cdot(w)) == doctest::Approx(std::abs(b.eplus.cdot(w))).epsilon(1e-12));
        CHECK(std::abs(emr.cdot(w)) ==
              doctest::Approx(std::abs(b.eminus.cdot(w))).epsilon(1e-12));
        // and so is the helicity density
        const double hd_rot = std::norm(epr.cdot(w)) - std::norm(emr.cdot(w));
        const double hd = std::norm(b.eplus.cdot(w)) - std::norm(b.eminus.cdot(w));
        CHECK(hd_rot == doctest::Approx(hd).epsilon(1e-11));
        // swapping the circular labels flips the sign
        const double hd_swapped = std::norm(b.eminus.cdot(w)) - std::norm(b.eplus.cdot(w));
        CHECK(hd_swapped == doctest::Approx(-hd).epsilon(1e-11));
    }
}

TEST_CASE("fft oracle grid contract") {
    const PhysicalScales s = PhysicalScales::natural();
    const KnotIndices k = hopfion_indices();
    CHECK_THROWS_AS(FieldSpectrum::from_initial_data({32, 24.0}, k, s), Error);   // too few points
    CHECK_THROWS_AS(FieldSpectrum::from_initial_data({64, 10.0}, k, s), Error);   // small box
    CHECK_THROWS_AS(FieldSpectrum::from_initial_data({64, 24.0}, k, s), Error);   // Nyquist < 8
}

TEST_CASE("fft oracle: transversality, spectrum shape, roundtrip") {
    const PhysicalScales s = PhysicalScales::natural();
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    const GridSpec g{112, 20.0};
    const auto spec = FieldSpectrum::from_initial_data(g, k, s);

    CHECK(spec.transversality_error() < 1e-2);
    // refining the grid shrinks the violation (alias-tail dominated)
    const auto finer = FieldSpectrum::from_initial_data({144, 20.0}, k, s);
    CHECK(finer.transversality_error() < spec.transversality_error());

    // the synthesis-convention combination Bhat_+ + i Ehat_+ matches
    // 2 pi sqrt(a) e^{-K} W(K) on well-resolved modes
    const int N = spec.axis_points();
    double worst = 0.0;
    for (const auto [ix, iy, iz] : {std::array<int, 3>{3, 5, 2}, {10, 105, 7}, {100, 4, 108}}) {
        const auto mv = spec.mode_view((N - ix) % N, (N - iy) % N, (N - iz) % N);
        const Vec3C F = mv.Bhat + Complex(0, 1) * mv.Ehat;
        const Vec3 K = -1.0 * mv.K;
        const Vec3C expect =
            2.0 * kPi * std::sqrt(s.a) * std::exp(-K.norm()) * w_vector(K, k);
        worst = std::max(worst, (F - expect).norm() / expect.norm());
    }
    CHECK(worst < 5e-3);

    // rebuild at T = 0 and evolve by the phase law
    const auto ref0 = GridField::sample(g, 0.0, k, s);
    const auto rec0 = spec.reconstruct(0.0);
    const auto l2 = rec0.rel_l2_error(ref0, 2);
    CHECK(l2.e < 1e-2);
    CHECK(l2.b < 1e-2);
    CHECK(rec0.fit_global_scale(ref0) == doctest::Approx(1.0).epsilon(1e-2));

    const auto ref5 = GridField::sample(g, 0.5, k, s);
    const auto rec5 = spec.reconstruct(0.5);
    const auto l25 = rec5.rel_l2_error(ref5, 2);
    CHECK(l25.e < 2e-2);
    CHECK(l25.b < 2e-2);
}

TEST_CASE("closed-form amplitudes: field-consistent vs printed") {
    const PhysicalScales s = PhysicalScales::natural();
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    const GridSpec g{112, 20.0};

    const auto ref = GridField::sample(g, 0.0, k, s);
    const auto consistent =
        FieldSpectrum::from_amplitudes(g, k, s, AmplitudeModel::FieldConsistent).reconstruct(0.0);
    const auto lc = consistent.rel_l2_error(ref, 2);
    CHECK(lc.e < 1e-2);
    CHECK(lc.b < 1e-2);

    // the closed-form amplitudes rebuild the (-m, n, -l, s) field scaled
    // down by the closed-form-vs-consistent normalization quotient 2^{5/2} pi^3
    auto printed =
        FieldSpectrum::from_amplitudes(g, k, s, AmplitudeModel::ClosedForm).reconstruct(0.0);
    const double quotient = std::pow(2.0, 2.5) * kPi * kPi * kPi;
    for (auto& v : printed.E) v *= quotient;
    for (auto& v : printed.B) v *= quotient;
    const auto relabeled =
        GridField::sample(g, 0.0, KnotIndices::unchecked(-k.m, k.n, -k.l, k.s), s);
    const auto lp = printed.rel_l2_error(relabeled, 2);
    CHECK(lp.e < 1e-2);
    CHECK(lp.b < 1e-2);
    const auto direct = printed.rel_l2_error(ref, 2);
    CHECK(direct.e > 0.5); // no single constant fits the unrelabeled field
}

TEST_CASE("discrete mode sums reproduce the first-principles laws") {
    const PhysicalScales s = PhysicalScales::natural();
    const KnotIndices k = KnotIndices::validated(2, 3, 1, 1);
    const auto spec = FieldSpectrum::from_initial_data({112, 20.0}, k, s);
    const double sigma = k.sum_of_squares();
    CHECK(spec.total_photon_number() == doctest::Approx(s.a * sigma / 4.0).epsilon(2e-3));
    CHECK(spec.total_energy() == doctest::Approx(s.a * sigma / 2.0).epsilon(2e-3));
    CHECK(spec.spin_helicity() ==
          doctest::Approx(s.a * k.helicity_combination() / 2.0).epsilon(2e-3));
    CHECK(spec.magnetic_helicity_real_space() ==
          doctest::Approx(s.a * k.n * k.m).epsilon(2e-3));
}
