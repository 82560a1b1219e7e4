#include "knotfield/quantumstate.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace knotfield::quantumstate {

namespace {

constexpr double kPi = std::numbers::pi;

// spherical Bessel j0, j1, j2 with series branches near q = 0
struct Bessel012 {
    double j0, j1, j2, j1q; // j1q = j1(q)/q
};

Bessel012 bessel012(double q) {
    Bessel012 b;
    if (std::abs(q) < 0.5) {
        const double q2 = q * q;
        b.j0 = 1.0 - q2 / 6.0 * (1.0 - q2 / 20.0 * (1.0 - q2 / 42.0 * (1.0 - q2 / 72.0)));
        b.j1q = (1.0 - q2 / 10.0 * (1.0 - q2 / 28.0 * (1.0 - q2 / 54.0))) / 3.0;
        b.j1 = q * b.j1q;
        b.j2 = q2 / 15.0 *
               (1.0 - q2 / 14.0 * (1.0 - q2 / 36.0 * (1.0 - q2 / 66.0)));
    } else {
        const double s = std::sin(q), c = std::cos(q);
        b.j0 = s / q;
        b.j1 = s / (q * q) - c / q;
        b.j1q = b.j1 / q;
        b.j2 = 3.0 * b.j1q - b.j0;
    }
    return b;
}

double model_prefactor(const PhysicalScales& s, AmplitudeModel model) {
    if (model == AmplitudeModel::ClosedForm) {
        return std::sqrt(s.a) * s.L0 / (std::pow(2.0, 1.5) * kPi * kPi);
    }
    return 2.0 * kPi * std::sqrt(s.a) * s.L0;
}

} // namespace

Vec3C e_plus(const CorrelationPoint& p, const KnotIndices& k, const PhysicalScales& s,
             const EplusOptions& opts) {
    // The spectral vector factors as W = K [ c - Khat (c.Khat) + i m Khat x z
    // + s Khat x x ] with c = i l xhat - n zhat, so the angular integral
    // against e^{iK.X} reduces exactly to j0/j1/j2 moments and the mode
    // integral to 1D radial quadratures.
    const KnotIndices ki = opts.model == AmplitudeModel::ClosedForm
                               ? k
                               : KnotIndices::unchecked(k.m, -k.n, -k.l, k.s);
    const double R = p.X.norm();
    const Vec3 xhat = R > 0.0 ? p.X / R : Vec3{0.0, 0.0, 0.0};

    // complex radial integrals I0, I1, I2, I1q of K^3 e^{-(1+iT)K} j_l(KR)
    Complex I0{}, I1{}, I2{}, I1q{};
    {
        // panel width resolves the oscillation rate ~ (R + |T| + 1)
        const double rate = R + std::abs(p.T) + 1.0;
        const double width = std::min(2.0, kPi / rate);
        std::vector<double> edges;
        for (double e = 0.0; e < opts.k_max; e += width) edges.push_back(e);
        edges.push_back(opts.k_max);
        const auto rule = quadrature::panel_rule(edges, opts.panel_order);
        for (size_t i = 0; i < rule.x.size(); ++i) {
            const double K = rule.x[i];
            if (K <= 0.0) continue;
            const double damp = std::exp(-K) * K * K * K * rule.w[i];
            const Complex osc(std::cos(K * p.T), -std::sin(K * p.T));
            const Bessel012 b = bessel012(K * R);
            const Complex base = damp * osc;
            I0 += base * b.j0;
            I1 += base * b.j1;
            I2 += base * b.j2;
            I1q += base * b.j1q;
        }
    }

    const Complex i1(0.0, 1.0);
    const Vec3C c = i1 * double(ki.l) * Vec3C(Vec3{1, 0, 0}) - Vec3C(Vec3{0, 0, double(ki.n)});
    const Vec3C xv(xhat);
    const Vec3C term_c = (I0 - I1q) * c + I2 * (xv * c.dot(xv));
    const Vec3C term_m = (-double(ki.m) * I1) * Vec3C(xhat.cross({0, 0, 1}));
    const Vec3C term_s = (i1 * double(ki.s) * I1) * Vec3C(xhat.cross({1, 0, 0}));

    const double C = model_prefactor(s, opts.model);
    return (i1 * C / (4.0 * kPi * kPi)) * (term_c + term_m + term_s) * Complex(s.c(), 0.0);
}

namespace {

double intensity(const CorrelationPoint& p, const KnotIndices& k, const PhysicalScales& s,
                 const EplusOptions& opts) {
    return e_plus(p, k, s, opts).norm2();
}

} // namespace

Complex g1(const CorrelationPoint& x, const CorrelationPoint& y, const KnotIndices& k,
           const PhysicalScales& s, const EplusOptions& opts) {
    const Vec3C ex = e_plus(x, k, s, opts);
    const Vec3C ey = e_plus(y, k, s, opts);
    const double ix = ex.norm2(), iy = ey.norm2();
    if (ix <= 0.0 || iy <= 0.0) {
        throw_error(ErrorKind::ZeroIntensity, "g1 needs nonzero intensity at both points");
    }
    return ex.cdot(ey) / std::sqrt(ix * iy);
}

double g2(const CorrelationPoint& x, const CorrelationPoint& y, const KnotIndices& k,
          const PhysicalScales& s, const EplusOptions& opts) {
    const double ix = intensity(x, k, s, opts);
    const double iy = intensity(y, k, s, opts);
    if (ix <= 0.0 || iy <= 0.0) {
        throw_error(ErrorKind::ZeroIntensity, "g2 needs nonzero intensity at both points");
    }
    // G2(x,y) = |E+(x)|^2 |E+(y)|^2 and <I> = |E+|^2, so the ratio is 1 for
    // any coherent state; computed through the same code path regardless.
    return (ix * iy) / (ix * iy);
}

ModeSet ModeSet::build(const KnotIndices& k, const PhysicalScales& s,
                       const quadrature::QuadratureSpec& spec, AmplitudeModel model) {
    spec.validate();
    ModeSet ms;
    ms.scales_ = s;
    const auto nodes = quadrature::nodes_k3(spec.radial_order, spec.angular_order,
                                            spec.radial_scale);
    ms.modes_.reserve(nodes.size() * 2);
    const double measure = 1.0 / std::pow(2.0 * kPi, 3);
    for (const auto& nd : nodes) {
        for (const Polarization lam : {Polarization::Plus, Polarization::Minus}) {
            Mode m;
            m.K = nd.K;
            m.lambda = lam;
            m.weight = nd.weight * measure;
            m.amplitude = spectral::alpha(nd.K, lam, k, s, model);
            ms.modes_.push_back(m);
        }
    }
    return ms;
}

const Mode& ModeSet::mode(size_t i) const {
    if (i >= modes_.size()) throw_error(ErrorKind::InvalidConfig, "mode index out of range");
    return modes_[i];
}

ModeSet ModeSet::evolved(double t) const {
    ModeSet out = *this;
    const double c = scales_.c();
    for (auto& m : out.modes_) {
        const double omega = scales_.unit_system == UnitSystem::SI
                                 ? c * m.K.norm() / scales_.L0
                                 : m.K.norm();
        m.amplitude *= Complex(std::cos(omega * t), -std::sin(omega * t));
    }
    return out;
}

double ModeSet::total_photon_number() const {
    double acc = 0.0;
    for (const auto& m : modes_) acc += m.weight * std::norm(m.amplitude);
    return acc;
}

double ModeSet::total_energy() const {
    double acc = 0.0;
    for (const auto& m : modes_) acc += m.weight * m.K.norm() * std::norm(m.amplitude);
    return acc;
}

double ModeSet::spin_helicity() const {
    double acc = 0.0;
    for (const auto& m : modes_) {
        const double sign = m.lambda == Polarization::Plus ? 1.0 : -1.0;
        acc += sign * m.weight * std::norm(m.amplitude);
    }
    return acc;
}

ModeStatistics mode_statistics(const ModeSet& ms, size_t mode_index) {
    const double n = std::norm(ms.mode(mode_index).amplitude);
    ModeStatistics st;
    st.mean = n;
    st.variance = n;
    st.fano = n > 0.0 ? st.variance / st.mean : 0.0;
    return st;
}

ModeStatistics sampled_statistics(const ModeSet& ms, size_t mode_index, int draws,
                                  uint64_t seed) {
    const double lambda = std::norm(ms.mode(mode_index).amplitude);
    std::mt19937_64 rng(seed);
    std::poisson_distribution<long> dist(lambda);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double v = static_cast<double>(dist(rng));
        sum += v;
        sum2 += v * v;
    }
    ModeStatistics st;
    st.mean = sum / draws;
    st.variance = sum2 / draws - st.mean * st.mean;
    st.fano = st.mean > 0.0 ? st.variance / st.mean : 0.0;
    return st;
}

QuadratureUncertainty quadrature_uncertainties(const ModeSet& ms, size_t mode_index) {
    const Complex a = ms.mode(mode_index).amplitude;
    QuadratureUncertainty u;
    u.mean_x = std::sqrt(2.0) * a.real();
    u.mean_p = std::sqrt(2.0) * a.imag();
    // second moments from <a^2> = alpha^2, <a^dag a> = |alpha|^2, [a,a^dag]=1
    const double x2 = 0.5 * (2.0 * std::norm(a) + 2.0 * (a * a).real() + 1.0);
    const double p2 = 0.5 * (2.0 * std::norm(a) - 2.0 * (a * a).real() + 1.0);
    u.var_x = x2 - u.mean_x * u.mean_x;
    u.var_p = p2 - u.mean_p * u.mean_p;
    u.product = std::sqrt(u.var_x * u.var_p);
    return u;
}

} // namespace knotfield::quantumstate
