#include "knotfield/spectral.hpp"

#include "knotfield/fields.hpp"
#include "knotfield/parallel.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace knotfield::spectral {

namespace {
constexpr double kPi = std::numbers::pi;
std::mutex fftw_mutex; // FFTW planning is not thread-safe
} // namespace

Vec3C w_vector(const Vec3& K, const KnotIndices& k) {
    const double Kmag = K.norm();
    if (Kmag == 0.0) return {};
    const double n = k.n, m = k.m, l = k.l, s = k.s;
    const double Kx = K.x, Ky = K.y, Kz = K.z;
    const Complex i(0.0, 1.0);
    return {i * (m * Ky) + n * Kx * Kz / Kmag + i * (l * (Kmag - Kx * Kx / Kmag)),
            -i * (m * Kx) + n * Ky * Kz / Kmag - i * (l * Kx * Ky / Kmag) + s * Kz,
            n * (-Kmag + Kz * Kz / Kmag) - i * (l * Kx * Kz / Kmag) - s * Ky};
}

double w_norm_sq(const Vec3& K, const KnotIndices& k) {
    const double K2 = K.norm2();
    const double Kmag = std::sqrt(K2);
    const double n = k.n, m = k.m, l = k.l, s = k.s;
    return n * n * (K2 - K.z * K.z) + m * m * (K.x * K.x + K.y * K.y) +
           l * l * (K2 - K.x * K.x) + s * s * (K.y * K.y + K.z * K.z) +
           2.0 * (n * s + m * l) * Kmag * K.y;
}

PolarizationBasis polarization_basis(const Vec3& K) {
    const double Kmag = K.norm();
    if (Kmag == 0.0) throw_error(ErrorKind::ZeroWaveVector, "polarization basis needs |K| > 0");
    const Vec3 khat = K / Kmag;
    const Vec3 zxk = Vec3{0.0, 0.0, 1.0}.cross(khat);
    PolarizationBasis b;
    b.e1 = zxk.norm() > 1e-8 ? zxk.normalized() : Vec3{1.0, 0.0, 0.0};
    b.e2 = khat.cross(b.e1);
    const double r = 1.0 / std::sqrt(2.0);
    b.eplus = Vec3C(b.e1 * r, b.e2 * r);
    b.eminus = Vec3C(b.e1 * r, -(b.e2 * r));
    return b;
}

namespace {

KnotIndices amplitude_indices(const KnotIndices& k, AmplitudeModel model) {
    if (model == AmplitudeModel::ClosedForm) return k;
    // the amplitude set that reproduces the classical initial data
    return KnotIndices::unchecked(k.m, -k.n, -k.l, k.s);
}

double amplitude_prefactor(double Kmag, const PhysicalScales& s, AmplitudeModel model) {
    const double omega = s.unit_system == UnitSystem::SI ? s.c() * Kmag / s.L0 : Kmag;
    const double env = std::exp(-Kmag);
    if (model == AmplitudeModel::ClosedForm) {
        return std::sqrt(s.a) * s.L0 / (std::pow(2.0, 1.5) * kPi * kPi) * env /
               std::sqrt(2.0 * omega);
    }
    return 2.0 * kPi * std::sqrt(s.a) * s.L0 * env / std::sqrt(2.0 * omega);
}

} // namespace

Complex alpha(const Vec3& K, Polarization lambda, const KnotIndices& k, const PhysicalScales& s,
              AmplitudeModel model) {
    const double Kmag = K.norm();
    if (Kmag == 0.0) throw_error(ErrorKind::ZeroWaveVector, "alpha needs |K| > 0");
    const PolarizationBasis b = polarization_basis(K);
    const Vec3C w = w_vector(K, amplitude_indices(k, model));
    const Vec3C eps = lambda == Polarization::Plus ? b.eplus : b.eminus;
    return amplitude_prefactor(Kmag, s, model) * eps.cdot(w);
}

SpectralAmplitude spectral_amplitude(const Vec3& K, const KnotIndices& k,
                                     const PhysicalScales& s, AmplitudeModel model) {
    SpectralAmplitude out;
    out.W = w_vector(K, k);
    out.alpha_plus = alpha(K, Polarization::Plus, k, s, model);
    out.alpha_minus = alpha(K, Polarization::Minus, k, s, model);
    return out;
}

double helicity_density(const Vec3& K, const KnotIndices& k, const PhysicalScales& s) {
    const Complex ap = alpha(K, Polarization::Plus, k, s);
    const Complex am = alpha(K, Polarization::Minus, k, s);
    return std::norm(ap) - std::norm(am);
}

// ---------------------------------------------------------------------------

double GridSpec::nyquist_k() const { return kPi * points_per_axis / (2.0 * half_width); }

size_t GridSpec::point_count() const {
    const size_t n = static_cast<size_t>(points_per_axis);
    return n * n * n;
}

GridField GridField::sample(const GridSpec& g, double T, const KnotIndices& k,
                            const PhysicalScales& s) {
    GridField out;
    out.grid = g;
    const int N = g.points_per_axis;
    const double dx = g.dx();
    out.E.resize(g.point_count());
    out.B.resize(g.point_count());
    parallel_for(N, [&](int ix) {
        const double X = -g.half_width + dx * ix;
        for (int iy = 0; iy < N; ++iy) {
            const double Y = -g.half_width + dx * iy;
            size_t idx = (static_cast<size_t>(ix) * N + iy) * N;
            for (int iz = 0; iz < N; ++iz, ++idx) {
                const double Z = -g.half_width + dx * iz;
                const fields::FieldSample fs = fields::field_at({X, Y, Z, T}, k, s);
                out.E[idx] = fs.E;
                out.B[idx] = fs.B;
            }
        }
    });
    return out;
}

GridField::L2 GridField::rel_l2_error(const GridField& ref, int stride) const {
    const int N = grid.points_per_axis;
    double de = 0.0, db = 0.0, ne = 0.0, nb = 0.0;
    for (int ix = 0; ix < N; ix += stride)
        for (int iy = 0; iy < N; iy += stride)
            for (int iz = 0; iz < N; iz += stride) {
                const size_t idx = (static_cast<size_t>(ix) * N + iy) * N + iz;
                de += (E[idx] - ref.E[idx]).norm2();
                db += (B[idx] - ref.B[idx]).norm2();
                ne += ref.E[idx].norm2();
                nb += ref.B[idx].norm2();
            }
    return {std::sqrt(de / ne), std::sqrt(db / nb)};
}

double GridField::fit_global_scale(const GridField& ref) const {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < E.size(); ++i) {
        num += E[i].dot(ref.E[i]) + B[i].dot(ref.B[i]);
        den += E[i].norm2() + B[i].norm2();
    }
    return num / den;
}

// ---------------------------------------------------------------------------

struct FieldSpectrum::Impl {
    KnotIndices indices;
    PhysicalScales scales;
    std::vector<Complex> Ehat[3]; // analysis convention e^{-ik.x}, E scaled by 1/c
    std::vector<Complex> Bhat[3];
    std::vector<double> kaxis;

    int N() const { return static_cast<int>(kaxis.size()); }
    double kcomp(int i) const { return kaxis[i]; }
    size_t index(int ix, int iy, int iz) const {
        return (static_cast<size_t>(ix) * N() + iy) * N() + iz;
    }
    bool nyquist(int i) const { return N() % 2 == 0 && i == N() / 2; }

    Vec3C eh(size_t q) const { return {Ehat[0][q], Ehat[1][q], Ehat[2][q]}; }
    Vec3C bh(size_t q) const { return {Bhat[0][q], Bhat[1][q], Bhat[2][q]}; }

    // V(k) = sum_lambda alpha_lambda eps_lambda, transverse-projected
    Vec3C mode_amplitude(const Vec3& khat, double omega, size_t q) const {
        const Vec3C core = Vec3C(khat).cross(bh(q)) - eh(q);
        const Vec3C proj = core - Vec3C(khat) * Vec3C(khat).dot(core);
        return Complex(0.0, 1.0) / std::sqrt(2.0 * omega) * proj;
    }
};

FieldSpectrum::FieldSpectrum() : impl_(new Impl) {}
FieldSpectrum::~FieldSpectrum() = default;
FieldSpectrum::FieldSpectrum(FieldSpectrum&&) noexcept = default;
FieldSpectrum& FieldSpectrum::operator=(FieldSpectrum&&) noexcept = default;

namespace {

std::vector<double> make_kaxis(const GridSpec& g) {
    const int N = g.points_per_axis;
    const double dk = kPi / g.half_width; // 2*pi / (N*dx)
    std::vector<double> k(N);
    for (int i = 0; i < N; ++i) k[i] = dk * (i < (N + 1) / 2 ? i : i - N);
    return k;
}

void check_grid(const GridSpec& g) {
    if (g.points_per_axis < 64) {
        throw_error(ErrorKind::GridTooCoarse, "need at least 64 points per axis");
    }
    if (g.half_width < 20.0) {
        throw_error(ErrorKind::DomainTooSmall, "need cube half-width >= 20");
    }
    if (g.nyquist_k() < 8.0) {
        throw_error(ErrorKind::GridTooCoarse,
                    "Nyquist K = " + std::to_string(g.nyquist_k()) + " below 8");
    }
}

// forward in-place c2c with the e^{-ik.x} sample phase folded in
void analysis_fft(std::vector<Complex>& buf, const GridSpec& g,
                  const std::vector<double>& kaxis) {
    const int N = g.points_per_axis;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        plan = fftw_plan_dft_3d(N, N, N, reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
    const double dx3 = g.dx() * g.dx() * g.dx();
    parallel_for(N, [&](int ix) {
        for (int iy = 0; iy < N; ++iy)
            for (int iz = 0; iz < N; ++iz) {
                const double ph = (kaxis[ix] + kaxis[iy] + kaxis[iz]) * g.half_width;
                const size_t q = (static_cast<size_t>(ix) * N + iy) * N + iz;
                buf[q] *= dx3 * Complex(std::cos(ph), std::sin(ph));
            }
    });
}

void synthesis_fft(std::vector<Complex>& buf, const GridSpec& g,
                   const std::vector<double>& kaxis) {
    const int N = g.points_per_axis;
    parallel_for(N, [&](int ix) {
        for (int iy = 0; iy < N; ++iy)
            for (int iz = 0; iz < N; ++iz) {
                const double ph = (kaxis[ix] + kaxis[iy] + kaxis[iz]) * g.half_width;
                const size_t q = (static_cast<size_t>(ix) * N + iy) * N + iz;
                buf[q] *= Complex(std::cos(ph), -std::sin(ph));
            }
    });
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        plan = fftw_plan_dft_3d(N, N, N, reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
    const double vol = std::pow(2.0 * g.half_width, 3);
    for (auto& v : buf) v *= 1.0 / vol;
}

} // namespace

FieldSpectrum FieldSpectrum::from_initial_data(const GridSpec& g, const KnotIndices& k,
                                               const PhysicalScales& s) {
    check_grid(g);
    // boundary truncation estimate
    {
        const fields::FieldSample corner =
            fields::initial_fields({g.half_width, 0.0, 0.0, 0.0}, k, s);
        const fields::FieldSample center = fields::initial_fields({0.0, 0.0, 0.0, 0.0}, k, s);
        const double trunc = (corner.E.norm() / s.c() + corner.B.norm()) /
                             (center.E.norm() / s.c() + center.B.norm());
        if (trunc > 1e-3) {
            throw_error(ErrorKind::DomainTooSmall,
                        "field truncation estimate " + std::to_string(trunc) + " above 1e-3");
        }
    }

    FieldSpectrum out;
    out.grid_ = g;
    out.impl_->indices = k;
    out.impl_->scales = s;
    out.impl_->kaxis = make_kaxis(g);
    const GridField f = GridField::sample(g, 0.0, k, s);
    const size_t count = g.point_count();
    const double invc = 1.0 / s.c();
    for (int c = 0; c < 3; ++c) {
        std::vector<Complex> buf(count);
        for (size_t q = 0; q < count; ++q) {
            const Vec3& v = f.E[q];
            buf[q] = Complex(invc * (c == 0 ? v.x : c == 1 ? v.y : v.z), 0.0);
        }
        analysis_fft(buf, g, out.impl_->kaxis);
        out.impl_->Ehat[c] = std::move(buf);
    }
    for (int c = 0; c < 3; ++c) {
        std::vector<Complex> buf(count);
        for (size_t q = 0; q < count; ++q) {
            const Vec3& v = f.B[q];
            buf[q] = Complex(c == 0 ? v.x : c == 1 ? v.y : v.z, 0.0);
        }
        analysis_fft(buf, g, out.impl_->kaxis);
        out.impl_->Bhat[c] = std::move(buf);
    }
    return out;
}

FieldSpectrum FieldSpectrum::from_amplitudes(const GridSpec& g, const KnotIndices& k,
                                             const PhysicalScales& s, AmplitudeModel model) {
    check_grid(g);
    FieldSpectrum out;
    out.grid_ = g;
    out.impl_->indices = k;
    out.impl_->scales = s;
    out.impl_->kaxis = make_kaxis(g);
    Impl& im = *out.impl_;
    const int N = g.points_per_axis;
    const size_t count = g.point_count();
    for (int c = 0; c < 3; ++c) {
        im.Ehat[c].assign(count, Complex(0.0));
        im.Bhat[c].assign(count, Complex(0.0));
    }
    const KnotIndices ki = amplitude_indices(k, model);

    // Ehat_-(k) = i sqrt(w/2) (V(k) - conj(V(-k))),
    // Bhat_-(k) = i k x (V(k) + conj(V(-k))) / sqrt(2w), with V = pref * W_T.
    auto v_of = [&](int ix, int iy, int iz) -> Vec3C {
        const Vec3 K{im.kcomp(ix), im.kcomp(iy), im.kcomp(iz)};
        const double Kmag = K.norm();
        if (Kmag == 0.0) return {};
        const Vec3C w = w_vector(K, ki);
        const Vec3C khat(K / Kmag);
        const Vec3C wt = w - khat * khat.dot(w);
        return amplitude_prefactor(Kmag, s, model) * wt;
    };
    parallel_for(N, [&](int ix) {
        const int mx = (N - ix) % N;
        for (int iy = 0; iy < N; ++iy) {
            const int my = (N - iy) % N;
            for (int iz = 0; iz < N; ++iz) {
                const int mz = (N - iz) % N;
                const Vec3 K{im.kcomp(ix), im.kcomp(iy), im.kcomp(iz)};
                const double Kmag = K.norm();
                const size_t q = im.index(ix, iy, iz);
                if (Kmag == 0.0 || im.nyquist(ix) || im.nyquist(iy) || im.nyquist(iz)) continue;
                const Vec3C vp = v_of(ix, iy, iz);
                const Vec3C vm = v_of(mx, my, mz).conj();
                const double omega = Kmag;
                const Complex i1(0.0, 1.0);
                const Vec3C eh = i1 * std::sqrt(omega / 2.0) * (vp - vm);
                const Vec3C bh = i1 / std::sqrt(2.0 * omega) * (Vec3C(K).cross(vp + vm));
                im.Ehat[0][q] = eh.x;
                im.Ehat[1][q] = eh.y;
                im.Ehat[2][q] = eh.z;
                im.Bhat[0][q] = bh.x;
                im.Bhat[1][q] = bh.y;
                im.Bhat[2][q] = bh.z;
            }
        }
    });
    return out;
}

FieldSpectrum::ModeView FieldSpectrum::mode_view(int ix, int iy, int iz) const {
    const Impl& im = *impl_;
    const size_t q = im.index(ix, iy, iz);
    return {{im.kcomp(ix), im.kcomp(iy), im.kcomp(iz)}, im.eh(q), im.bh(q)};
}

int FieldSpectrum::axis_points() const { return impl_->N(); }

double FieldSpectrum::k_axis(int i) const { return impl_->kcomp(i); }

double FieldSpectrum::transversality_error() const {
    const Impl& im = *impl_;
    const int N = im.N();
    double num = 0.0, den = 0.0;
    for (int ix = 0; ix < N; ++ix)
        for (int iy = 0; iy < N; ++iy)
            for (int iz = 0; iz < N; ++iz) {
                const Vec3 K{im.kcomp(ix), im.kcomp(iy), im.kcomp(iz)};
                const double K2 = K.norm2();
                if (K2 == 0.0) continue;
                const size_t q = im.index(ix, iy, iz);
                // F(k) of the synthesis convention equals the analysis
                // transform at -k; |K.F| statistics are identical either way.
                const Vec3C F = im.bh(q) + Complex(0.0, 1.0) * im.eh(q);
                num += std::norm(Vec3C(K).dot(F));
                den += K2 * F.norm2();
            }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

GridField FieldSpectrum::reconstruct(double T) const {
    const Impl& im = *impl_;
    const GridSpec& g = grid_;
    const int N = im.N();
    const size_t count = g.point_count();
    GridField out;
    out.grid = g;
    out.E.resize(count);
    out.B.resize(count);
    const double c = im.scales.c();

    std::vector<Complex> buf(count);
    for (int field = 0; field < 2; ++field) {
        for (int comp = 0; comp < 3; ++comp) {
            parallel_for(N, [&](int ix) {
                for (int iy = 0; iy < N; ++iy)
                    for (int iz = 0; iz < N; ++iz) {
                        const size_t q = im.index(ix, iy, iz);
                        const Vec3 K{im.kcomp(ix), im.kcomp(iy), im.kcomp(iz)};
                        const double Kmag = K.norm();
                        if (Kmag == 0.0 || im.nyquist(ix) || im.nyquist(iy) || im.nyquist(iz)) {
                            buf[q] = 0.0;
                            continue;
                        }
                        const Vec3 khat = K / Kmag;
                        const double omega = Kmag;
                        const Vec3C V = im.mode_amplitude(khat, omega, q);
                        const Complex phase(std::cos(omega * T), -std::sin(omega * T));
                        const Complex i1(0.0, 1.0);
                        Vec3C term;
                        if (field == 0) {
                            term = i1 * std::sqrt(omega / 2.0) * phase * V;
                        } else {
                            term = i1 * std::sqrt(omega / 2.0) * phase * (Vec3C(khat).cross(V));
                        }
                        buf[q] = comp == 0 ? term.x : comp == 1 ? term.y : term.z;
                    }
            });
            synthesis_fft(buf, g, im.kaxis);
            for (size_t q = 0; q < count; ++q) {
                const double val = 2.0 * buf[q].real() * (field == 0 ? c : 1.0);
                Vec3& dst = field == 0 ? out.E[q] : out.B[q];
                if (comp == 0) dst.x = val;
                else if (comp == 1) dst.y = val;
                else dst.z = val;
            }
        }
    }
    return out;
}

namespace {

// shared sweep over modes for the discrete-sum observables
template <typename Fn>
double mode_sum(const FieldSpectrum::Impl& im, const GridSpec& g, Fn&& per_mode) {
    const int N = im.N();
    double acc = 0.0;
    const double w3 = 1.0 / std::pow(2.0 * g.half_width, 3); // dk^3/(2pi)^3
    for (int ix = 0; ix < N; ++ix)
        for (int iy = 0; iy < N; ++iy)
            for (int iz = 0; iz < N; ++iz) {
                const Vec3 K{im.kcomp(ix), im.kcomp(iy), im.kcomp(iz)};
                const double Kmag = K.norm();
                if (Kmag == 0.0) continue;
                acc += per_mode(K, Kmag, im.index(ix, iy, iz));
            }
    return acc * w3;
}

} // namespace

double FieldSpectrum::total_photon_number() const {
    const Impl& im = *impl_;
    return mode_sum(im, grid_, [&](const Vec3& K, double Kmag, size_t q) {
        return im.mode_amplitude(K / Kmag, Kmag, q).norm2();
    });
}

double FieldSpectrum::total_energy() const {
    const Impl& im = *impl_;
    return mode_sum(im, grid_, [&](const Vec3& K, double Kmag, size_t q) {
        return Kmag * im.mode_amplitude(K / Kmag, Kmag, q).norm2();
    });
}

double FieldSpectrum::spin_helicity() const {
    const Impl& im = *impl_;
    return mode_sum(im, grid_, [&](const Vec3& K, double Kmag, size_t q) {
        const Vec3C v = im.mode_amplitude(K / Kmag, Kmag, q);
        // |a+|^2 - |a-|^2 = -i (conj(V) x V).khat
        const Complex h = Complex(0.0, -1.0) * (v.conj().cross(v)).dot(Vec3C(K / Kmag));
        return h.real();
    });
}

double FieldSpectrum::magnetic_helicity_real_space() const {
    const Impl& im = *impl_;
    return mode_sum(im, grid_, [&](const Vec3& K, double Kmag, size_t q) {
        const Vec3C bh = im.bh(q);
        const Vec3C ah = Complex(0.0, 1.0) / (Kmag * Kmag) * (Vec3C(K).cross(bh));
        return ah.cdot(bh).real();
    });
}

} // namespace knotfield::spectral
