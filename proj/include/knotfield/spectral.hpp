#pragma once

#include "knotfield/core.hpp"

#include <memory>
#include <vector>

namespace knotfield::spectral {

struct WaveVec {
    Vec3 K;
    double Kmag = 0.0;

    static WaveVec of(const Vec3& K) { return {K, K.norm()}; }
};

struct PolarizationBasis {
    Vec3 e1, e2;
    Vec3C eplus, eminus; // (e1 + i e2)/sqrt(2), (e1 - i e2)/sqrt(2)
};

enum class Polarization { Plus, Minus };

/// Amplitude conventions. ClosedForm is the source closed form
/// alpha ~ conj(eps_lambda).W(K; n,m,l,s). FieldConsistent evaluates the same
/// kernel at relabeled indices (m,-n,-l,s), which is the amplitude function
/// whose mode expansion actually reproduces the classical initial data
/// (cross-checked against the FFT of the fields; see the conventions notes).
enum class AmplitudeModel { ClosedForm, FieldConsistent };

/// The complex spectral vector of the solution family. W(0) = 0 by the
/// continuous limit; K.W(K) = 0 identically.
Vec3C w_vector(const Vec3& K, const KnotIndices& k);

/// |W|^2 = n^2(K^2-Kz^2) + m^2(Kx^2+Ky^2) + l^2(K^2-Kx^2) + s^2(Ky^2+Kz^2)
///         + 2(ns+ml) K Ky
double w_norm_sq(const Vec3& K, const KnotIndices& k);

/// Deterministic right-handed transverse triad: e1 = normalize(z x Khat)
/// when well-defined, else x; e2 = Khat x e1.
PolarizationBasis polarization_basis(const Vec3& K);

Complex alpha(const Vec3& K, Polarization lambda, const KnotIndices& k, const PhysicalScales& s,
              AmplitudeModel model = AmplitudeModel::ClosedForm);

/// W plus both mode amplitudes at one wave vector.
struct SpectralAmplitude {
    Vec3C W;
    Complex alpha_plus, alpha_minus;
};

SpectralAmplitude spectral_amplitude(const Vec3& K, const KnotIndices& k,
                                     const PhysicalScales& s,
                                     AmplitudeModel model = AmplitudeModel::ClosedForm);

/// |alpha_+|^2 - |alpha_-|^2 at one wave vector (ClosedForm amplitudes,
/// eps_+ = (e1 + i e2)/sqrt(2) convention).
double helicity_density(const Vec3& K, const KnotIndices& k, const PhysicalScales& s);

// ---------------------------------------------------------------------------
// FFT oracle: amplitudes from the sampled t = 0 fields, and reconstruction.

struct GridSpec {
    int points_per_axis = 128;
    double half_width = 24.0;

    double dx() const { return 2.0 * half_width / points_per_axis; }
    double nyquist_k() const;
    size_t point_count() const;
};

struct GridField {
    GridSpec grid;
    std::vector<Vec3> E, B;

    static GridField sample(const GridSpec& g, double T, const KnotIndices& k,
                            const PhysicalScales& s);
    /// Relative L2 distance to a reference, optionally on a strided subgrid.
    struct L2 {
        double e, b;
    };
    L2 rel_l2_error(const GridField& ref, int stride = 1) const;
    /// Least-squares global scale gamma minimizing |gamma*this - ref|^2 (E and B jointly).
    double fit_global_scale(const GridField& ref) const;
};

/// Discrete spectral representation of one solution: the analysis transforms
/// Ehat(k), Bhat(k) over the grid modes (e^{-ik.x} convention). Provides the
/// synthesis-convention F(k) of the complex combination B + iE/c, the mode
/// amplitudes, reconstruction at any T, and discrete-sum observables.
class FieldSpectrum {
public:
    /// FFT of the sampled initial fields. Enforces the oracle contract:
    /// half_width >= 20, points_per_axis >= 64, Nyquist K >= 8, and the
    /// boundary-truncation estimate below 1e-3.
    static FieldSpectrum from_initial_data(const GridSpec& g, const KnotIndices& k,
                                           const PhysicalScales& s);

    /// Same representation synthesized from the closed-form amplitude
    /// function instead of the FFT (for cross-checking the two routes).
    static FieldSpectrum from_amplitudes(const GridSpec& g, const KnotIndices& k,
                                         const PhysicalScales& s, AmplitudeModel model);

    const GridSpec& grid() const { return grid_; }

    /// max over well-resolved modes of |K.F|/(|K||F|), amplitude-weighted.
    double transversality_error() const;

    /// Raw analysis-convention transforms at one grid mode (E scaled by 1/c).
    struct ModeView {
        Vec3 K;
        Vec3C Ehat, Bhat;
    };
    ModeView mode_view(int ix, int iy, int iz) const;
    int axis_points() const;
    double k_axis(int i) const;

    /// E, B on the grid at dimensionless time T from the mode expansion with
    /// the phase law alpha(T) = alpha(0) e^{-i omega T}.
    GridField reconstruct(double T) const;

    // Discrete-sum observables over the mode continuum (d^3k/(2pi)^3 measure).
    double total_photon_number() const; // sum |alpha|^2
    double total_energy() const;        // sum omega |alpha|^2
    double spin_helicity() const;       // sum (|a+|^2 - |a-|^2)
    /// Real-space magnetic helicity int A.B d^3x with A from the Coulomb-gauge
    /// inversion Ahat = i k x Bhat / k^2 (Parseval discrete sum).
    double magnetic_helicity_real_space() const;

    ~FieldSpectrum();
    FieldSpectrum(FieldSpectrum&&) noexcept;
    FieldSpectrum& operator=(FieldSpectrum&&) noexcept;

    struct Impl;

private:
    FieldSpectrum();
    GridSpec grid_;
    std::unique_ptr<Impl> impl_;
};

} // namespace knotfield::spectral
