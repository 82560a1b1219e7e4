#pragma once

#include "knotfield/core.hpp"
#include "knotfield/quadrature.hpp"
#include "knotfield/spectral.hpp"

#include <vector>

namespace knotfield::quantumstate {

using spectral::AmplitudeModel;
using spectral::Polarization;

/// Dimensionless spacetime point for correlation functions.
struct CorrelationPoint {
    Vec3 X;
    double T = 0.0;
};

struct EplusOptions {
    // radial panels for the 1D mode integrals after the exact angular
    // reduction (the spectral vector has angular degree <= 2)
    double k_max = 45.0;
    int panel_order = 12;
    AmplitudeModel model = AmplitudeModel::ClosedForm;
};

/// Positive-frequency electric field of the knotted coherent state.
Vec3C e_plus(const CorrelationPoint& p, const KnotIndices& k, const PhysicalScales& s,
             const EplusOptions& opts = {});

/// Normalized first-order correlation G1(x,y)/sqrt(G1(x,x) G1(y,y)).
Complex g1(const CorrelationPoint& x, const CorrelationPoint& y, const KnotIndices& k,
           const PhysicalScales& s, const EplusOptions& opts = {});

/// Normalized second-order correlation; equals 1 for any coherent state.
double g2(const CorrelationPoint& x, const CorrelationPoint& y, const KnotIndices& k,
          const PhysicalScales& s, const EplusOptions& opts = {});

struct Mode {
    Vec3 K;
    Polarization lambda = Polarization::Plus;
    double weight = 0.0; // quadrature weight including the (2pi)^-3 measure
    Complex amplitude;
};

/// The state on quadrature nodes: a discretization of the mode continuum.
class ModeSet {
public:
    static ModeSet build(const KnotIndices& k, const PhysicalScales& s,
                         const quadrature::QuadratureSpec& spec = {},
                         AmplitudeModel model = AmplitudeModel::ClosedForm);

    const std::vector<Mode>& modes() const { return modes_; }
    size_t size() const { return modes_.size(); }
    const Mode& mode(size_t i) const;

    /// Phase evolution alpha -> alpha e^{-i omega t}; norms unchanged.
    ModeSet evolved(double t) const;

    double total_photon_number() const; // sum w |alpha|^2
    double total_energy() const;        // sum w omega |alpha|^2
    double spin_helicity() const;       // sum w lambda |alpha|^2

private:
    std::vector<Mode> modes_;
    PhysicalScales scales_;
};

struct ModeStatistics {
    double mean = 0.0;
    double variance = 0.0;
    double fano = 0.0;
};

/// Poissonian photon statistics of one mode: mean = variance = |alpha|^2.
ModeStatistics mode_statistics(const ModeSet& ms, size_t mode_index);

/// Monte-Carlo counterpart for the statistics demo (seeded, reproducible).
ModeStatistics sampled_statistics(const ModeSet& ms, size_t mode_index, int draws, uint64_t seed);

struct QuadratureUncertainty {
    double mean_x = 0.0, mean_p = 0.0;
    double var_x = 0.0, var_p = 0.0;
    double product = 0.0;
};

/// Coherent-state quadrature moments: variances 1/2, minimum uncertainty.
QuadratureUncertainty quadrature_uncertainties(const ModeSet& ms, size_t mode_index);

} // namespace knotfield::quantumstate
