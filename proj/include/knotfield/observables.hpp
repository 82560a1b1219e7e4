#pragma once

#include "knotfield/core.hpp"
#include "knotfield/quadrature.hpp"

#include <string>

namespace knotfield::observables {

using quadrature::QuadResult;
using quadrature::QuadratureSpec;

// Mode-space expectation values of the knotted coherent state, evaluated from
// the reference integrands. All integrals run in the internal natural-unit
// convention (L0 = 1 inside the integral); the documented L0 powers of the
// reference closed forms are attached afterwards, and the unit-system energy
// factor is recorded in the report conventions.

QuadResult energy_expectation(const KnotIndices& k, const PhysicalScales& s,
                              const QuadratureSpec& spec = {});
QuadResult photon_number_expectation(const KnotIndices& k, const PhysicalScales& s,
                                     const QuadratureSpec& spec = {});
QuadResult spin_helicity_expectation(const KnotIndices& k, const PhysicalScales& s,
                                     const QuadratureSpec& spec = {});
QuadResult magnetic_helicity_expectation(const KnotIndices& k, const PhysicalScales& s,
                                         const QuadratureSpec& spec = {});

/// Closed-form Poynting expectation (Z-aligned at T = 0).
Vec3 poynting_expectation(const Point4& p, const KnotIndices& k, const PhysicalScales& s);

// Gamma-reduction closed forms of the same reference integrands (the "derived"
// comparators the quadrature must reproduce).
double energy_closed_derived(const KnotIndices& k, const PhysicalScales& s);
double photon_number_closed_derived(const KnotIndices& k, const PhysicalScales& s);
double spin_helicity_closed_derived(const KnotIndices& k, const PhysicalScales& s);
double magnetic_helicity_closed_derived(const KnotIndices& k, const PhysicalScales& s);

// Reference closed forms from the original derivation (audited, not asserted).
double energy_closed_reference(const KnotIndices& k, const PhysicalScales& s);
double photon_number_closed_reference(const KnotIndices& k, const PhysicalScales& s);
double spin_helicity_closed_reference(const KnotIndices& k, const PhysicalScales& s);
double magnetic_helicity_closed_reference(const KnotIndices& k, const PhysicalScales& s);

// First-principles values under field-consistent amplitudes (see spectral).
double energy_first_principles(const KnotIndices& k, const PhysicalScales& s);  // a*Sig/(2 L0)
double photon_number_first_principles(const KnotIndices& k, const PhysicalScales& s); // a*Sig/4
double spin_helicity_first_principles(const KnotIndices& k, const PhysicalScales& s); // a(nm+ls)/2
double magnetic_helicity_classical(const KnotIndices& k, const PhysicalScales& s);    // a*n*m

struct ObservableValue {
    double quadrature_value = 0.0;
    double error_estimate = 0.0;
    int nodes_used = 0;
    double closed_form_derived = 0.0;
    double closed_form_reference = 0.0;
    double rel_dev_quadrature_vs_derived = 0.0;
    double rel_dev_reference_vs_derived = 0.0;
};

struct PoyntingAudit {
    int sample_points = 0;
    uint64_t seed = 0;
    double t0_xy_max_rel_closed_form = 0.0; // |S_xy|/|S| of the closed form at T=0
    double t0_xy_max_rel_exb = 0.0;         // same for (1/mu0) E x B
    double max_rel_difference = 0.0;        // closed form vs E x B, all sampled points
    double median_magnitude_ratio = 0.0;    // |closed| / |E x B|
};

struct ObservableReport {
    KnotIndices indices;
    PhysicalScales scales;
    QuadratureSpec quadrature;
    ObservableValue energy, photon_number, spin_helicity, magnetic_helicity;
    double energy_ratio_vs_hopfion = 0.0;
    double photon_ratio_vs_hopfion = 0.0;
    double helicity_ratio_vs_hopfion = 0.0;
    double magnetic_helicity_ratio_vs_hopfion = 0.0;
    double expected_sigma_ratio = 0.0;    // (n^2+m^2+l^2+s^2)/4
    double expected_helicity_ratio = 0.0; // (mn+ls)/2
    // first-principles audit
    double fp_energy = 0.0, fp_photon_number = 0.0, fp_spin_helicity = 0.0;
    double classical_magnetic_helicity = 0.0;
    double energy_per_photon_reference = 0.0;        // ratio of the reference integrands (= c)
    double energy_per_photon_mean_frequency = 0.0;   // hbar*omega mean over the reference N weight
    double energy_per_photon_first_principles = 0.0; // = 2 hbar c / L0
    PoyntingAudit poynting;
    std::string conventions;
};

ObservableReport observable_report(const KnotIndices& k, const PhysicalScales& s,
                                   const QuadratureSpec& spec = {}, uint64_t seed = 42);

/// The (1,1,1,1) report.
ObservableReport hopfion_report(const PhysicalScales& s, const QuadratureSpec& spec = {});

std::string to_json(const ObservableReport& report);

} // namespace knotfield::observables
