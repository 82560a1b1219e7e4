#pragma once

#include "knotfield/core.hpp"
#include "knotfield/quadrature.hpp"

#include <map>
#include <string>
#include <vector>

namespace knotfield::config {

struct OutputSpec {
    std::string kind;   // fields | spectral | curves | report
    std::string path;
    std::string format; // csv | vtk | json
};

struct RunConfig {
    KnotIndices indices = hopfion_indices();
    PhysicalScales scales = PhysicalScales::natural();
    struct Grid {
        double half_width = 24.0;
        int points_per_axis = 64;
        double T = 0.0;
    } grid;
    quadrature::QuadratureSpec quadrature;
    std::vector<OutputSpec> outputs;
    uint64_t seed = 42;
    struct Trace {
        double rel_tol = 1e-9;
        double closure_tol = 1e-4;
        double max_arc = 1000.0;
        std::string which = "B"; // E | B
        int segment_budget = 4000;
    } trace;

    void validate() const;
};

/// Flat dotted key-value text (`indices.n = 2`, `output.0.kind = fields`),
/// '#' comments. parse(serialize(parse(text))) is a fixed point.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& cfg);

/// Applies one `key=value` override (the CLI --set flag).
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Seeds file: CSV rows X,Y,Z with '#' comments. Throws IoError with the
/// offending line number on malformed input.
std::vector<Vec3> load_seeds(const std::string& path);

} // namespace knotfield::config
