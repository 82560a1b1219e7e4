#pragma once

#include "knotfield/core.hpp"

#include <string>
#include <vector>

namespace knotfield::exporters {

/// %.17g formatting: enough digits to round-trip a double, byte-stable for
/// identical inputs.
std::string format_double(double v);

/// Minimal ordered JSON emitter (objects keep insertion order; doubles are
/// written with format_double so reports are byte-reproducible).
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& key(const std::string& k);
    JsonWriter& field(const std::string& k, double v);
    JsonWriter& field(const std::string& k, int v);
    JsonWriter& field(const std::string& k, bool v);
    JsonWriter& field(const std::string& k, const std::string& v);
    JsonWriter& value(double v);
    JsonWriter& value(const std::string& v);
    std::string str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> first_;
};

struct GridSampling {
    double half_width = 0.0;
    int points_per_axis = 0;
    double T = 0.0;
};

struct SampledGrid {
    GridSampling grid;
    std::vector<Vec3> E, B, S; // Poynting
    std::vector<double> u;     // energy density
};

SampledGrid sample_grid(const GridSampling& g, const KnotIndices& k, const PhysicalScales& s);

/// CSV: header row + points_per_axis^3 rows
/// (X,Y,Z,T,Ex,...,Bz,Sx,Sy,Sz,u), 17-significant-digit fields.
void write_fields_csv(const std::string& path, const SampledGrid& data);

/// VTK legacy ASCII structured points; header "# vtk DataFile Version 3.0";
/// vector arrays E, B, S and scalar array u.
void write_fields_vtk(const std::string& path, const SampledGrid& data);

void write_curve_csv(const std::string& path, const std::vector<Vec3>& points,
                     const std::vector<double>& arc);

/// VTK legacy ASCII polydata with one polyline.
void write_curve_vtk(const std::string& path, const std::vector<Vec3>& points, bool closed);

/// Spectral dump rows: Kx,Ky,Kz,ReWx,ImWx,...,|alpha+|^2,|alpha-|^2.
void write_spectral_csv(const std::string& path, const std::vector<Vec3>& kpoints,
                        const KnotIndices& k, const PhysicalScales& s);

/// Correlation scan over seeded random point pairs:
/// x1,y1,z1,t1,x2,y2,z2,t2,Re_g1,Im_g1,abs_g1,g2.
void write_correlation_csv(const std::string& path, const KnotIndices& k,
                           const PhysicalScales& s, int pairs, double box_half_width,
                           uint64_t seed);

void write_text_file(const std::string& path, const std::string& content);

} // namespace knotfield::exporters
