#include "knotfield/exporters.hpp"

#include "knotfield/fields.hpp"
#include "knotfield/parallel.hpp"
#include "knotfield/quantumstate.hpp"
#include "knotfield/spectral.hpp"

#include <cstdio>
#include <fstream>
#include <random>

namespace knotfield::exporters {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_.pop_back();
    return *this;
}

void JsonWriter::comma() {
    if (!first_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
    }
}

namespace {
std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}
} // namespace

JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ += '"' + escape(k) + "\":";
    // suppress the comma the upcoming value/object would otherwise emit
    if (!first_.empty()) first_.back() = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, double v) {
    comma();
    out_ += '"' + escape(k) + "\":" + format_double(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, int v) {
    comma();
    out_ += '"' + escape(k) + "\":" + std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, bool v) {
    comma();
    out_ += '"' + escape(k) + "\":" + (v ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, const std::string& v) {
    comma();
    out_ += '"' + escape(k) + "\":\"" + escape(v) + '"';
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    out_ += '"' + escape(v) + '"';
    return *this;
}

SampledGrid sample_grid(const GridSampling& g, const KnotIndices& k, const PhysicalScales& s) {
    SampledGrid out;
    out.grid = g;
    const int N = g.points_per_axis;
    const size_t count = static_cast<size_t>(N) * N * N;
    out.E.resize(count);
    out.B.resize(count);
    out.S.resize(count);
    out.u.resize(count);
    const double dx = N > 1 ? 2.0 * g.half_width / (N - 1) : 0.0;
    parallel_for(N, [&](int ix) {
        const double X = -g.half_width + dx * ix;
        for (int iy = 0; iy < N; ++iy) {
            const double Y = -g.half_width + dx * iy;
            for (int iz = 0; iz < N; ++iz) {
                const double Z = -g.half_width + dx * iz;
                const size_t idx = (static_cast<size_t>(ix) * N + iy) * N + iz;
                const fields::FieldSample fs = fields::field_at({X, Y, Z, g.T}, k, s);
                out.E[idx] = fs.E;
                out.B[idx] = fs.B;
                out.S[idx] = fields::poynting_classical(fs, s);
                out.u[idx] = fields::energy_density(fs, s);
            }
        }
    });
    return out;
}

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw_error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    return f;
}

void put_vec(std::string& row, const Vec3& v) {
    row += ',' + format_double(v.x) + ',' + format_double(v.y) + ',' + format_double(v.z);
}
} // namespace

void write_fields_csv(const std::string& path, const SampledGrid& data) {
    auto f = open_out(path);
    f << "X,Y,Z,T,Ex,Ey,Ez,Bx,By,Bz,Sx,Sy,Sz,u\n";
    const int N = data.grid.points_per_axis;
    const double dx = N > 1 ? 2.0 * data.grid.half_width / (N - 1) : 0.0;
    for (int ix = 0; ix < N; ++ix)
        for (int iy = 0; iy < N; ++iy)
            for (int iz = 0; iz < N; ++iz) {
                const size_t idx = (static_cast<size_t>(ix) * N + iy) * N + iz;
                std::string row = format_double(-data.grid.half_width + dx * ix);
                row += ',' + format_double(-data.grid.half_width + dx * iy);
                row += ',' + format_double(-data.grid.half_width + dx * iz);
                row += ',' + format_double(data.grid.T);
                put_vec(row, data.E[idx]);
                put_vec(row, data.B[idx]);
                put_vec(row, data.S[idx]);
                row += ',' + format_double(data.u[idx]);
                f << row << '\n';
            }
    if (!f) throw_error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void write_fields_vtk(const std::string& path, const SampledGrid& data) {
    auto f = open_out(path);
    const int N = data.grid.points_per_axis;
    const double dx = N > 1 ? 2.0 * data.grid.half_width / (N - 1) : 1.0;
    f << "# vtk DataFile Version 3.0\n";
    f << "knotfield sample T=" << format_double(data.grid.T) << "\n";
    f << "ASCII\n";
    f << "DATASET STRUCTURED_POINTS\n";
    f << "DIMENSIONS " << N << ' ' << N << ' ' << N << '\n';
    f << "ORIGIN " << format_double(-data.grid.half_width) << ' '
      << format_double(-data.grid.half_width) << ' ' << format_double(-data.grid.half_width)
      << '\n';
    f << "SPACING " << format_double(dx) << ' ' << format_double(dx) << ' ' << format_double(dx)
      << '\n';
    f << "POINT_DATA " << static_cast<size_t>(N) * N * N << '\n';
    // VTK structured points iterate x fastest; our storage is z-fastest
    auto write_vectors = [&](const char* name, const std::vector<Vec3>& v) {
        f << "VECTORS " << name << " double\n";
        for (int iz = 0; iz < N; ++iz)
            for (int iy = 0; iy < N; ++iy)
                for (int ix = 0; ix < N; ++ix) {
                    const size_t idx = (static_cast<size_t>(ix) * N + iy) * N + iz;
                    f << format_double(v[idx].x) << ' ' << format_double(v[idx].y) << ' '
                      << format_double(v[idx].z) << '\n';
                }
    };
    write_vectors("E", data.E);
    write_vectors("B", data.B);
    write_vectors("S", data.S);
    f << "SCALARS u double 1\nLOOKUP_TABLE default\n";
    for (int iz = 0; iz < N; ++iz)
        for (int iy = 0; iy < N; ++iy)
            for (int ix = 0; ix < N; ++ix) {
                const size_t idx = (static_cast<size_t>(ix) * N + iy) * N + iz;
                f << format_double(data.u[idx]) << '\n';
            }
    if (!f) throw_error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void write_curve_csv(const std::string& path, const std::vector<Vec3>& points,
                     const std::vector<double>& arc) {
    auto f = open_out(path);
    f << "s,X,Y,Z\n";
    for (size_t i = 0; i < points.size(); ++i) {
        f << format_double(i < arc.size() ? arc[i] : 0.0) << ',' << format_double(points[i].x)
          << ',' << format_double(points[i].y) << ',' << format_double(points[i].z) << '\n';
    }
    if (!f) throw_error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void write_curve_vtk(const std::string& path, const std::vector<Vec3>& points, bool closed) {
    auto f = open_out(path);
    f << "# vtk DataFile Version 3.0\n";
    f << "knotfield field line\n";
    f << "ASCII\nDATASET POLYDATA\n";
    f << "POINTS " << points.size() << " double\n";
    for (const auto& p : points) {
        f << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z) << '\n';
    }
    const size_t n = points.size() + (closed ? 1 : 0);
    f << "LINES 1 " << n + 1 << '\n';
    f << n;
    for (size_t i = 0; i < points.size(); ++i) f << ' ' << i;
    if (closed) f << " 0";
    f << '\n';
    if (!f) throw_error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void write_spectral_csv(const std::string& path, const std::vector<Vec3>& kpoints,
                        const KnotIndices& k, const PhysicalScales& s) {
    auto f = open_out(path);
    f << "Kx,Ky,Kz,ReWx,ImWx,ReWy,ImWy,ReWz,ImWz,alpha_plus_sq,alpha_minus_sq\n";
    for (const auto& K : kpoints) {
        std::string row = format_double(K.x) + ',' + format_double(K.y) + ',' + format_double(K.z);
        if (K.norm() > 0.0) {
            const spectral::SpectralAmplitude amp = spectral::spectral_amplitude(K, k, s);
            for (const Complex& c : {amp.W.x, amp.W.y, amp.W.z}) {
                row += ',' + format_double(c.real()) + ',' + format_double(c.imag());
            }
            row += ',' + format_double(std::norm(amp.alpha_plus));
            row += ',' + format_double(std::norm(amp.alpha_minus));
        } else {
            row += ",0,0,0,0,0,0,0,0";
        }
        f << row << '\n';
    }
    if (!f) throw_error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void write_correlation_csv(const std::string& path, const KnotIndices& k,
                           const PhysicalScales& s, int pairs, double box_half_width,
                           uint64_t seed) {
    auto f = open_out(path);
    f << "x1,y1,z1,t1,x2,y2,z2,t2,Re_g1,Im_g1,abs_g1,g2\n";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-box_half_width, box_half_width);
    std::uniform_real_distribution<double> ut(-box_half_width / 2.0, box_half_width / 2.0);
    for (int i = 0; i < pairs; ++i) {
        const quantumstate::CorrelationPoint a{{ux(rng), ux(rng), ux(rng)}, ut(rng)};
        const quantumstate::CorrelationPoint b{{ux(rng), ux(rng), ux(rng)}, ut(rng)};
        const Complex g1 = quantumstate::g1(a, b, k, s);
        const double g2 = quantumstate::g2(a, b, k, s);
        std::string row = format_double(a.X.x) + ',' + format_double(a.X.y) + ',' +
                          format_double(a.X.z) + ',' + format_double(a.T);
        row += ',' + format_double(b.X.x) + ',' + format_double(b.X.y) + ',' +
               format_double(b.X.z) + ',' + format_double(b.T);
        row += ',' + format_double(g1.real()) + ',' + format_double(g1.imag()) + ',' +
               format_double(std::abs(g1)) + ',' + format_double(g2);
        f << row << '\n';
    }
    if (!f) throw_error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void write_text_file(const std::string& path, const std::string& content) {
    auto f = open_out(path);
    f << content;
    if (!f) throw_error(ErrorKind::IoError, "write failed for '" + path + "'");
}

} // namespace knotfield::exporters
