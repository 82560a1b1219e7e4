#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knotfield/config.hpp"
#include "knotfield/exporters.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace knotfield;
using namespace knotfield::config;

namespace {
std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
} // namespace

TEST_CASE("config parse and round trip") {
    const std::string text = R"(# sample configuration
indices.n = 2
indices.m = 3
scales.a = 2.5
grid.points_per_axis = 32
output.0.kind = fields
output.0.path = out/f.vtk
output.0.format = vtk
seed = 7
)";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.indices.n == 2);
    CHECK(cfg.indices.m == 3);
    CHECK(cfg.scales.a == doctest::Approx(2.5));
    CHECK(cfg.grid.points_per_axis == 32);
    CHECK(cfg.outputs.size() == 1);
    CHECK(cfg.outputs[0].format == "vtk");
    CHECK(cfg.seed == 7);

    // parse . serialize . parse is a fixed point
    const std::string ser = serialize(cfg);
    const RunConfig cfg2 = parse_config(ser);
    CHECK(serialize(cfg2) == ser);
}

TEST_CASE("config rejects unknown keys and bad values") {
    CHECK_THROWS_AS(parse_config("nope = 3\n"), Error);
    CHECK_THROWS_AS(parse_config("indices.n = abc\n"), Error);
    CHECK_THROWS_AS(parse_config("scales.unit_system = imperial\n"), Error);
    CHECK_THROWS_AS(parse_config("bad line without equals\n"), Error);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.indices = KnotIndices::unchecked(2, 4, 1, 1);
    CHECK_THROWS_AS(cfg.validate(), Error);

    RunConfig cfg2;
    cfg2.grid.points_per_axis = 1;
    CHECK_THROWS_AS(cfg2.validate(), Error);

    RunConfig cfg3;
    cfg3.outputs.push_back({"fields", "", "csv"});
    CHECK_THROWS_AS(cfg3.validate(), Error);
    cfg3.outputs[0] = {"sculpture", "x.csv", "csv"};
    CHECK_THROWS_AS(cfg3.validate(), Error);
}

TEST_CASE("set override") {
    RunConfig cfg;
    apply_override(cfg, "indices.n=3");
    apply_override(cfg, "quadrature.radial_order = 24");
    CHECK(cfg.indices.n == 3);
    CHECK(cfg.quadrature.radial_order == 24);
    CHECK_THROWS_AS(apply_override(cfg, "oops"), Error);
}

TEST_CASE("seeds file parsing and error reporting") {
    const std::string path = temp_path("kf_seeds_test.csv");
    {
        std::ofstream f(path);
        f << "# seeds\n1.0, 0.0, 0.0\n0.0,1.5,0.2\n\n";
    }
    const auto seeds = load_seeds(path);
    REQUIRE(seeds.size() == 2);
    CHECK(seeds[1].y == doctest::Approx(1.5));

    {
        std::ofstream f(path);
        f << "1.0, 0.0, 0.0\nbroken row\n";
    }
    try {
        load_seeds(path);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IoError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("json writer emits ordered well-formed output") {
    exporters::JsonWriter w;
    w.begin_object();
    w.field("a", 1);
    w.key("nested");
    w.begin_object();
    w.field("x", 0.5);
    w.field("s", std::string("hi \"there\""));
    w.end_object();
    w.field("b", true);
    w.end_object();
    CHECK(w.str() == R"({"a":1,"nested":{"x":0.5,"s":"hi \"there\""},"b":true})");
}

TEST_CASE("doubles are formatted with 17 significant digits") {
    CHECK(exporters::format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(exporters::format_double(0.5) == "0.5");
}

TEST_CASE("vtk and csv field exports") {
    const PhysicalScales s = PhysicalScales::natural();
    const auto data = exporters::sample_grid({2.0, 4, 0.0}, hopfion_indices(), s);

    const std::string vtk_path = temp_path("kf_fields_test.vtk");
    exporters::write_fields_vtk(vtk_path, data);
    std::ifstream vtk(vtk_path);
    std::string line;
    std::getline(vtk, line);
    CHECK(line == "# vtk DataFile Version 3.0");
    int vectors = 0, scalars = 0;
    while (std::getline(vtk, line)) {
        if (line.rfind("VECTORS", 0) == 0) ++vectors;
        if (line.rfind("SCALARS", 0) == 0) ++scalars;
    }
    CHECK(vectors == 3); // E, B, S
    CHECK(scalars == 1); // u

    const std::string csv_path = temp_path("kf_fields_test.csv");
    exporters::write_fields_csv(csv_path, data);
    std::ifstream csv(csv_path);
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 4 * 4 * 4 + 1); // points^3 + header

    std::remove(vtk_path.c_str());
    std::remove(csv_path.c_str());
}

TEST_CASE("spectral csv carries W components and both amplitude norms") {
    const PhysicalScales s = PhysicalScales::natural();
    const std::vector<Vec3> kpts{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.5, -0.3, 0.8}};
    const std::string path = temp_path("kf_spectral_test.csv");
    exporters::write_spectral_csv(path, kpts, hopfion_indices(), s);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "Kx,Ky,Kz,ReWx,ImWx,ReWy,ImWy,ReWz,ImWz,alpha_plus_sq,alpha_minus_sq");
    int rows = 0;
    std::string line;
    while (std::getline(f, line)) ++rows;
    CHECK(rows == 3);
    std::remove(path.c_str());
}

TEST_CASE("io errors carry the path") {
    const PhysicalScales s = PhysicalScales::natural();
    const auto data = exporters::sample_grid({1.0, 2, 0.0}, hopfion_indices(), s);
    CHECK_THROWS_AS(exporters::write_fields_csv("/nonexistent_dir_kf/x.csv", data), Error);
}

TEST_CASE("deterministic serialization") {
    const PhysicalScales s = PhysicalScales::natural();
    const auto d1 = exporters::sample_grid({2.0, 3, 0.5}, hopfion_indices(), s);
    const auto d2 = exporters::sample_grid({2.0, 3, 0.5}, hopfion_indices(), s);
    const std::string p1 = temp_path("kf_det1.csv"), p2 = temp_path("kf_det2.csv");
    exporters::write_fields_csv(p1, d1);
    exporters::write_fields_csv(p2, d2);
    std::ifstream f1(p1), f2(p2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}
