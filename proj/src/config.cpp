#include "knotfield/config.hpp"

#include "knotfield/exporters.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace knotfield::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

using KeyValues = std::map<std::string, std::string>;

KeyValues split_pairs(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw_error(ErrorKind::InvalidConfig,
                        "line " + std::to_string(lineno) + ": expected key = value");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw_error(ErrorKind::InvalidConfig, "bad number for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const int d = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw_error(ErrorKind::InvalidConfig, "bad integer for " + key + ": '" + v + "'");
    }
}

void apply_pair(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "indices.n") cfg.indices.n = to_int(key, value);
    else if (key == "indices.m") cfg.indices.m = to_int(key, value);
    else if (key == "indices.l") cfg.indices.l = to_int(key, value);
    else if (key == "indices.s") cfg.indices.s = to_int(key, value);
    else if (key == "scales.a") cfg.scales.a = to_double(key, value);
    else if (key == "scales.L0") cfg.scales.L0 = to_double(key, value);
    else if (key == "scales.unit_system") {
        if (value == "natural") cfg.scales.unit_system = UnitSystem::Natural;
        else if (value == "SI") cfg.scales.unit_system = UnitSystem::SI;
        else throw_error(ErrorKind::InvalidConfig, "unit_system must be natural or SI");
    } else if (key == "grid.half_width") cfg.grid.half_width = to_double(key, value);
    else if (key == "grid.points_per_axis") cfg.grid.points_per_axis = to_int(key, value);
    else if (key == "grid.T") cfg.grid.T = to_double(key, value);
    else if (key == "quadrature.radial_order") cfg.quadrature.radial_order = to_int(key, value);
    else if (key == "quadrature.angular_order") cfg.quadrature.angular_order = to_int(key, value);
    else if (key == "quadrature.rel_tol") cfg.quadrature.rel_tol = to_double(key, value);
    else if (key == "quadrature.abs_tol") cfg.quadrature.abs_tol = to_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<uint64_t>(to_double(key, value));
    else if (key == "trace.rel_tol") cfg.trace.rel_tol = to_double(key, value);
    else if (key == "trace.closure_tol") cfg.trace.closure_tol = to_double(key, value);
    else if (key == "trace.max_arc") cfg.trace.max_arc = to_double(key, value);
    else if (key == "trace.which") {
        if (value != "E" && value != "B") {
            throw_error(ErrorKind::InvalidConfig, "trace.which must be E or B");
        }
        cfg.trace.which = value;
    } else if (key == "trace.segment_budget") cfg.trace.segment_budget = to_int(key, value);
    else if (key.rfind("output.", 0) == 0) {
        // output.<index>.<field>
        const auto rest = key.substr(7);
        const auto dot = rest.find('.');
        if (dot == std::string::npos) {
            throw_error(ErrorKind::InvalidConfig, "output keys look like output.0.kind");
        }
        const size_t idx = static_cast<size_t>(to_int(key, rest.substr(0, dot)));
        const std::string field = rest.substr(dot + 1);
        if (cfg.outputs.size() <= idx) cfg.outputs.resize(idx + 1);
        if (field == "kind") cfg.outputs[idx].kind = value;
        else if (field == "path") cfg.outputs[idx].path = value;
        else if (field == "format") cfg.outputs[idx].format = value;
        else throw_error(ErrorKind::InvalidConfig, "unknown output field '" + field + "'");
    } else {
        throw_error(ErrorKind::InvalidConfig, "unknown key '" + key + "'");
    }
}

} // namespace

void RunConfig::validate() const {
    KnotIndices::validated(indices.n, indices.m, indices.l, indices.s);
    scales.validate();
    if (grid.points_per_axis < 2) {
        throw_error(ErrorKind::InvalidConfig, "grid.points_per_axis must be >= 2");
    }
    if (!(grid.half_width > 0.0)) {
        throw_error(ErrorKind::InvalidConfig, "grid.half_width must be > 0");
    }
    for (const auto& o : outputs) {
        static const char* kinds[] = {"fields", "spectral", "curves", "report", "correlations"};
        static const char* formats[] = {"csv", "vtk", "json"};
        if (std::find_if(std::begin(kinds), std::end(kinds),
                         [&](const char* k) { return o.kind == k; }) == std::end(kinds)) {
            throw_error(ErrorKind::InvalidConfig, "unknown output kind '" + o.kind + "'");
        }
        if (std::find_if(std::begin(formats), std::end(formats), [&](const char* f) {
                return o.format == f;
            }) == std::end(formats)) {
            throw_error(ErrorKind::InvalidConfig, "unknown output format '" + o.format + "'");
        }
        if (o.path.empty()) throw_error(ErrorKind::InvalidConfig, "output path missing");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    for (const auto& [k, v] : split_pairs(text)) apply_pair(cfg, k, v);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw_error(ErrorKind::IoError, "cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const RunConfig& cfg) {
    using exporters::format_double;
    std::ostringstream out;
    out << "indices.n = " << cfg.indices.n << '\n';
    out << "indices.m = " << cfg.indices.m << '\n';
    out << "indices.l = " << cfg.indices.l << '\n';
    out << "indices.s = " << cfg.indices.s << '\n';
    out << "scales.a = " << format_double(cfg.scales.a) << '\n';
    out << "scales.L0 = " << format_double(cfg.scales.L0) << '\n';
    out << "scales.unit_system = "
        << (cfg.scales.unit_system == UnitSystem::SI ? "SI" : "natural") << '\n';
    out << "grid.half_width = " << format_double(cfg.grid.half_width) << '\n';
    out << "grid.points_per_axis = " << cfg.grid.points_per_axis << '\n';
    out << "grid.T = " << format_double(cfg.grid.T) << '\n';
    out << "quadrature.radial_order = " << cfg.quadrature.radial_order << '\n';
    out << "quadrature.angular_order = " << cfg.quadrature.angular_order << '\n';
    out << "quadrature.rel_tol = " << format_double(cfg.quadrature.rel_tol) << '\n';
    out << "quadrature.abs_tol = " << format_double(cfg.quadrature.abs_tol) << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "trace.rel_tol = " << format_double(cfg.trace.rel_tol) << '\n';
    out << "trace.closure_tol = " << format_double(cfg.trace.closure_tol) << '\n';
    out << "trace.max_arc = " << format_double(cfg.trace.max_arc) << '\n';
    out << "trace.which = " << cfg.trace.which << '\n';
    out << "trace.segment_budget = " << cfg.trace.segment_budget << '\n';
    for (size_t i = 0; i < cfg.outputs.size(); ++i) {
        out << "output." << i << ".kind = " << cfg.outputs[i].kind << '\n';
        out << "output." << i << ".path = " << cfg.outputs[i].path << '\n';
        out << "output." << i << ".format = " << cfg.outputs[i].format << '\n';
    }
    return out.str();
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw_error(ErrorKind::InvalidConfig, "--set expects key=value, got '" + assignment + "'");
    }
    std::string key = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);
    // reuse the file-format parser for trimming
    apply_pair(cfg, key.erase(key.find_last_not_of(" \t") + 1),
               value.erase(0, value.find_first_not_of(" \t")));
}

std::vector<Vec3> load_seeds(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw_error(ErrorKind::IoError, "cannot read seeds file '" + path + "'");
    std::vector<Vec3> seeds;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        Vec3 v;
        if (!(row >> v.x >> v.y >> v.z)) {
            throw_error(ErrorKind::IoError,
                        "seeds file '" + path + "' line " + std::to_string(lineno) +
                            ": expected X,Y,Z");
        }
        std::string extra;
        if (row >> extra) {
            throw_error(ErrorKind::IoError,
                        "seeds file '" + path + "' line " + std::to_string(lineno) +
                            ": trailing content '" + extra + "'");
        }
        seeds.push_back(v);
    }
    return seeds;
}

} // namespace knotfield::config
