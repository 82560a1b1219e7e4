#include "knotfield/config.hpp"
#include "knotfield/exporters.hpp"
#include "knotfield/fields.hpp"
#include "knotfield/observables.hpp"
#include "knotfield/quadrature.hpp"
#include "knotfield/spectral.hpp"
#include "knotfield/topology.hpp"
#include "knotfield/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace kf = knotfield;

namespace {

kf::config::RunConfig load(const std::string& path, const std::vector<std::string>& sets) {
    kf::config::RunConfig cfg =
        path.empty() ? kf::config::RunConfig{} : kf::config::load_config(path);
    for (const auto& s : sets) kf::config::apply_override(cfg, s);
    cfg.validate();
    return cfg;
}

void ensure_parent(const std::string& path) {
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

int cmd_fields(const kf::config::RunConfig& cfg) {
    bool any = false;
    for (const auto& o : cfg.outputs) {
        any = any || o.kind == "fields" || o.kind == "spectral";
    }
    if (!any) {
        kf::throw_error(kf::ErrorKind::InvalidConfig,
                        "fields command needs at least one 'fields' or 'spectral' output");
    }
    kf::exporters::SampledGrid data;
    bool sampled = false;
    for (const auto& o : cfg.outputs) {
        if (o.kind != "fields" && o.kind != "spectral") continue;
        ensure_parent(o.path);
        if (o.kind == "fields") {
            if (!sampled) {
                data = kf::exporters::sample_grid(
                    {cfg.grid.half_width, cfg.grid.points_per_axis, cfg.grid.T}, cfg.indices,
                    cfg.scales);
                sampled = true;
            }
            if (o.format == "csv") kf::exporters::write_fields_csv(o.path, data);
            else if (o.format == "vtk") kf::exporters::write_fields_vtk(o.path, data);
            else kf::throw_error(kf::ErrorKind::InvalidConfig, "fields outputs are csv or vtk");
        } else if (o.kind == "spectral") {
            if (o.format != "csv") {
                kf::throw_error(kf::ErrorKind::InvalidConfig, "spectral outputs are csv");
            }
            // K nodes of the observable quadrature rule
            const auto nodes = kf::quadrature::nodes_k3(cfg.quadrature.radial_order,
                                                        cfg.quadrature.angular_order,
                                                        cfg.quadrature.radial_scale);
            std::vector<kf::Vec3> kpts;
            kpts.reserve(nodes.size());
            for (const auto& nd : nodes) kpts.push_back(nd.K);
            kf::exporters::write_spectral_csv(o.path, kpts, cfg.indices, cfg.scales);
        }
    }
    return 0;
}

int cmd_observables(const kf::config::RunConfig& cfg) {
    const auto rep =
        kf::observables::observable_report(cfg.indices, cfg.scales, cfg.quadrature, cfg.seed);
    const std::string json = kf::observables::to_json(rep);
    bool wrote = false;
    for (const auto& o : cfg.outputs) {
        if (o.kind == "report") {
            if (o.format != "json") {
                kf::throw_error(kf::ErrorKind::InvalidConfig, "report outputs are json");
            }
            ensure_parent(o.path);
            kf::exporters::write_text_file(o.path, json);
            wrote = true;
        } else if (o.kind == "correlations") {
            if (o.format != "csv") {
                kf::throw_error(kf::ErrorKind::InvalidConfig, "correlation outputs are csv");
            }
            ensure_parent(o.path);
            kf::exporters::write_correlation_csv(o.path, cfg.indices, cfg.scales, 64,
                                                 cfg.grid.half_width / 8.0, cfg.seed);
            wrote = true;
        }
    }
    if (!wrote) std::cout << json << '\n';
    return 0;
}

int cmd_verify(const kf::config::RunConfig& cfg, const std::string& suite) {
    const auto checks = kf::verify::run_suite(suite, cfg);
    return kf::verify::report(checks, std::cout);
}

int cmd_trace(const kf::config::RunConfig& cfg, const std::string& seeds_path,
              const std::string& out_dir) {
    const auto seeds = kf::config::load_seeds(seeds_path);
    if (seeds.empty()) {
        kf::throw_error(kf::ErrorKind::IoError, "seeds file '" + seeds_path + "' has no rows");
    }
    std::filesystem::create_directories(out_dir);
    kf::topology::TraceOptions opts;
    opts.rel_tol = cfg.trace.rel_tol;
    opts.closure_tol = cfg.trace.closure_tol;
    opts.max_arc = cfg.trace.max_arc;
    const auto which =
        cfg.trace.which == "E" ? kf::topology::FieldKind::E : kf::topology::FieldKind::B;

    std::vector<kf::topology::Curve> curves(seeds.size());
    std::vector<std::string> status(seeds.size(), "ok");
    for (size_t i = 0; i < seeds.size(); ++i) {
        try {
            curves[i] = kf::topology::trace_fieldline(which, seeds[i], cfg.indices, cfg.scales,
                                                      opts);
            if (!curves[i].closed) status[i] = "no_closure";
        } catch (const kf::Error& e) {
            if (e.kind() != kf::ErrorKind::NullFieldRegion) throw;
            status[i] = "null_field_region";
        }
        const std::string base = out_dir + "/curve_" + std::to_string(i);
        if (status[i] != "null_field_region") {
            kf::exporters::write_curve_csv(base + ".csv", curves[i].points, curves[i].arc);
            kf::exporters::write_curve_vtk(base + ".vtk", curves[i].points, curves[i].closed);
        }
    }

    kf::exporters::JsonWriter out;
    out.begin_object();
    out.field("field", cfg.trace.which);
    out.key("curves");
    out.begin_object();
    for (size_t i = 0; i < seeds.size(); ++i) {
        out.key("curve_" + std::to_string(i));
        out.begin_object();
        out.field("status", status[i]);
        out.field("closed", curves[i].closed);
        out.field("arc_length", curves[i].arc_length);
        out.field("closure_gap", curves[i].closure_gap);
        if (curves[i].closed) {
            try {
                const auto w = kf::topology::winding_numbers(curves[i]);
                out.field("winding_toroidal", w.toroidal);
                out.field("winding_poloidal", w.poloidal);
                out.field("winding_residual", w.residual);
            } catch (const kf::Error& e) {
                out.field("winding_error", std::string(e.what()));
            }
        }
        out.end_object();
    }
    out.end_object();
    out.key("linking");
    out.begin_object();
    for (size_t i = 0; i < seeds.size(); ++i) {
        for (size_t j = i + 1; j < seeds.size(); ++j) {
            if (!curves[i].closed || !curves[j].closed) continue;
            const std::string key = std::to_string(i) + "_" + std::to_string(j);
            try {
                const auto a = kf::topology::resample(curves[i], cfg.trace.segment_budget);
                const auto b = kf::topology::resample(curves[j], cfg.trace.segment_budget);
                const auto lk = kf::topology::linking_number(a, b);
                out.key(key);
                out.begin_object();
                out.field("value", lk.value);
                out.field("raw", lk.raw);
                out.field("residual", lk.residual);
                out.end_object();
            } catch (const kf::Error& e) {
                out.field(key, std::string(e.what()));
            }
        }
    }
    out.end_object();
    out.end_object();
    kf::exporters::write_text_file(out_dir + "/summary.json", out.str());
    std::cout << "traced " << seeds.size() << " seeds into " << out_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"knotted electromagnetic field toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string suite = "all";
    std::string seeds_path;
    std::string out_dir = "trace_out";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file");
        cmd->add_option("--set", sets, "override key=value")->take_all();
    };
    auto* fields_cmd = app.add_subcommand("fields", "sample E, B, S, u on a grid");
    add_common(fields_cmd);
    auto* obs_cmd = app.add_subcommand("observables", "coherent-state observable report");
    add_common(obs_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    add_common(verify_cmd);
    verify_cmd->add_option("--suite", suite, "identities|maxwell|topology|quantum|all");
    auto* trace_cmd = app.add_subcommand("trace", "trace field lines from seeds");
    add_common(trace_cmd);
    trace_cmd->add_option("--seeds", seeds_path, "CSV of X,Y,Z seeds")->required();
    trace_cmd->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto cfg = load(config_path, sets);
        if (fields_cmd->parsed()) return cmd_fields(cfg);
        if (obs_cmd->parsed()) return cmd_observables(cfg);
        if (verify_cmd->parsed()) return cmd_verify(cfg, suite);
        if (trace_cmd->parsed()) return cmd_trace(cfg, seeds_path, out_dir);
    } catch (const kf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case kf::ErrorKind::IoError: return 3;
            case kf::ErrorKind::UsageError:
            case kf::ErrorKind::InvalidConfig: return 2;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
