#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "npspec/io.hpp"
#include "npspec/mellin.hpp"
#include "npspec/nystrom.hpp"
#include "npspec/version.hpp"

namespace npspec::io {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + path);
    out << content;
}

spectra::SweepOptions sweep_options(const RunConfig& cfg) {
    spectra::SweepOptions opt;
    opt.xi_max = cfg.xi_max;
    opt.xi_steps = cfg.xi_steps;
    opt.mesh.panels = cfg.panels;
    opt.mesh.order = cfg.order;
    opt.mesh.grading = cfg.grading;
    return opt;
}

void dump_matrices(const RunConfig& cfg, const geom::PolyhedralCone& cone) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.dump_dir);
    const auto mesh = std::make_shared<nys::Mesh>(
        nys::build_mesh(cone.cross_section, cfg.panels, cfg.order, cfg.grading));
    const double alpha = cfg.space == "weighted" ? cfg.alpha : 0.0;
    const auto sys = nys::assemble(mesh, 0.0, alpha);
    auto write_matrix = [&](const Eigen::MatrixXd& M, const std::string& name) {
        std::ofstream out(fs::path(cfg.dump_dir) / (name + ".bin"), std::ios::binary);
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            for (Eigen::Index c = 0; c < M.cols(); ++c) {
                const double v = M(r, c);
                out.write(reinterpret_cast<const char*>(&v), sizeof(double));
            }
    };
    write_matrix(sys.A, "A");
    write_matrix(sys.B, "B");
    ordered_json meta;
    meta["rows"] = sys.A.rows();
    meta["cols"] = sys.A.cols();
    meta["layout"] = "row-major float64";
    meta["xi"] = sys.xi;
    meta["alpha"] = sys.alpha;
    meta["panels"] = cfg.panels;
    meta["order"] = cfg.order;
    meta["grading"] = cfg.grading;
    meta["kernel_tol"] = sys.kernel_tol;
    meta["files"] = {{"A", "A.bin"}, {"B", "B.bin"}};
    write_file((fs::path(cfg.dump_dir) / "meta.json").string(), meta.dump(2) + "\n");
}

void emit_report(const RunConfig& cfg, const spectra::SpectrumReport& rep) {
    const std::string json = report_to_json(rep, cfg);
    if (!cfg.json_path.empty())
        write_file(cfg.json_path, json);
    else
        std::cout << json;
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, branches_csv(rep));
    if (!cfg.svg_path.empty())
        write_file(cfg.svg_path, render_regions(rep, rep.essential_core.curves));
}

int run_curve(const RunConfig& cfg) {
    const auto curve = curves::sample_curve(cfg.alpha, cfg.beta);
    if (!cfg.csv_path.empty()) write_file(cfg.csv_path, curve_csv(curve));
    ordered_json j;
    j["tool"] = {{"name", "npspec"}, {"version", npspec::version}};
    j["config"] = ordered_json::parse(config_to_json(cfg));
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["max_modulus"] = curves::sigma_max(cfg.alpha, cfg.beta);
    j["samples"] = curve.xi.size();
    const std::string text = j.dump(2) + "\n";
    if (!cfg.json_path.empty())
        write_file(cfg.json_path, text);
    else
        std::cout << text;
    return 0;
}

int run_kernel(const RunConfig& cfg) {
    mellin::MellinValue v;
    if (cfg.kind == "m3")
        v = mellin::mellin_m3({1.5, cfg.xi}, cfg.a);
    else if (cfg.kind == "m1")
        v = mellin::mellin_m1({0.5, cfg.xi}, cfg.a);
    else
        throw InvalidParams("kernel kind must be m3 or m1");
    ordered_json j;
    j["kind"] = cfg.kind;
    j["xi"] = cfg.xi;
    j["a"] = cfg.a;
    j["value"] = {{"re", v.value.real()}, {"im", v.value.imag()}};
    j["error_estimate"] = v.err_est;
    j["singular_regime"] = v.singular;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_cone(const RunConfig& cfg) {
    const auto g = parse_geometry_json(read_file(cfg.input_path));
    if (g.kind != GeometryKind::cone)
        throw ParseError("cone subcommand expects a cone geometry file");
    if (cfg.echo_geometry) {
        std::cout << emit_geometry_json(g);
        return 0;
    }
    const auto cone = geom::cone_from_edges(g.edges);
    const auto opt = sweep_options(cfg);
    const auto rep = cfg.space == "weighted"
                         ? spectra::cone_weighted_spectrum(cone, cfg.alpha, opt)
                         : spectra::cone_energy_spectrum(cone, opt);
    if (!cfg.dump_dir.empty()) dump_matrices(cfg, cone);
    emit_report(cfg, rep);
    return 0;
}

int run_sweep(const RunConfig& cfg) {
    const auto g = parse_geometry_json(read_file(cfg.input_path));
    if (g.kind != GeometryKind::cone)
        throw ParseError("sweep subcommand expects a cone geometry file");
    if (cfg.echo_geometry) {
        std::cout << emit_geometry_json(g);
        return 0;
    }
    const auto cone = geom::cone_from_edges(g.edges);
    spectra::SpectrumReport rep;
    rep.space = spectra::Space::weighted;
    rep.alpha = cfg.alpha;
    rep.angles = cone.cross_section.angles;
    rep.branches = spectra::sweep_branches(cone, cfg.alpha, sweep_options(cfg));
    rep.essential_core.kind = curves::RegionSet::Kind::curve_union;
    emit_report(cfg, rep);
    return 0;
}

int run_polyhedron(const RunConfig& cfg) {
    const auto g = parse_geometry_json(read_file(cfg.input_path));
    if (g.kind != GeometryKind::polyhedron)
        throw ParseError("polyhedron subcommand expects a polyhedron geometry file");
    if (cfg.echo_geometry) {
        std::cout << emit_geometry_json(g);
        return 0;
    }
    const auto space = cfg.space == "weighted" ? spectra::Space::weighted
                                               : spectra::Space::energy;
    const auto rep = spectra::polyhedron_essential_spectrum(g.poly, space,
                                                            cfg.alpha,
                                                            sweep_options(cfg));
    emit_report(cfg, rep);
    return 0;
}

int error_exit(const char* type, const std::exception& e, int code) {
    ordered_json j;
    j["error"] = {{"type", type}, {"message", e.what()}, {"exit_code", code}};
    std::cerr << j.dump() << "\n";
    return code;
}

} // namespace

int run(const RunConfig& cfg) {
    try {
        if (cfg.subcommand == "curve") return run_curve(cfg);
        if (cfg.subcommand == "kernel") return run_kernel(cfg);
        if (cfg.subcommand == "cone") return run_cone(cfg);
        if (cfg.subcommand == "sweep") return run_sweep(cfg);
        if (cfg.subcommand == "polyhedron") return run_polyhedron(cfg);
        throw InvalidParams("unknown subcommand: " + cfg.subcommand);
    } catch (const NotLipschitz& e) {
        return error_exit("NotLipschitz", e, 3);
    } catch (const NoConvergence& e) {
        return error_exit("NoConvergence", e, 4);
    } catch (const ParseError& e) {
        return error_exit("ParseError", e, 2);
    } catch (const DegenerateGeometry& e) {
        return error_exit("DegenerateGeometry", e, 2);
    } catch (const SelfIntersecting& e) {
        return error_exit("SelfIntersecting", e, 2);
    } catch (const InvalidMesh& e) {
        return error_exit("InvalidMesh", e, 2);
    } catch (const OutOfRange& e) {
        return error_exit("OutOfRange", e, 2);
    } catch (const InvalidParams& e) {
        return error_exit("InvalidParams", e, 2);
    } catch (const Error& e) {
        return error_exit("Error", e, 1);
    } catch (const std::exception& e) {
        return error_exit("Internal", e, 1);
    }
}

} // namespace npspec::io
