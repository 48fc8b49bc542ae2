#include <CLI11.hpp>

#include "npspec/io.hpp"
#include "npspec/version.hpp"

namespace {

void add_mesh_flags(CLI::App* cmd, npspec::io::RunConfig& cfg) {
    cmd->add_option("--panels", cfg.panels, "panels per arc");
    cmd->add_option("--order", cfg.order, "Gauss order per panel");
    cmd->add_option("--grading", cfg.grading, "corner grading levels");
}

void add_output_flags(CLI::App* cmd, npspec::io::RunConfig& cfg) {
    cmd->add_option("--json", cfg.json_path, "write the report JSON here");
    cmd->add_option("--csv", cfg.csv_path, "write CSV output here");
    cmd->add_option("--svg", cfg.svg_path, "write the region plot here");
}

void add_spectrum_flags(CLI::App* cmd, npspec::io::RunConfig& cfg) {
    cmd->add_option("--space", cfg.space, "energy or weighted")
        ->check(CLI::IsMember({"energy", "weighted"}));
    cmd->add_option("--alpha", cfg.alpha, "weight exponent in [0,1)");
    cmd->add_option("--xi-max", cfg.xi_max, "sweep endpoint");
    cmd->add_option("--xi-steps", cfg.xi_steps, "sweep grid points");
    cmd->add_option("--dump-matrices", cfg.dump_dir,
                    "dump the assembled matrices into this directory");
    cmd->add_flag("--echo-geometry", cfg.echo_geometry,
                  "re-emit the parsed geometry and exit");
    cmd->add_option("--seed", cfg.seed, "seed for randomized diagnostics");
    add_mesh_flags(cmd, cfg);
    add_output_flags(cmd, cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra of the double layer potential on polyhedral cones "
                 "and polyhedra"};
    app.set_version_flag("--version", npspec::version);
    app.require_subcommand(1);

    npspec::io::RunConfig cfg;

    auto* curve = app.add_subcommand("curve", "sample a corner symbol curve");
    curve->add_option("--alpha", cfg.alpha, "weight exponent in [0,1)")->required();
    curve->add_option("--beta", cfg.beta, "corner opening angle in (0, 2pi)")
        ->required();
    curve->add_option("--csv", cfg.csv_path, "write samples as CSV (xi, re, im)");
    curve->add_option("--json", cfg.json_path, "write the summary JSON here");

    auto* kernel = app.add_subcommand("kernel", "evaluate a Mellin power integral");
    kernel->add_option("--xi", cfg.xi, "imaginary offset on the symmetry line")
        ->required();
    kernel->add_option("--a", cfg.a, "inner product of the two points")->required();
    kernel->add_option("--kind", cfg.kind, "m3 or m1")
        ->check(CLI::IsMember({"m3", "m1"}));

    auto* cone = app.add_subcommand("cone", "spectrum report of a polyhedral cone");
    cone->add_option("input", cfg.input_path, "cone geometry JSON")->required();
    add_spectrum_flags(cone, cfg);

    auto* sweep = app.add_subcommand("sweep", "eigenvalue branches over xi");
    sweep->add_option("input", cfg.input_path, "cone geometry JSON")->required();
    sweep->add_option("--alpha", cfg.alpha, "weight exponent in [0,1)");
    sweep->add_option("--xi-max", cfg.xi_max, "sweep endpoint");
    sweep->add_option("--xi-steps", cfg.xi_steps, "sweep grid points");
    sweep->add_flag("--echo-geometry", cfg.echo_geometry,
                    "re-emit the parsed geometry and exit");
    add_mesh_flags(sweep, cfg);
    add_output_flags(sweep, cfg);

    auto* poly = app.add_subcommand("polyhedron",
                                    "essential spectrum of a bounded polyhedron");
    poly->add_option("input", cfg.input_path, "polyhedron geometry JSON")
        ->required();
    add_spectrum_flags(poly, cfg);

    CLI11_PARSE(app, argc, argv);

    if (curve->parsed()) cfg.subcommand = "curve";
    if (kernel->parsed()) cfg.subcommand = "kernel";
    if (cone->parsed()) cfg.subcommand = "cone";
    if (sweep->parsed()) cfg.subcommand = "sweep";
    if (poly->parsed()) cfg.subcommand = "polyhedron";

    return npspec::io::run(cfg);
}
