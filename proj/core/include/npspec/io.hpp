#pragma once

#include <optional>
#include <string>
#include <vector>

#include "npspec/geometry.hpp"
#include "npspec/spectra.hpp"

namespace npspec::io {

/// Shortest round-trip decimal form of a double (used for all emitted floats).
std::string format_double(double v);

enum class GeometryKind { cone, polyhedron };

/// Parsed geometry file: {"edges": [...]} or {"vertices": [...], "faces": [...]}.
struct GeometryFile {
    GeometryKind kind = GeometryKind::cone;
    std::vector<geom::Vec3> edges;
    geom::Polyhedron poly;
};

GeometryFile parse_geometry_json(const std::string& text);
std::string emit_geometry_json(const GeometryFile& g);

struct RunConfig {
    std::string subcommand;      // curve | cone | polyhedron | sweep | kernel
    std::string space = "energy"; // energy | weighted
    double alpha = 0.5;           // weighted exponent / curve alpha
    double beta = 0.0;            // curve subcommand
    double xi = 0.0;              // kernel subcommand
    double a = 0.0;               // kernel subcommand
    std::string kind = "m3";      // kernel subcommand
    double xi_max = 8.0;
    int xi_steps = 33;
    int panels = 16;
    int order = 10;
    int grading = 4;
    std::string input_path;
    std::string json_path;
    std::string csv_path;
    std::string svg_path;
    std::string dump_dir;
    bool echo_geometry = false;
    unsigned seed = 1;
};

std::string config_to_json(const RunConfig& cfg);

/// Report serialization; the emitted object always carries the tool version
/// and the resolved configuration.
std::string report_to_json(const spectra::SpectrumReport& report,
                           const RunConfig& cfg);

/// Branch samples as CSV with columns vertex_id, alpha, xi, lambda.
std::string branches_csv(const spectra::SpectrumReport& report);

/// Curve samples as CSV with columns xi, re, im.
std::string curve_csv(const curves::SpectralCurve& curve);

/// Static SVG of the spectral picture in the complex plane.
std::string render_regions(const spectra::SpectrumReport& report,
                           const std::vector<curves::SpectralCurve>& curves);

/// Executes a parsed command; writes artifacts, prints the main result to
/// stdout when no output path is given, maps failures to exit codes
/// (2 input/geometry, 3 not Lipschitz, 4 no convergence) and emits a
/// machine-readable error object on stderr.
int run(const RunConfig& cfg);

} // namespace npspec::io
