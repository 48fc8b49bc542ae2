#include <cmath>
#include <sstream>

#include "npspec/io.hpp"

namespace npspec::io {

namespace {

// fixed viewport of the lambda plane
constexpr double plane_half = 0.62;
constexpr int canvas = 640;

double px(double re) { return (re + plane_half) / (2 * plane_half) * canvas; }
double py(double im) { return (plane_half - im) / (2 * plane_half) * canvas; }

void path_from_curve(std::ostringstream& out, const curves::SpectralCurve& c,
                     double sign, const char* cls) {
    out << "  <path class=\"" << cls << "\" d=\"";
    out << "M " << format_double(px(0)) << ' ' << format_double(py(0));
    for (std::size_t i = 0; i < c.values.size(); ++i)
        out << " L " << format_double(px(sign * c.values[i].real())) << ' '
            << format_double(py(sign * c.values[i].imag()));
    out << " Z\" fill=\"#4a7ab5\" fill-opacity=\"0.35\" stroke=\"#2b4a73\" "
           "stroke-width=\"0.8\"/>\n";
}

} // namespace

std::string render_regions(const spectra::SpectrumReport& report,
                           const std::vector<curves::SpectralCurve>& curves_in) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas
        << "\" height=\"" << canvas << "\" viewBox=\"0 0 " << canvas << ' '
        << canvas << "\">\n";
    out << "  <rect width=\"" << canvas << "\" height=\"" << canvas
        << "\" fill=\"white\"/>\n";
    // axes
    out << "  <line class=\"axis\" x1=\"0\" y1=\"" << format_double(py(0))
        << "\" x2=\"" << canvas << "\" y2=\"" << format_double(py(0))
        << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    out << "  <line class=\"axis\" x1=\"" << format_double(px(0))
        << "\" y1=\"0\" x2=\"" << format_double(px(0)) << "\" y2=\"" << canvas
        << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    out << "  <text x=\"" << canvas - 48 << "\" y=\""
        << format_double(py(0) - 8) << "\" font-size=\"14\">Re &#955;</text>\n";
    out << "  <text x=\"" << format_double(px(0) + 8)
        << "\" y=\"16\" font-size=\"14\">Im &#955;</text>\n";

    for (const auto& c : curves_in) {
        path_from_curve(out, c, +1.0, "curve-region");
        path_from_curve(out, c, -1.0, "curve-region-reflected");
    }
    if (report.essential_core.disk_radius) {
        const double r = *report.essential_core.disk_radius;
        out << "  <circle class=\"disk-bracket\" cx=\"" << format_double(px(0))
            << "\" cy=\"" << format_double(py(0)) << "\" r=\""
            << format_double(r / (2 * plane_half) * canvas)
            << "\" fill=\"none\" stroke=\"#b04a4a\" stroke-width=\"1.2\" "
               "stroke-dasharray=\"6 4\"/>\n";
    }
    if (report.essential_core.kind == curves::RegionSet::Kind::interval &&
        !report.essential_core.intervals.empty()) {
        const auto [lo, hi] = report.essential_core.intervals.front();
        out << "  <line class=\"essential-interval\" x1=\""
            << format_double(px(lo)) << "\" y1=\"" << format_double(py(0))
            << "\" x2=\"" << format_double(px(hi)) << "\" y2=\""
            << format_double(py(0))
            << "\" stroke=\"#2b4a73\" stroke-width=\"7\" "
               "stroke-linecap=\"round\"/>\n";
    }
    // extremal eigenvalue ticks, one per non-empty isolated interval
    auto tick = [&](double v) {
        out << "  <line class=\"eigen-tick\" x1=\"" << format_double(px(v))
            << "\" y1=\"" << format_double(py(0) - 10) << "\" x2=\""
            << format_double(px(v)) << "\" y2=\"" << format_double(py(0) + 10)
            << "\" stroke=\"#1c7a2a\" stroke-width=\"2\"/>\n";
    };
    for (const auto& [lo, hi] : report.lambda_star_intervals)
        tick(std::abs(lo) > std::abs(hi) ? lo : hi);

    out << "</svg>\n";
    return out.str();
}

} // namespace npspec::io
