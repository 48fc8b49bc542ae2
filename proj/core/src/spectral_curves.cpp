#include "npspec/spectral_curves.hpp"

#include <algorithm>
#include <cmath>

namespace npspec::curves {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_params(double alpha, double beta, bool allow_alpha_one) {
    const double hi = allow_alpha_one ? 1.0 + 1e-15 : 1.0;
    if (!(alpha >= 0.0 && (allow_alpha_one ? alpha <= hi : alpha < 1.0)))
        throw OutOfRange("alpha outside [0,1)");
    if (!(beta > 0.0 && beta < 2.0 * pi))
        throw OutOfRange("beta outside (0, 2pi)");
}

// sin(a z)/sin(pi z) for a in [0, pi], z = x + i xi with x in (0, 1/2], xi >= 0,
// written so only decaying exponentials appear.
Complex sin_ratio(double a, double x, double xi) {
    const Complex i(0.0, 1.0);
    const Complex z(x, xi);
    if (xi < 8.0) return std::sin(a * z) / std::sin(pi * z);
    const Complex lead = std::exp(i * (pi - a) * z); // |.| = e^{-(pi-a) xi} <= 1
    const Complex num = 1.0 - std::exp(2.0 * i * a * z);
    const Complex den = 1.0 - std::exp(2.0 * i * pi * z);
    return lead * num / den;
}

} // namespace

Complex sigma_point(double alpha, double beta, double xi) {
    check_params(alpha, beta, false);
    const double x = 0.5 * (1.0 - alpha);
    double a = pi - beta;
    double sign = 1.0;
    if (a < 0) { // sin is odd
        a = -a;
        sign = -1.0;
    }
    if (a == 0.0) return {0.0, 0.0};
    Complex v = xi >= 0 ? sin_ratio(a, x, xi) : std::conj(sin_ratio(a, x, -xi));
    return 0.5 * sign * v;
}

double sigma_max(double alpha, double beta) {
    check_params(alpha, beta, true);
    if (alpha >= 1.0) return 0.5 * std::abs(1.0 - beta / pi);
    const double x = 0.5 * (1.0 - alpha);
    return 0.5 * std::abs(std::sin((pi - beta) * x) / std::sin(pi * x));
}

SpectralCurve sample_curve(double alpha, double beta, std::size_t n) {
    check_params(alpha, beta, false);
    if (n < 9) throw InvalidParams("curve grid too small");
    if (n % 2 == 0) ++n; // keep xi = 0 on the grid: the max sits there
    SpectralCurve c;
    c.alpha = alpha;
    c.beta = beta;
    const double decay = std::min({beta, 2.0 * pi - beta, pi});
    const double xi_cut = 40.0 / decay;
    const double k = 3.0, tk = std::tanh(k);
    c.xi.reserve(n);
    c.values.reserve(n);
    const std::size_t half = n / 2;
    for (std::size_t j = 0; j < n; ++j) {
        double xi;
        if (j == half) {
            xi = 0.0;
        } else {
            const double u = -1.0 + 2.0 * static_cast<double>(j) / (n - 1);
            xi = xi_cut * std::tanh(k * u) / tk;
        }
        c.xi.push_back(xi);
        c.values.push_back(sigma_point(alpha, beta, xi));
    }
    return c;
}

namespace {

// closed polyline through the origin: 0 -> v0 -> ... -> v_{n-1} -> 0
double point_segment_dist(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double L2 = std::norm(ab);
    if (L2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / L2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

} // namespace

int winding_number(Complex lambda, const SpectralCurve& curve, bool reflected) {
    const double sgn = reflected ? -1.0 : 1.0;
    std::vector<Complex> pts;
    pts.reserve(curve.values.size() + 2);
    pts.push_back({0.0, 0.0});
    for (const auto& v : curve.values) pts.push_back(sgn * v);
    pts.push_back({0.0, 0.0});

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (point_segment_dist(lambda, pts[k], pts[k + 1]) < 1e-9)
            throw OnCurve("lambda lies on the sampled curve");
        const Complex u = pts[k] - lambda, v = pts[k + 1] - lambda;
        total += std::atan2((std::conj(u) * v).imag(), (std::conj(u) * v).real());
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

bool region_membership(Complex lambda, const std::vector<double>& angles,
                       double alpha) {
    for (double beta : angles) {
        if (std::abs(pi - beta) < 1e-14) {
            if (std::abs(lambda) < 1e-9) return true; // curve degenerates to {0}
            continue;
        }
        const SpectralCurve c = sample_curve(alpha, beta);
        try {
            if (winding_number(lambda, c, false) != 0) return true;
            if (winding_number(lambda, c, true) != 0) return true;
        } catch (const OnCurve&) {
            return true;
        }
    }
    return std::abs(lambda) < 1e-9; // every curve passes through the origin
}

RegionSet polygon_spectrum_2d(const std::vector<double>& angles, Space2D space) {
    if (angles.empty()) throw InvalidParams("no corner angles");
    RegionSet r;
    if (space == Space2D::sobolev_half) {
        double m = 0.0;
        for (double b : angles) {
            check_params(0.0, b, false);
            m = std::max(m, 0.5 * std::abs(1.0 - b / pi));
        }
        r.kind = RegionSet::Kind::interval;
        r.intervals.push_back({-m, m});
        return r;
    }
    r.kind = RegionSet::Kind::curve_union;
    for (double b : angles) r.curves.push_back(sample_curve(0.0, b));
    return r;
}

} // namespace npspec::curves
