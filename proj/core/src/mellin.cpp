#include "npspec/mellin.hpp"

#include <cmath>

namespace npspec::mellin {

namespace {

constexpr double pi = 3.14159265358979323846;

// log(4 sinh^2(u/2) + 2 eps) via 4 sinh^2(u/2) = e^u (1 - e^{-u})^2, stable
// for any u >= 0; working with the logarithm keeps the integrand free of
// inf * 0 when a growing exponential factor meets the decaying power.
inline double log_chord2(double u, double eps) {
    const double em = std::exp(-u);
    const double g = 1.0 - em;
    return u + std::log(g * g + 2.0 * eps * em);
}

// Breakpoints for the half-line integral: resolve the peak scale sqrt(2 eps),
// the unit scale, the oscillation scale of e^{i Im(nu) u}, and the exponential
// tail with decay rate `decay`.
std::vector<double> half_line_breaks(double eps, double im_nu, double decay) {
    std::vector<double> b;
    b.push_back(0.0);
    const double s0 = std::clamp(std::sqrt(2.0 * eps), 1e-8, 0.5);
    for (double s = s0; s < 1.0; s *= 4.0) b.push_back(s);
    b.push_back(1.0);
    const double U = 42.0 / std::max(decay, 1e-12) + 4.0;
    for (double s = 2.0; s < U; s *= 2.0) b.push_back(s);
    b.push_back(U);
    const double osc = std::abs(im_nu);
    if (osc > 50.0) {
        // Subdivide so each panel sees a bounded number of oscillations.
        std::vector<double> fine;
        const double cap = 2.0 * pi / osc;
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            fine.push_back(b[i]);
            const double len = b[i + 1] - b[i];
            if (len > cap) {
                int n = static_cast<int>(std::ceil(len / cap));
                n = std::min(n, 4000);
                for (int k = 1; k < n; ++k)
                    fine.push_back(b[i] + len * k / n);
            }
        }
        fine.push_back(b.back());
        return fine;
    }
    return b;
}

// Closed forms of int_0^1 2 (u^2 + c^2)^{-p} du.
inline double comparison_moment_m3(double c2) {
    return 2.0 / (c2 * std::sqrt(1.0 + c2));
}
inline double comparison_moment_m1(double c2) {
    return 2.0 * std::asinh(1.0 / std::sqrt(c2));
}

void check_a(double a) {
    if (a >= 1.0) throw SingularPoint("power integral: a >= 1 (coincident points)");
    if (a < -1.0) throw OutOfRange("power integral: a < -1");
}

template <bool IsM3>
MellinValue eval_general(Complex w, double a, const quad::Options& opt) {
    const double p = IsM3 ? 1.5 : 0.5;
    check_a(a);
    if (!(w.real() > 0.0 && w.real() < 2.0 * p))
        throw StripViolation(IsM3 ? "M3 requires 0 < Re w < 3"
                                  : "M1 requires 0 < Re w < 1");
    const double eps = 1.0 - a;
    const Complex nu = w - p;
    const double decay = std::min(w.real(), 2.0 * p - w.real());

    if (eps < eps_floor) {
        return {IsM3 ? Complex(1.0 / eps) : Complex(-std::log(0.5 * eps)), true,
                0.0};
    }

    const bool subtract = eps < eps_subtract;
    const double c2 = 2.0 * eps;
    auto f = [&](double u) -> Complex {
        const double pld = p * log_chord2(u, eps);
        Complex val = std::exp(nu * u - pld) + std::exp(-nu * u - pld);
        if (subtract && u <= 1.0) val -= 2.0 * std::pow(u * u + c2, -p);
        return val;
    };
    auto breaks = half_line_breaks(eps, nu.imag(), decay);
    const double lead =
        subtract ? (IsM3 ? comparison_moment_m3(c2) : comparison_moment_m1(c2))
                 : 0.0;
    quad::Options qopt = opt;
    // accuracy is relative to the full value, lead included
    qopt.abs_tol = opt.abs_tol + opt.rel_tol * lead;
    double err = 0;
    Complex v = quad::integrate<Complex>(f, breaks, qopt, &err);
    return {v + lead, false, err};
}

template <bool IsM3>
double eval_line(double xi, double eps, const quad::Options& opt) {
    const double p = IsM3 ? 1.5 : 0.5;
    if (eps >= 2.0 + 1e-12) throw OutOfRange("power integral: a < -1");
    if (eps <= 0.0) throw SingularPoint("power integral: coincident points");
    // below the floor, the asymptotic is used; for p = 1/2 the constant part
    // is kept as well, since close corner pairs on fine meshes land here and
    // the constant is comparable to the logarithm
    if (eps < eps_floor)
        return IsM3 ? 1.0 / eps : -std::log(0.5 * eps) + m1_corner_limit(xi);

    const bool subtract = eps < eps_subtract;
    const double c2 = 2.0 * eps;
    auto f = [&](double u) -> double {
        double val = 2.0 * std::cos(xi * u) * std::exp(-p * log_chord2(u, eps));
        if (subtract && u <= 1.0) val -= 2.0 * std::pow(u * u + c2, -p);
        return val;
    };
    auto breaks = half_line_breaks(eps, xi, p);
    const double lead =
        subtract ? (IsM3 ? comparison_moment_m3(c2) : comparison_moment_m1(c2))
                 : 0.0;
    quad::Options qopt = opt;
    qopt.abs_tol = opt.abs_tol + opt.rel_tol * lead;
    return lead + quad::integrate_real(f, breaks, qopt);
}

} // namespace

MellinValue mellin_m3(Complex w, double a, const quad::Options& opt) {
    return eval_general<true>(w, a, opt);
}

MellinValue mellin_m1(Complex w, double a, const quad::Options& opt) {
    return eval_general<false>(w, a, opt);
}

double m3_line(double xi, double eps, const quad::Options& opt) {
    return eval_line<true>(xi, eps, opt);
}

double m1_line(double xi, double eps, const quad::Options& opt) {
    return eval_line<false>(xi, eps, opt);
}

double m1_corner_limit(double xi) {
    return m1_line(xi, eps_floor) + std::log(0.5 * eps_floor);
}

namespace {

inline double separation(const Vec3& x, const Vec3& y) {
    return 0.5 * (x - y).squaredNorm(); // == 1 - x.y for unit vectors
}

constexpr double flat_tol = 1e-12;       // |w . n| below this: same flat face
constexpr double coincident_eps = 5e-25; // |w - w'| ~ 1e-12

} // namespace

KernelValue double_layer_kernel(double xi, const SurfacePoint& om,
                                const SurfacePoint& omp,
                                const quad::Options& opt) {
    const double eps = separation(om.point, omp.point);
    if (eps < coincident_eps && (om.normal - omp.normal).norm() > 1e-9)
        throw SingularPoint("double layer kernel: coincident points across faces");
    const double dn = om.point.dot(omp.normal);
    if (std::abs(dn) < flat_tol) return {0.0, false};
    if (eps < coincident_eps)
        throw SingularPoint("double layer kernel: coincident points");
    return {-(0.25 / pi) * dn * m3_line(xi, eps, opt), eps < eps_floor};
}

KernelValue adjoint_double_layer_kernel(double xi, const SurfacePoint& om,
                                        const SurfacePoint& omp,
                                        const quad::Options& opt) {
    return double_layer_kernel(xi, omp, om, opt);
}

KernelValue single_layer_kernel(double xi, const SurfacePoint& om,
                                const SurfacePoint& omp,
                                const quad::Options& opt) {
    const double eps = separation(om.point, omp.point);
    if (eps < coincident_eps)
        throw SingularPoint("single layer kernel: coincident points");
    return {(0.25 / pi) * m1_line(xi, eps, opt), eps < eps_floor};
}

} // namespace npspec::mellin
