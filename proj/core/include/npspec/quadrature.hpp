#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "npspec/errors.hpp"

namespace npspec::quad {

/// Gauss–Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Cached Gauss–Legendre rule, n in [2, 64].
const GaussRule& gauss_legendre(int n);

struct Options {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_panels = 4000;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half; node 0 first).
inline constexpr double kron_x[8] = {
    0.000000000000000000, 0.207784955007898468, 0.405845151377397167,
    0.586087235467691130, 0.741531185599394440, 0.864864423359769073,
    0.949107912342758525, 0.991455371120812639};
inline constexpr double kron_w[8] = {
    0.209482141084727828, 0.204432940075298892, 0.190350578064785410,
    0.169004726639267903, 0.140653259715525919, 0.104790010322250184,
    0.063092092629978553, 0.022935322010529225};
inline constexpr double gauss_w[4] = {
    0.417959183673469388, 0.381830050505118945, 0.279705391489276668,
    0.129484966168869693};

template <class T>
struct PanelResult {
    T value;
    double error;
};

template <class F, class T>
PanelResult<T> gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T f0 = f(c);
    T k = kron_w[0] * f0;
    T g = gauss_w[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kron_x[i];
        T s = f(c + dx) + f(c - dx);
        k += kron_w[i] * s;
        if (i % 2 == 0) g += gauss_w[i / 2] * s;
    }
    k *= h;
    g *= h;
    double diff = std::abs(k - g);
    // standard QUADPACK-style sharpened estimate
    double err = diff * std::min(1.0, std::pow(200.0 * diff, 1.5) /
                                          std::max(std::abs(k), 1e-300));
    if (!(err > 0)) err = diff;
    return {k, std::max(err, diff * 1e-6)};
}

} // namespace detail

/// Adaptive Gauss–Kronrod integration over the union of [breaks[i], breaks[i+1]].
/// T is double or std::complex<double>. Panels are split at their midpoint until
/// the summed error estimate meets abs_tol + rel_tol * |I|.
template <class T, class F>
T integrate(F&& f, const std::vector<double>& breaks, const Options& opt = {},
            double* err_out = nullptr) {
    struct Panel {
        double a, b, err;
        T val;
    };
    std::vector<Panel> panels;
    panels.reserve(64);
    T total{};
    double toterr = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        auto r = detail::gk15<F&, T>(f, breaks[i], breaks[i + 1]);
        panels.push_back({breaks[i], breaks[i + 1], r.error, r.value});
        total += r.value;
        toterr += r.error;
    }
    auto worst = [&]() {
        std::size_t k = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[k].err) k = i;
        return k;
    };
    int splits = 0;
    while (toterr > opt.abs_tol + opt.rel_tol * std::abs(total) &&
           splits < opt.max_panels) {
        std::size_t k = worst();
        Panel p = panels[k];
        if (p.b - p.a < 1e-15 * (std::abs(p.a) + std::abs(p.b) + 1.0)) break;
        const double m = 0.5 * (p.a + p.b);
        auto r1 = detail::gk15<F&, T>(f, p.a, m);
        auto r2 = detail::gk15<F&, T>(f, m, p.b);
        total += r1.value + r2.value - p.val;
        toterr += r1.error + r2.error - p.err;
        panels[k] = {p.a, m, r1.error, r1.value};
        panels.push_back({m, p.b, r2.error, r2.value});
        ++splits;
    }
    if (err_out) *err_out = toterr;
    return total;
}

template <class F>
double integrate_real(F&& f, const std::vector<double>& breaks,
                      const Options& opt = {}, double* err_out = nullptr) {
    return integrate<double>(std::forward<F>(f), breaks, opt, err_out);
}

} // namespace npspec::quad
