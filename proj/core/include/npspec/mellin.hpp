#pragma once

#include <complex>

#include <Eigen/Core>

#include "npspec/quadrature.hpp"

namespace npspec::mellin {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;

/// Power integrals M_p(w, a) = \int_0^inf t^w (t^2 - 2 a t + 1)^{-p} dt/t for
/// p = 3/2 ("M3", strip 0 < Re w < 3) and p = 1/2 ("M1", strip 0 < Re w < 1).
/// In the exponential substitution t = e^u both become half-line integrals of
/// [e^{nu u} + e^{-nu u}] (4 sinh^2(u/2) + 2 eps)^{-p},  nu = w - p,  eps = 1 - a,
/// which peak at u = 0 with width sqrt(2 eps) as a -> 1.

/// Below eps_subtract the peak is removed by subtracting a comparison kernel
/// 2 (u^2 + 2 eps)^{-p} on [0, 1] whose integral is elementary; below eps_floor
/// only the leading asymptotic is returned and the value is flagged singular.
inline constexpr double eps_subtract = 1e-5;
inline constexpr double eps_floor = 1e-8;

struct MellinValue {
    Complex value;
    bool singular = false;
    double err_est = 0.0;
};

MellinValue mellin_m3(Complex w, double a, const quad::Options& opt = {});
MellinValue mellin_m1(Complex w, double a, const quad::Options& opt = {});

/// Fast real evaluators on the symmetry lines w = 3/2 + i xi and w = 1/2 + i xi.
/// eps = 1 - a must be computed cancellation-free by the caller
/// (for unit vectors, 1 - w.w' = |w - w'|^2 / 2).
double m3_line(double xi, double eps, const quad::Options& opt = {});
double m1_line(double xi, double eps, const quad::Options& opt = {});

/// lim_{a->1} [ M1(1/2 + i xi, a) + log((1-a)/2) ], the constant part left once
/// the logarithmic singularity of the single layer kernel is removed.
double m1_corner_limit(double xi);

/// A point on the spherical polygon together with the outward normal of the
/// face its arc lies on.
struct SurfacePoint {
    Vec3 point;
    Vec3 normal;
};

struct KernelValue {
    double value;
    bool singular = false;
};

/// Kernel of the double layer potential operator on the spherical polygon at
/// spectral parameter i*xi: -(1/4pi) (w . n_{w'}) M3(3/2 + i xi, w . w').
/// Exactly zero when both points lie on the same flat face.
KernelValue double_layer_kernel(double xi, const SurfacePoint& om,
                                const SurfacePoint& omp,
                                const quad::Options& opt = {});

/// Adjoint kernel; for real xi this is the transposed double layer kernel.
KernelValue adjoint_double_layer_kernel(double xi, const SurfacePoint& om,
                                        const SurfacePoint& omp,
                                        const quad::Options& opt = {});

/// Kernel of the single layer potential operator: (1/4pi) M1(1/2 + i xi, w . w').
/// Symmetric in its arguments, log-singular at coincidence.
KernelValue single_layer_kernel(double xi, const SurfacePoint& om,
                                const SurfacePoint& omp,
                                const quad::Options& opt = {});

} // namespace npspec::mellin
