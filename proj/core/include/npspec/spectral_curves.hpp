#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "npspec/errors.hpp"

namespace npspec::curves {

using Complex = std::complex<double>;

/// Closed symbol curve of a corner of opening beta in the weighted space with
/// exponent alpha, sampled over a symmetric xi-grid (the curve closes through
/// the origin, its limit point).
struct SpectralCurve {
    double alpha = 0;
    double beta = 0;
    std::vector<double> xi;
    std::vector<Complex> values;
};

/// (1/2) sin((pi-beta) z) / sin(pi z) at z = (1-alpha)/2 + i xi.
/// Evaluated in overflow-free form; exact conjugate symmetry in xi.
Complex sigma_point(double alpha, double beta, double xi);

/// Maximum modulus of the curve, attained at xi = 0; alpha = 1 gives the
/// limiting value |1 - beta/pi| / 2.
double sigma_max(double alpha, double beta);

/// tanh-spaced symmetric grid with 0 included (n is made odd), xi_cut chosen
/// from the decay rate min(beta, 2pi - beta, pi).
SpectralCurve sample_curve(double alpha, double beta, std::size_t n = 2049);

/// Winding number of lambda with respect to the sampled curve (or its
/// reflection through the origin), closed through 0. Throws OnCurve when
/// lambda lies within 1e-9 of the polyline.
int winding_number(Complex lambda, const SpectralCurve& curve,
                   bool reflected = false);

/// True iff lambda lies on or inside some corner curve or its reflection.
bool region_membership(Complex lambda, const std::vector<double>& angles,
                       double alpha);

enum class Space2D { sobolev_half, l2 };

struct RegionSet {
    enum class Kind { interval, curve_union, disk_union };
    Kind kind = Kind::interval;
    std::vector<std::array<double, 2>> intervals; // disjoint, sorted
    std::vector<SpectralCurve> curves;            // reflections implied
    std::optional<double> disk_radius;            // outer bracket
};

/// Reference spectra of a 2D curvilinear polygon with the given corner angles.
RegionSet polygon_spectrum_2d(const std::vector<double>& angles, Space2D space);

} // namespace npspec::curves
