#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "npspec/geometry.hpp"
#include "npspec/nystrom.hpp"
#include "npspec/spectral_curves.hpp"

namespace npspec::spectra {

struct MeshParams {
    int panels = 16;
    int order = 10;
    int grading = 4;
};

/// Threshold used to separate isolated eigenvalues from the discretization
/// cloud: at the working alpha for weighted runs, at the alpha -> 1 limit for
/// energy runs.
enum class ThresholdMode { working_alpha, energy_limit };

struct SweepOptions {
    double xi_max = 8.0;
    int xi_steps = 33;
    MeshParams mesh;
    double kernel_tol = 1e-11;
    ThresholdMode threshold_mode = ThresholdMode::working_alpha;
    double slope_cap = 2.0;      // branch continuity cap |dlambda/dxi|
    double alpha_primary = 0.9;  // mu+- estimation ladder
    double alpha_check = 0.8;
    bool force_sweep = false;    // bypass the convex xi=0 shortcut
    int termination_bisections = 2;
    std::size_t curve_samples = 2049;
};

struct EigenBranch {
    double alpha = 0;
    std::vector<std::pair<double, double>> samples; // (xi, lambda)
    bool terminated_mid_sweep = false;
    std::string note;
};

enum class Space { energy, weighted };

struct Estimate {
    double value = 0;
    double uncertainty = 0;
};

struct SpectrumReport {
    Space space = Space::energy;
    std::optional<double> alpha;      // weighted exponent
    curves::RegionSet essential_core; // exact interval / curves + disk bracket
    std::vector<std::array<double, 2>> lambda_star_intervals;
    std::optional<Estimate> mu_plus;
    std::optional<Estimate> mu_minus;
    std::vector<EigenBranch> branches;
    std::vector<std::pair<int, SpectrumReport>> per_vertex; // polyhedron case
    std::vector<std::string> caveats;
    std::vector<double> angles; // corner angles the report was built from
    std::vector<int> skipped_xi_indices;
};

/// Halfwidth max_j |1 - beta_j/pi| / 2 of the energy-space essential interval,
/// computed in closed form from the corner angles.
double energy_interval_halfwidth(const std::vector<double>& angles);

/// Eigenvalue branches of the cone's symbol family over xi in [0, xi_max]
/// (the negative half mirrors exactly). Branch points are matched by
/// continuity; branches absorbed into the continuous-spectrum region are
/// closed and annotated. Grid points that fail to converge are skipped and,
/// when requested, reported through skipped_out.
std::vector<EigenBranch> sweep_branches(const geom::PolyhedralCone& cone,
                                        double alpha, const SweepOptions& opt,
                                        std::vector<int>* skipped_out = nullptr);

/// Energy-space spectrum report; requires a Lipschitz cone. Convex cones use
/// the xi = 0 shortcut unless force_sweep is set.
SpectrumReport cone_energy_spectrum(const geom::PolyhedralCone& cone,
                                    const SweepOptions& opt = {});

/// Weighted-space report for arbitrary polyhedral cones. Carries an inner
/// (certified) curve-union set and an outer disk bracket; the complex gap
/// between them is uncharacterized and reported as a caveat.
SpectrumReport cone_weighted_spectrum(const geom::PolyhedralCone& cone,
                                      double alpha,
                                      const SweepOptions& opt = {});

/// Union of tangent-cone spectra, with congruent cones deduplicated.
SpectrumReport polyhedron_essential_spectrum(const geom::Polyhedron& poly,
                                             Space space, double alpha,
                                             const SweepOptions& opt = {});

enum class MapDirection { lambda_to_eps, eps_to_lambda };

/// eps = (1 + 2 lambda) / (2 lambda - 1) and its inverse
/// lambda = (eps + 1) / (2 (eps - 1)).
std::complex<double> plasmonic_map(std::complex<double> value, MapDirection dir);

} // namespace npspec::spectra
