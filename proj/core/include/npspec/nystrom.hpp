#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "npspec/geometry.hpp"
#include "npspec/quadrature.hpp"

namespace npspec::nys {

struct Panel {
    int arc;
    double s0, s1; // arc-length span
};

struct Node {
    int arc;
    int panel; // index into Mesh::panels
    double s;
    double weight;
};

/// Composite Gauss mesh on the polygon, panels geometrically graded with ratio
/// 1/2 toward both corners of every arc.
struct Mesh {
    geom::SphericalPolygon polygon;
    std::vector<Panel> panels;
    std::vector<Node> nodes; // grouped by panel, panels grouped by arc
    int panels_per_arc = 0;
    int gauss_order = 0;
    int grading_levels = 0;
};

Mesh build_mesh(const geom::SphericalPolygon& polygon, int panels_per_arc,
                int gauss_order, int grading_levels);

struct AssembleOptions {
    double kernel_tol = 1e-11; // quadrature tolerance of the kernel integrals
    bool with_gram = true;     // assemble the single layer Gram matrix B
};

/// Dense collocation system at spectral parameter i*xi.
///   A = Q^{-a/2} H Q^{a/2} W   (double layer, conjugated into the weighted
///                               space; same-arc blocks exactly zero)
///   B = W^{1/2} S W^{1/2}      (single layer Gram; log-corrected diagonal)
/// where H, S are kernel value matrices, W node weights, Q node values of q.
struct NystromSystem {
    std::shared_ptr<const Mesh> mesh;
    double xi = 0;
    double alpha = 0;
    Eigen::MatrixXd A;
    Eigen::MatrixXd B; // empty when with_gram = false
    Eigen::VectorXd w; // node quadrature weights
    Eigen::VectorXd q; // node weight-function values
    double kernel_tol = 0;

    Eigen::Index size() const { return A.rows(); }
};

NystromSystem assemble(std::shared_ptr<const Mesh> mesh, double xi, double alpha,
                       const AssembleOptions& options = {});

/// Same system conjugated into another weighted space. The kernel matrices
/// are reused; only the diagonal similarity changes.
NystromSystem reweight(const NystromSystem& system, double alpha);

struct FilterParams {
    double threshold = 0;    // max_j sigma_max over the working angles
    double margin = 0.05;    // relative margin on top of threshold
    double tau_im = 1e-6;    // imaginary part tolerance
    double tau_match = 1e-3; // coarse/refined matching tolerance
};

struct EigenResult {
    double xi = 0;
    double alpha = 0;
    std::vector<std::complex<double>> eigenvalues_raw; // refined system
    std::vector<double> eigenvalues_filtered;          // sorted ascending
    std::vector<double> refinement_agreement;          // per filtered value
};

/// Raw dense spectrum of A.
std::vector<std::complex<double>> raw_eigenvalues(const NystromSystem& system);

/// Eigenvalues that survive the reality/interval/threshold filter in both
/// systems and match across the refinement within tau_match. Throws
/// NoConvergence when the two filtered sets differ in cardinality.
EigenResult isolated_eigenvalues(const NystromSystem& system,
                                 const NystromSystem& refined,
                                 const FilterParams& params);

/// Relative Frobenius defect of the symmetrization identity between the
/// double layer, its transpose, and the single layer Gram. Both factors are
/// taken in the weight-symmetrized form, which shares A's spectrum.
double calderon_residual(const NystromSystem& system);

/// True when the single layer Gram matrix admits a Cholesky factorization.
bool gram_is_positive(const NystromSystem& system);

} // namespace npspec::nys
