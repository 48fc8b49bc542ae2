#include "npspec/nystrom.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "npspec/mellin.hpp"
#include "npspec/threading.hpp"

namespace npspec::nys {

namespace {

constexpr double pi = 3.14159265358979323846;

std::vector<double> graded_widths(double ell, int P, int L) {
    L = std::min(L, P / 2);
    std::vector<double> widths;
    if (L == 0) {
        widths.assign(P, ell / P);
        return widths;
    }
    const int nuni = P - 2 * L;
    const double W = ell / (nuni + 2.0 * (1.0 - std::pow(0.5, L)));
    for (int i = 0; i < L; ++i) widths.push_back(W * std::pow(0.5, L - i));
    for (int i = 0; i < nuni; ++i) widths.push_back(W);
    for (int i = L - 1; i >= 0; --i) widths.push_back(W * std::pow(0.5, L - i));
    return widths;
}

} // namespace

Mesh build_mesh(const geom::SphericalPolygon& polygon, int panels_per_arc,
                int gauss_order, int grading_levels) {
    if (panels_per_arc < 2) throw InvalidParams("panels_per_arc must be >= 2");
    if (gauss_order < 4 || gauss_order > 32)
        throw InvalidParams("gauss_order must lie in [4, 32]");
    if (grading_levels < 0) throw InvalidParams("grading_levels must be >= 0");

    Mesh mesh;
    mesh.polygon = polygon;
    mesh.panels_per_arc = panels_per_arc;
    mesh.gauss_order = gauss_order;
    mesh.grading_levels = grading_levels;
    const auto& rule = quad::gauss_legendre(gauss_order);

    for (int j = 0; j < static_cast<int>(polygon.size()); ++j) {
        const double ell = polygon.arcs[j].length;
        const auto widths = graded_widths(ell, panels_per_arc, grading_levels);
        double s0 = 0.0;
        for (int p = 0; p < panels_per_arc; ++p) {
            const double s1 = (p + 1 == panels_per_arc) ? ell : s0 + widths[p];
            const int panel_id = static_cast<int>(mesh.panels.size());
            mesh.panels.push_back({j, s0, s1});
            const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
            for (int g = 0; g < gauss_order; ++g)
                mesh.nodes.push_back(
                    {j, panel_id, mid + half * rule.x[g], half * rule.w[g]});
            s0 = s1;
        }
    }
    return mesh;
}

NystromSystem assemble(std::shared_ptr<const Mesh> mesh, double xi, double alpha,
                       const AssembleOptions& options) {
    if (!mesh) throw InvalidParams("assemble: null mesh");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw InvalidParams("assemble: alpha outside [0,1)");
    const auto& nodes = mesh->nodes;
    const Eigen::Index N = static_cast<Eigen::Index>(nodes.size());
    const auto& poly = mesh->polygon;

    NystromSystem sys;
    sys.mesh = mesh;
    sys.xi = xi;
    sys.alpha = alpha;
    sys.kernel_tol = options.kernel_tol;
    sys.A.resize(N, N);
    sys.w.resize(N);
    sys.q.resize(N);

    std::vector<geom::Vec3> pts(N), nrm(N);
    for (Eigen::Index m = 0; m < N; ++m) {
        const Node& nd = nodes[m];
        const geom::Arc& arc = poly.arcs[nd.arc];
        pts[m] = arc.point(nd.s);
        nrm[m] = arc.face_normal;
        sys.w[m] = nd.weight;
        sys.q[m] = poly.weight(nd.arc, nd.s);
    }

    quad::Options qopt;
    qopt.abs_tol = qopt.rel_tol = options.kernel_tol;

    // A = Q^{-a/2} H Q^{a/2} W; same-arc entries vanish with the kernel.
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t mi) {
        const Eigen::Index m = static_cast<Eigen::Index>(mi);
        const double qm = std::pow(sys.q[m], -0.5 * alpha);
        for (Eigen::Index k = 0; k < N; ++k) {
            if (nodes[m].arc == nodes[k].arc) {
                sys.A(m, k) = 0.0;
                continue;
            }
            const double eps = 0.5 * (pts[m] - pts[k]).squaredNorm();
            const double dn = pts[m].dot(nrm[k]);
            double h = 0.0;
            if (std::abs(dn) >= 1e-12)
                h = -(0.25 / pi) * dn * mellin::m3_line(xi, eps, qopt);
            sys.A(m, k) =
                qm * h * std::pow(sys.q[k], 0.5 * alpha) * sys.w[k];
        }
    });

    if (!options.with_gram) return sys;

    // S: single layer kernel values; diagonal fixed panel-wise so the
    // self-panel row quadrature integrates the log singularity exactly
    // against constants.
    Eigen::MatrixXd S(N, N);
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t mi) {
        const Eigen::Index m = static_cast<Eigen::Index>(mi);
        for (Eigen::Index k = 0; k < N; ++k) {
            if (k == m) {
                S(m, k) = 0.0;
                continue;
            }
            const double eps = 0.5 * (pts[m] - pts[k]).squaredNorm();
            S(m, k) = (0.25 / pi) * mellin::m1_line(xi, eps, qopt);
        }
    });

    const double corner_limit = mellin::m1_corner_limit(xi);
    const double smooth_at_zero = (0.25 / pi) * (2.0 * std::log(2.0) + corner_limit);
    auto flog = [](double x) { return x > 0 ? x * (std::log(x) - 1.0) : 0.0; };

    parallel_for(static_cast<std::size_t>(N), [&](std::size_t mi) {
        const Eigen::Index m = static_cast<Eigen::Index>(mi);
        const Node& nd = nodes[m];
        const Panel& pan = mesh->panels[nd.panel];
        // exact moment of the -log|s-s'|/(2 pi) part over the panel
        const double I_log =
            -(0.5 / pi) * (flog(pan.s1 - nd.s) + flog(nd.s - pan.s0));
        // smooth remainder integrated with the panel's own nodes
        double I_smooth = 0.0;
        double off_sum = 0.0;
        const Eigen::Index first = static_cast<Eigen::Index>(nd.panel) *
                                   mesh->gauss_order;
        for (Eigen::Index k = first; k < first + mesh->gauss_order; ++k) {
            const double d = std::abs(nodes[k].s - nd.s);
            double r;
            if (k == m) {
                r = smooth_at_zero;
            } else {
                r = S(m, k) + (0.5 / pi) * std::log(d);
                off_sum += sys.w[k] * S(m, k);
            }
            I_smooth += sys.w[k] * r;
        }
        S(m, m) = (I_log + I_smooth - off_sum) / sys.w[m];
    });

    const Eigen::VectorXd sqw = sys.w.cwiseSqrt();
    sys.B = sqw.asDiagonal() * S * sqw.asDiagonal();
    return sys;
}

NystromSystem reweight(const NystromSystem& system, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw InvalidParams("reweight: alpha outside [0,1)");
    NystromSystem out = system;
    out.alpha = alpha;
    const double shift = 0.5 * (system.alpha - alpha);
    Eigen::VectorXd d = system.q.array().pow(shift).matrix();
    out.A = d.asDiagonal() * system.A * d.cwiseInverse().asDiagonal();
    return out;
}

std::vector<std::complex<double>> raw_eigenvalues(const NystromSystem& system) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(system.A, false);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("dense eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

namespace {

std::vector<double> filter_spectrum(const std::vector<std::complex<double>>& raw,
                                    const FilterParams& p) {
    std::vector<double> out;
    const double cut = p.threshold * (1.0 + p.margin);
    for (const auto& z : raw) {
        if (std::abs(z.imag()) >= p.tau_im) continue;
        const double x = z.real();
        if (std::abs(x) >= 0.5 || std::abs(x) <= cut) continue;
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

EigenResult isolated_eigenvalues(const NystromSystem& system,
                                 const NystromSystem& refined,
                                 const FilterParams& params) {
    if (system.xi != refined.xi || system.alpha != refined.alpha)
        throw InvalidParams("refinement pair must share (xi, alpha)");
    if (refined.size() <= system.size())
        throw InvalidParams("refined system must have more nodes");

    EigenResult res;
    res.xi = system.xi;
    res.alpha = system.alpha;
    res.eigenvalues_raw = raw_eigenvalues(refined);
    const auto coarse = filter_spectrum(raw_eigenvalues(system), params);
    const auto fine = filter_spectrum(res.eigenvalues_raw, params);
    if (coarse.size() != fine.size())
        throw NoConvergence("filtered spectra differ in cardinality across refinement");
    // filtered values are real, so sorted pairing is the optimal matching
    for (std::size_t i = 0; i < fine.size(); ++i) {
        const double gap = std::abs(fine[i] - coarse[i]);
        if (gap > params.tau_match)
            throw NoConvergence("filtered eigenvalues do not match across refinement");
        res.eigenvalues_filtered.push_back(fine[i]);
        res.refinement_agreement.push_back(gap);
    }
    return res;
}

double calderon_residual(const NystromSystem& system) {
    if (system.B.size() == 0)
        throw InvalidParams("system was assembled without the Gram matrix");
    const Eigen::Index N = system.size();
    Eigen::VectorXd d(N);
    for (Eigen::Index i = 0; i < N; ++i)
        d[i] = std::sqrt(system.w[i]) * std::pow(system.q[i], 0.5 * system.alpha);
    const Eigen::MatrixXd H_sym =
        d.asDiagonal() * system.A * d.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd lhs = H_sym * system.B;
    const Eigen::MatrixXd rhs = system.B * H_sym.transpose();
    return (lhs - rhs).norm() / (H_sym.norm() * system.B.norm());
}

bool gram_is_positive(const NystromSystem& system) {
    if (system.B.size() == 0)
        throw InvalidParams("system was assembled without the Gram matrix");
    Eigen::LLT<Eigen::MatrixXd> llt(system.B);
    return llt.info() == Eigen::Success;
}

} // namespace npspec::nys
