// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "npspec/geometry.hpp"
#include "npspec/io.hpp"
#include "npspec/mellin.hpp"
#include "npspec/nystrom.hpp"
#include "npspec/spectra.hpp"
#include "npspec/spectral_curves.hpp"

using namespace npspec;
using Clock = std::chrono::steady_clock;
using Complex = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;

int failures = 0;

void criterion(int number, const char* label, const std::function<bool()>& body) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body();
    } catch (const std::exception& e) {
        detail = std::string(" [exception: ") + e.what() + "]";
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%.1fs)%s\n", ok ? "PASS" : "FAIL",
                number, label, secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

struct Check {
    bool ok = true;
    Check& expect(bool cond, const char* what) {
        if (!cond) {
            std::printf("        failed: %s\n", what);
            ok = false;
        }
        return *this;
    }
};

geom::PolyhedralCone octant() {
    return geom::cone_from_edges(
        {geom::Vec3(1, 0, 0), geom::Vec3(0, 1, 0), geom::Vec3(0, 0, 1)});
}

std::mt19937 gen(7081962u);
double uni(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

} // namespace

int main() {
    std::printf("npspec acceptance suite\n");

    // shared computations
    const auto cone = octant();
    spectra::SweepOptions defaults; // P = 16 / 24 pair, order 10, grading 4

    spectra::SpectrumReport octant_energy;

    criterion(1, "octant mu+ = 0.347 +- 0.010 at the default refinement pair",
              [&] {
                  const auto t0 = Clock::now();
                  octant_energy = spectra::cone_energy_spectrum(cone, defaults);
                  const double secs =
                      std::chrono::duration<double>(Clock::now() - t0).count();
                  Check c;
                  c.expect(octant_energy.mu_plus.has_value(), "mu+ detected");
                  if (octant_energy.mu_plus)
                      c.expect(std::abs(octant_energy.mu_plus->value - 0.34726) <=
                                   0.010,
                               "mu+ within 0.010 of 0.34726");
                  c.expect(secs < 180.0, "runtime under 3 minutes");
                  return c.ok;
              });

    criterion(2, "exact essential intervals for octant and square pyramid", [&] {
        const auto t0 = Clock::now();
        const double m_oct =
            spectra::energy_interval_halfwidth(cone.cross_section.angles);
        const double s = 1.0 / std::sqrt(3.0);
        const auto pyramid = geom::cone_from_edges(
            {geom::Vec3(1, 1, 1) * s, geom::Vec3(-1, 1, 1) * s,
             geom::Vec3(-1, -1, 1) * s, geom::Vec3(1, -1, 1) * s});
        const double m_pyr =
            spectra::energy_interval_halfwidth(pyramid.cross_section.angles);
        const double secs =
            std::chrono::duration<double>(Clock::now() - t0).count();
        Check c;
        c.expect(m_oct == 0.25, "octant halfwidth equals 1/4 exactly");
        c.expect(std::abs(m_pyr - 1.0 / 6.0) < 1e-15,
                 "pyramid halfwidth equals 1/6 to machine precision");
        c.expect(secs < 1.0, "runtime under 1 s");
        return c.ok;
    });

    criterion(3, "Mellin power integral oracles at 1e-8 relative", [] {
        const double m3_anti = mellin::m3_line(0.0, 2.0);
        const double m3_zero = mellin::m3_line(0.0, 1.0);
        const double m1_anti = mellin::m1_line(0.0, 2.0);
        const double g34 = std::tgamma(0.75), g32 = std::tgamma(1.5);
        Check c;
        c.expect(std::abs(m3_anti - pi / 8) <= 1e-8 * (pi / 8), "M3(3/2,-1) = pi/8");
        c.expect(std::abs(m3_zero - g34 * g34 / (2.0 * g32)) <=
                     1e-8 * std::abs(m3_zero),
                 "M3(3/2,0) = Gamma(3/4)^2 / (2 Gamma(3/2))");
        c.expect(std::abs(m1_anti - pi) <= 1e-8 * pi, "M1(1/2,-1) = pi");
        return c.ok;
    });

    criterion(4, "kernel symmetry suite over 1000 random (w, a, xi)", [] {
        const auto t0 = Clock::now();
        Check c;
        for (int i = 0; i < 1000 && c.ok; ++i) {
            const double a = uni(-1.0, 0.999);
            const double im = uni(-20.0, 20.0);
            const double xi = uni(-30.0, 30.0);
            const Complex w3(uni(0.05, 2.95), im);
            const auto v1 = mellin::mellin_m3(w3, a).value;
            const auto v2 = mellin::mellin_m3(Complex(3, 0) - w3, a).value;
            c.expect(std::abs(v1 - v2) < 1e-9 * std::abs(v1) + 1e-13,
                     "M3(w,a) = M3(3-w,a)");
            c.expect(std::abs(mellin::mellin_m3({1.5, xi}, a).value.imag()) < 1e-10,
                     "Im M3(3/2 + i xi, a) < 1e-10");
            const Complex w1(uni(0.02, 0.98), im);
            const auto u1 = mellin::mellin_m1(w1, a).value;
            const auto u2 = mellin::mellin_m1(Complex(1, 0) - w1, a).value;
            c.expect(std::abs(u1 - u2) < 1e-9 * std::abs(u1) + 1e-13,
                     "M1(w,a) = M1(1-w,a)");
            c.expect(std::abs(mellin::mellin_m1({0.5, xi}, a).value.imag()) < 1e-10,
                     "Im M1(1/2 + i xi, a) < 1e-10");
        }
        const double secs =
            std::chrono::duration<double>(Clock::now() - t0).count();
        c.expect(secs < 30.0, "runtime under 30 s");
        return c.ok;
    });

    criterion(5, "singular asymptotics of the power integrals", [] {
        Check c;
        const double v = 1e-4 * mellin::m3_line(0.0, 1e-4);
        c.expect(v >= 0.95 && v <= 1.05, "(1-a) M3 within [0.95, 1.05] at 1e-4");
        double lo = 1e300, hi = -1e300;
        for (double e = 1e-6; e < 1.01e-2; e *= 10.0) {
            const double s = mellin::m1_line(0.0, e) + std::log(0.5 * e);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        c.expect(hi - lo < 2.0, "M1 + log((1-a)/2) band narrower than 2");
        return c.ok;
    });

    // shared: Gram systems for criteria 6 and 12
    std::vector<nys::NystromSystem> gram_systems;
    criterion(6, "Calderon residual below 1e-3 and decreasing over P", [&] {
        Check c;
        for (double xi : {0.0, 1.0, 5.0}) {
            double prev = 1e300;
            for (int P : {8, 16, 24}) {
                const auto mesh = std::make_shared<nys::Mesh>(nys::build_mesh(
                    cone.cross_section, P, defaults.mesh.order,
                    defaults.mesh.grading));
                gram_systems.push_back(nys::assemble(mesh, xi, 0.0));
                const double res = nys::calderon_residual(gram_systems.back());
                c.expect(res < prev, "residual strictly decreasing in P");
                if (P == 24) c.expect(res < 1e-3, "residual below 1e-3 at P = 24");
                prev = res;
            }
        }
        return c.ok;
    });

    std::vector<spectra::EigenBranch> sweep;
    criterion(7, "eigenvalue hygiene over the octant sweep", [&] {
        spectra::SweepOptions opt = defaults;
        opt.threshold_mode = spectra::ThresholdMode::energy_limit;
        sweep = spectra::sweep_branches(cone, 0.9, opt);
        Check c;
        c.expect(!sweep.empty(), "sweep produced branches");
        for (const auto& b : sweep)
            for (const auto& [xi, lam] : b.samples) {
                c.expect(std::abs(lam) < 0.5, "|lambda| < 1/2");
                c.expect(std::isfinite(lam), "lambda finite");
            }
        // xi -> -xi symmetry of the assembled system is exact
        const auto mesh = std::make_shared<nys::Mesh>(nys::build_mesh(
            cone.cross_section, 8, defaults.mesh.order, defaults.mesh.grading));
        nys::AssembleOptions ao;
        ao.with_gram = false;
        const auto plus = nys::assemble(mesh, 1.5, 0.9, ao);
        const auto minus = nys::assemble(mesh, -1.5, 0.9, ao);
        c.expect((plus.A - minus.A).norm() == 0.0,
                 "A(xi) and A(-xi) identical entrywise");
        return c.ok;
    });

    criterion(8, "alpha-monotone filtered sets and alpha-independent mu+", [&] {
        const auto coarse = std::make_shared<nys::Mesh>(
            nys::build_mesh(cone.cross_section, defaults.mesh.panels,
                            defaults.mesh.order, defaults.mesh.grading));
        const auto fine = std::make_shared<nys::Mesh>(
            nys::build_mesh(cone.cross_section, 3 * defaults.mesh.panels / 2,
                            defaults.mesh.order, defaults.mesh.grading));
        nys::AssembleOptions ao;
        ao.with_gram = false;
        const auto sys9 = nys::assemble(coarse, 0.0, 0.9, ao);
        const auto ref9 = nys::assemble(fine, 0.0, 0.9, ao);
        nys::FilterParams f9, f8;
        f9.threshold = curves::sigma_max(0.9, pi / 2);
        f8.threshold = curves::sigma_max(0.8, pi / 2);
        const auto r9 = nys::isolated_eigenvalues(sys9, ref9, f9);
        const auto r8 = nys::isolated_eigenvalues(nys::reweight(sys9, 0.8),
                                                  nys::reweight(ref9, 0.8), f8);
        Check c;
        for (double v8 : r8.eigenvalues_filtered) {
            bool contained = false;
            for (double v9 : r9.eigenvalues_filtered)
                contained = contained || std::abs(v8 - v9) < 1e-3;
            c.expect(contained, "alpha = 0.8 set contained in alpha = 0.9 set");
        }
        c.expect(!r9.eigenvalues_filtered.empty(), "mu+ candidate present");
        if (!r8.eigenvalues_filtered.empty() && !r9.eigenvalues_filtered.empty()) {
            const double m8 = r8.eigenvalues_filtered.back();
            const double m9 = r9.eigenvalues_filtered.back();
            const double budget = r8.refinement_agreement.back() +
                                  r9.refinement_agreement.back() + 1e-9;
            c.expect(std::abs(m8 - m9) <= budget,
                     "mu+ estimates agree within combined uncertainty");
        }
        return c.ok;
    });

    criterion(9, "convexity: sweep maximum attained at xi = 0", [&] {
        Check c;
        c.expect(!sweep.empty(), "sweep available");
        double best = -1e300, at_zero = -1e300;
        for (const auto& b : sweep)
            for (const auto& [xi, lam] : b.samples) {
                best = std::max(best, lam);
                if (xi == 0.0) at_zero = std::max(at_zero, lam);
            }
        c.expect(at_zero > -1e300, "branch value at xi = 0 present");
        c.expect(best <= at_zero + 1e-9, "maximum over the sweep sits at xi = 0");
        return c.ok;
    });

    criterion(10, "curve suite: monotone maxima, grid max, real membership", [] {
        Check c;
        for (double beta : {pi / 4, pi / 2, 2 * pi / 3, 3 * pi / 2}) {
            double prev = 1e300;
            for (double alpha :
                 {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
                const double v = curves::sigma_max(alpha, beta);
                c.expect(v < prev, "sigma_max strictly decreasing in alpha");
                prev = v;
            }
            for (double alpha : {0.0, 0.5}) {
                const auto curve = curves::sample_curve(alpha, beta);
                double best = 0;
                for (const auto& z : curve.values)
                    best = std::max(best, std::abs(z));
                c.expect(std::abs(best - curves::sigma_max(alpha, beta)) < 1e-6,
                         "dense-grid maximum matches sigma_max");
            }
        }
        const std::vector<double> angles = {pi / 2, pi / 2, pi / 2};
        const double alpha = 0.5;
        const double m = curves::sigma_max(alpha, pi / 2);
        for (int i = 0; i < 100; ++i) {
            const double x = uni(-0.999 * m, 0.999 * m);
            c.expect(curves::region_membership({x, 0.0}, angles, alpha),
                     "[-m, m] covered by the curve regions");
        }
        return c.ok;
    });

    criterion(11, "polyhedron assembly: cube union, two-brick modes", [&] {
        Check c;
        // cube: eight congruent corners, so the union equals the octant report
        geom::Polyhedron cube;
        cube.vertices = {geom::Vec3(0, 0, 0), geom::Vec3(1, 0, 0),
                         geom::Vec3(1, 1, 0), geom::Vec3(0, 1, 0),
                         geom::Vec3(0, 0, 1), geom::Vec3(1, 0, 1),
                         geom::Vec3(1, 1, 1), geom::Vec3(0, 1, 1)};
        cube.faces = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                      {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
        const auto cube_rep = spectra::polyhedron_essential_spectrum(
            cube, spectra::Space::energy, 0.0, defaults);
        c.expect(cube_rep.per_vertex.size() == 8, "eight vertex reports");
        c.expect(cube_rep.essential_core.intervals[0][1] == 0.25,
                 "cube essential interval endpoint 1/4");
        c.expect(cube_rep.mu_plus.has_value() && octant_energy.mu_plus.has_value(),
                 "mu+ present on both sides");
        if (cube_rep.mu_plus && octant_energy.mu_plus)
            c.expect(std::abs(cube_rep.mu_plus->value -
                              octant_energy.mu_plus->value) < 1e-12,
                     "cube union equals the single octant report");
        if (cube_rep.mu_plus)
            c.expect(std::abs(cube_rep.mu_plus->value - 0.34726) < 0.010,
                     "cube essential endpoint near 0.34726");

        // two-brick: energy mode refused with exit code 3
        io::RunConfig cfg;
        cfg.subcommand = "polyhedron";
        cfg.space = "energy";
        cfg.input_path =
            (std::filesystem::path(NPSPEC_DATA_DIR) / "twobrick.json").string();
        cfg.json_path =
            (std::filesystem::path(NPSPEC_OUT_DIR) / "twobrick_energy.json")
                .string();
        c.expect(io::run(cfg) == 3, "two-brick energy mode exits with code 3");

        // weighted mode completes at alpha = 1/2 (reduced mesh and sweep)
        geom::Polyhedron brick;
        {
            const auto g = io::parse_geometry_json([&] {
                std::ifstream in(cfg.input_path);
                std::ostringstream ss;
                ss << in.rdbuf();
                return ss.str();
            }());
            brick = g.poly;
        }
        spectra::SweepOptions small;
        small.mesh.panels = 6;
        small.mesh.order = 6;
        small.mesh.grading = 2;
        small.xi_max = 3.0;
        small.xi_steps = 8;
        const auto wrep = spectra::polyhedron_essential_spectrum(
            brick, spectra::Space::weighted, 0.5, small);
        c.expect(wrep.per_vertex.size() == 16, "weighted report covers all vertices");
        c.expect(wrep.essential_core.disk_radius.has_value(),
                 "weighted report carries the disk bracket");
        return c.ok;
    });

    criterion(12, "Gram Cholesky succeeds at all tested xi and refinements", [&] {
        Check c;
        c.expect(gram_systems.size() == 9, "systems from criterion 6 available");
        for (const auto& sys : gram_systems)
            c.expect(nys::gram_is_positive(sys), "Cholesky factorization succeeds");
        return c.ok;
    });

    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
