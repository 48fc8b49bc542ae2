#include "npspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace npspec::spectra {

namespace {

constexpr double pi = 3.14159265358979323846;

} // namespace

double energy_interval_halfwidth(const std::vector<double>& angles) {
    double m = 0.0;
    for (double b : angles) m = std::max(m, 0.5 * std::abs(1.0 - b / pi));
    return m;
}

namespace {

double energy_halfwidth(const std::vector<double>& angles) {
    return energy_interval_halfwidth(angles);
}

double weighted_radius(const std::vector<double>& angles, double alpha) {
    double r = 0.0;
    for (double b : angles) r = std::max(r, curves::sigma_max(alpha, b));
    return r;
}

double filter_threshold(const std::vector<double>& angles, double alpha,
                        ThresholdMode mode) {
    return mode == ThresholdMode::energy_limit ? energy_halfwidth(angles)
                                               : weighted_radius(angles, alpha);
}

struct MeshPair {
    std::shared_ptr<const nys::Mesh> coarse;
    std::shared_ptr<const nys::Mesh> refined;
};

MeshPair make_meshes(const geom::SphericalPolygon& polygon, const MeshParams& mp) {
    MeshPair pair;
    pair.coarse = std::make_shared<nys::Mesh>(
        nys::build_mesh(polygon, mp.panels, mp.order, mp.grading));
    pair.refined = std::make_shared<nys::Mesh>(
        nys::build_mesh(polygon, (3 * mp.panels + 1) / 2, mp.order, mp.grading));
    return pair;
}

nys::EigenResult eigs_at(const geom::PolyhedralCone& cone, const MeshPair& meshes,
                         double xi, double alpha, const SweepOptions& opt) {
    nys::AssembleOptions ao;
    ao.kernel_tol = opt.kernel_tol;
    ao.with_gram = false;
    nys::FilterParams fp;
    fp.threshold = filter_threshold(cone.cross_section.angles, alpha,
                                    opt.threshold_mode);
    const auto sys = nys::assemble(meshes.coarse, xi, alpha, ao);
    const auto ref = nys::assemble(meshes.refined, xi, alpha, ao);
    try {
        return nys::isolated_eigenvalues(sys, ref, fp);
    } catch (const NoConvergence&) {
        // one retry at doubled resolution
        MeshParams mp2;
        mp2.panels = 2 * meshes.coarse->panels_per_arc;
        mp2.order = meshes.coarse->gauss_order;
        mp2.grading = meshes.coarse->grading_levels;
        const MeshPair retry = make_meshes(cone.cross_section, mp2);
        const auto sys2 = nys::assemble(retry.coarse, xi, alpha, ao);
        const auto ref2 = nys::assemble(retry.refined, xi, alpha, ao);
        return nys::isolated_eigenvalues(sys2, ref2, fp);
    }
}

} // namespace

std::vector<EigenBranch> sweep_branches(const geom::PolyhedralCone& cone,
                                        double alpha, const SweepOptions& opt,
                                        std::vector<int>* skipped_out) {
    if (!(opt.xi_max > 0)) throw InvalidParams("xi_max must be positive");
    if (opt.xi_steps < 8) throw InvalidParams("xi_steps must be >= 8");

    const MeshPair meshes = make_meshes(cone.cross_section, opt.mesh);
    const double dxi = opt.xi_max / (opt.xi_steps - 1);

    struct Open {
        EigenBranch branch;
        double last_lambda;
        double last_xi;
    };
    std::vector<Open> open;
    std::vector<EigenBranch> closed;

    auto close_branch = [&](Open& o, double next_xi) {
        // bisect toward the termination point for a tighter last sample
        double lo = o.last_xi, hi = next_xi, lam = o.last_lambda;
        for (int it = 0; it < opt.termination_bisections; ++it) {
            const double mid = 0.5 * (lo + hi);
            try {
                const auto r = eigs_at(cone, meshes, mid, alpha, opt);
                double best = 0;
                bool found = false;
                for (double v : r.eigenvalues_filtered) {
                    if (std::abs(v - lam) <= opt.slope_cap * (mid - lo) &&
                        (!found || std::abs(v - lam) < std::abs(best - lam))) {
                        best = v;
                        found = true;
                    }
                }
                if (found) {
                    lo = mid;
                    lam = best;
                    o.branch.samples.emplace_back(mid, best);
                } else {
                    hi = mid;
                }
            } catch (const NoConvergence&) {
                break;
            }
        }
        std::sort(o.branch.samples.begin(), o.branch.samples.end());
        o.branch.terminated_mid_sweep = true;
        o.branch.note = "absorbed into the continuous-spectrum region near xi = " +
                        std::to_string(0.5 * (lo + hi));
        closed.push_back(std::move(o.branch));
    };

    std::vector<int> skipped;
    for (int i = 0; i < opt.xi_steps; ++i) {
        const double xi = i * dxi;
        std::vector<double> lams;
        try {
            const auto r = eigs_at(cone, meshes, xi, alpha, opt);
            lams = r.eigenvalues_filtered;
        } catch (const NoConvergence&) {
            skipped.push_back(i);
            continue;
        }
        std::vector<bool> taken(lams.size(), false);
        std::vector<Open> still_open;
        for (auto& o : open) {
            int best = -1;
            for (std::size_t k = 0; k < lams.size(); ++k) {
                if (taken[k]) continue;
                const double gap = std::abs(lams[k] - o.last_lambda);
                if (gap <= opt.slope_cap * (xi - o.last_xi) + 1e-12 &&
                    (best < 0 ||
                     gap < std::abs(lams[best] - o.last_lambda)))
                    best = static_cast<int>(k);
            }
            if (best >= 0) {
                taken[best] = true;
                o.branch.samples.emplace_back(xi, lams[best]);
                o.last_lambda = lams[best];
                o.last_xi = xi;
                still_open.push_back(std::move(o));
            } else {
                close_branch(o, xi);
            }
        }
        open = std::move(still_open);
        for (std::size_t k = 0; k < lams.size(); ++k) {
            if (taken[k]) continue;
            Open o;
            o.branch.alpha = alpha;
            o.branch.samples.emplace_back(xi, lams[k]);
            o.last_lambda = lams[k];
            o.last_xi = xi;
            open.push_back(std::move(o));
        }
    }
    for (auto& o : open) {
        o.branch.terminated_mid_sweep = false;
        closed.push_back(std::move(o.branch));
    }
    if (skipped_out) *skipped_out = std::move(skipped);
    // deterministic order: by first xi, then by lambda
    std::sort(closed.begin(), closed.end(), [](const auto& a, const auto& b) {
        if (a.samples.empty() || b.samples.empty()) return b.samples.empty();
        if (a.samples[0].first != b.samples[0].first)
            return a.samples[0].first < b.samples[0].first;
        return a.samples[0].second < b.samples[0].second;
    });
    return closed;
}

namespace {

struct MuEstimates {
    std::optional<Estimate> plus, minus;
    std::vector<EigenBranch> branches;
    std::vector<std::string> caveats;
};

// mu+- from the alpha ladder at xi = 0 only (convex shortcut). The second
// ladder value reuses the assembled kernels through the diagonal similarity.
MuEstimates mu_at_zero(const geom::PolyhedralCone& cone, const SweepOptions& opt) {
    MuEstimates out;
    const MeshPair meshes = make_meshes(cone.cross_section, opt.mesh);
    nys::AssembleOptions ao;
    ao.kernel_tol = opt.kernel_tol;
    ao.with_gram = false;
    const auto sys = nys::assemble(meshes.coarse, 0.0, opt.alpha_primary, ao);
    const auto ref = nys::assemble(meshes.refined, 0.0, opt.alpha_primary, ao);
    nys::FilterParams fp1, fp2;
    fp1.threshold = filter_threshold(cone.cross_section.angles, opt.alpha_primary,
                                     opt.threshold_mode);
    fp2.threshold = filter_threshold(cone.cross_section.angles, opt.alpha_check,
                                     opt.threshold_mode);
    const auto r1 = nys::isolated_eigenvalues(sys, ref, fp1);
    const auto r2 = nys::isolated_eigenvalues(nys::reweight(sys, opt.alpha_check),
                                              nys::reweight(ref, opt.alpha_check),
                                              fp2);
    auto top = [](const nys::EigenResult& r) -> std::optional<std::pair<double, double>> {
        std::optional<std::pair<double, double>> best;
        for (std::size_t i = 0; i < r.eigenvalues_filtered.size(); ++i) {
            const double v = r.eigenvalues_filtered[i];
            if (v > 0 && (!best || v > best->first))
                best = {v, r.refinement_agreement[i]};
        }
        return best;
    };
    auto bottom = [](const nys::EigenResult& r) -> std::optional<std::pair<double, double>> {
        std::optional<std::pair<double, double>> best;
        for (std::size_t i = 0; i < r.eigenvalues_filtered.size(); ++i) {
            const double v = r.eigenvalues_filtered[i];
            if (v < 0 && (!best || v < best->first))
                best = {v, r.refinement_agreement[i]};
        }
        return best;
    };
    const auto p1 = top(r1), p2 = top(r2);
    if (p1) {
        const double cross = p2 ? std::abs(p1->first - p2->first) : 0.0;
        out.plus = Estimate{p1->first, std::max({p1->second, cross, 1e-9})};
    }
    const auto n1 = bottom(r1), n2 = bottom(r2);
    if (n1) {
        const double cross = n2 ? std::abs(n1->first - n2->first) : 0.0;
        out.minus = Estimate{-n1->first, std::max({n1->second, cross, 1e-9})};
    }
    for (const auto& r : {r1, r2}) {
        EigenBranch b;
        b.alpha = r.alpha;
        for (double v : r.eigenvalues_filtered) {
            EigenBranch single = b;
            single.samples.emplace_back(0.0, v);
            out.branches.push_back(std::move(single));
        }
    }
    return out;
}

MuEstimates mu_from_sweep(const geom::PolyhedralCone& cone,
                          const SweepOptions& opt) {
    MuEstimates out;
    std::vector<int> skipped;
    for (double alpha : {opt.alpha_primary, opt.alpha_check}) {
        std::vector<int> sk;
        auto branches = sweep_branches(cone, alpha, opt, &sk);
        for (const auto& b : branches) out.branches.push_back(b);
        skipped.insert(skipped.end(), sk.begin(), sk.end());
    }
    if (!skipped.empty())
        out.caveats.push_back(std::to_string(skipped.size()) +
                              " sweep grid point(s) skipped after repeated "
                              "refinement mismatches");
    auto extreme = [&](bool positive, double alpha) -> std::optional<double> {
        std::optional<double> best;
        for (const auto& b : out.branches) {
            if (b.alpha != alpha) continue;
            for (const auto& [xi, v] : b.samples) {
                if (positive && v > 0 && (!best || v > *best)) best = v;
                if (!positive && v < 0 && (!best || v < *best)) best = v;
            }
        }
        return best;
    };
    const auto p1 = extreme(true, opt.alpha_primary),
               p2 = extreme(true, opt.alpha_check);
    if (p1) {
        const double cross = p2 ? std::abs(*p1 - *p2) : 0.0;
        out.plus = Estimate{*p1, std::max(cross, 1e-6)};
    }
    const auto n1 = extreme(false, opt.alpha_primary),
               n2 = extreme(false, opt.alpha_check);
    if (n1) {
        const double cross = n2 ? std::abs(*n1 - *n2) : 0.0;
        out.minus = Estimate{-*n1, std::max(cross, 1e-6)};
    }
    // tail certification at xi_max
    double top_at_end = 0.0;
    for (const auto& b : out.branches)
        for (const auto& [xi, v] : b.samples)
            if (xi >= opt.xi_max - 1e-12) top_at_end = std::max(top_at_end, std::abs(v));
    if (top_at_end > 0)
        out.caveats.push_back(
            "sweep truncated at xi_max with a live eigenvalue branch; "
            "extremal estimates may be understated");
    return out;
}

} // namespace

SpectrumReport cone_energy_spectrum(const geom::PolyhedralCone& cone,
                                    const SweepOptions& opt_in) {
    if (!cone.lipschitz)
        throw NotLipschitz("energy-space theory requires a Lipschitz cone");
    SweepOptions opt = opt_in;
    opt.threshold_mode = ThresholdMode::energy_limit;

    SpectrumReport rep;
    rep.space = Space::energy;
    rep.angles = cone.cross_section.angles;
    const double m = energy_halfwidth(rep.angles);
    rep.essential_core.kind = curves::RegionSet::Kind::interval;
    rep.essential_core.intervals.push_back({-m, m});

    MuEstimates mu;
    if (cone.convex && !opt.force_sweep) {
        mu = mu_at_zero(cone, opt);
        rep.caveats.push_back(
            "convex cone: extremal eigenvalue evaluated at xi = 0 only "
            "(maximum principle for the symbol family)");
    } else {
        mu = mu_from_sweep(cone, opt);
    }
    rep.branches = std::move(mu.branches);
    for (auto& c : mu.caveats) rep.caveats.push_back(std::move(c));
    rep.mu_plus = mu.plus;
    rep.mu_minus = mu.minus;
    if (rep.mu_plus && rep.mu_plus->value > m)
        rep.lambda_star_intervals.push_back({m, rep.mu_plus->value});
    if (rep.mu_minus && rep.mu_minus->value > m)
        rep.lambda_star_intervals.push_back({-rep.mu_minus->value, -m});
    if (!rep.mu_minus)
        rep.caveats.push_back(
            "mu_minus not detected (no negative eigenvalue above the "
            "threshold); whether it vanishes for convex cones is open");
    if (!cone.convex)
        rep.caveats.push_back(
            "Lipschitz flag comes from a sampling test over candidate axes; "
            "it is a heuristic, not a certificate");
    return rep;
}

SpectrumReport cone_weighted_spectrum(const geom::PolyhedralCone& cone,
                                      double alpha, const SweepOptions& opt_in) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw InvalidParams("weighted spectrum needs alpha in [0,1)");
    SweepOptions opt = opt_in;
    opt.threshold_mode = ThresholdMode::working_alpha;
    opt.alpha_primary = alpha;
    opt.alpha_check = alpha; // the working space itself; mu ladder not reused here

    SpectrumReport rep;
    rep.space = Space::weighted;
    rep.alpha = alpha;
    rep.angles = cone.cross_section.angles;

    rep.essential_core.kind = curves::RegionSet::Kind::curve_union;
    for (double beta : rep.angles) {
        if (std::abs(beta - pi) < 1e-12) continue; // flat corner: curve is {0}
        rep.essential_core.curves.push_back(
            curves::sample_curve(alpha, beta, opt.curve_samples));
    }
    const double radius = weighted_radius(rep.angles, alpha);
    rep.essential_core.disk_radius = radius;
    rep.essential_core.intervals.push_back({-radius, radius});

    std::vector<int> skipped;
    auto branches = sweep_branches(cone, alpha, opt, &skipped);
    rep.skipped_xi_indices = skipped;
    if (!skipped.empty())
        rep.caveats.push_back(std::to_string(skipped.size()) +
                              " sweep grid point(s) skipped after repeated "
                              "refinement mismatches");
    std::optional<double> top, bot;
    for (const auto& b : branches)
        for (const auto& [xi, v] : b.samples) {
            if (v > 0 && (!top || v > *top)) top = v;
            if (v < 0 && (!bot || v < *bot)) bot = v;
        }
    rep.branches = std::move(branches);
    if (top) {
        rep.mu_plus = Estimate{*top, 1e-6};
        if (*top > radius) rep.lambda_star_intervals.push_back({radius, *top});
    }
    if (bot) {
        rep.mu_minus = Estimate{-*bot, 1e-6};
        if (-*bot > radius)
            rep.lambda_star_intervals.push_back({*bot, -radius});
    }
    rep.caveats.push_back(
        "between the curve-union set and the disk bracket lies a region of "
        "complex points with uncontrolled resolvent; it is assigned to "
        "neither the spectrum nor its complement");
    return rep;
}

namespace {

std::vector<long long> congruence_key(const geom::PolyhedralCone& cone) {
    std::vector<double> vals;
    for (double b : cone.cross_section.angles) vals.push_back(b);
    std::sort(vals.begin(), vals.end());
    std::vector<double> dists;
    const auto& c = cone.cross_section.corners;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            dists.push_back(std::acos(std::clamp(c[i].dot(c[j]), -1.0, 1.0)));
    std::sort(dists.begin(), dists.end());
    vals.insert(vals.end(), dists.begin(), dists.end());
    std::vector<long long> key;
    key.reserve(vals.size());
    for (double v : vals) key.push_back(std::llround(v * 1e9));
    return key;
}

} // namespace

SpectrumReport polyhedron_essential_spectrum(const geom::Polyhedron& poly,
                                             Space space, double alpha,
                                             const SweepOptions& opt) {
    const auto cones = geom::tangent_cones(poly);
    if (space == Space::energy)
        for (const auto& cone : cones)
            if (!cone.lipschitz)
                throw NotLipschitz(
                    "polyhedron has a non-Lipschitz tangent cone; energy-space "
                    "localization does not apply");

    std::map<std::vector<long long>, SpectrumReport> unique;
    SpectrumReport rep;
    rep.space = space;
    if (space == Space::weighted) rep.alpha = alpha;

    for (std::size_t i = 0; i < cones.size(); ++i) {
        const auto key = congruence_key(cones[i]);
        auto it = unique.find(key);
        if (it == unique.end()) {
            SpectrumReport sub = space == Space::energy
                                     ? cone_energy_spectrum(cones[i], opt)
                                     : cone_weighted_spectrum(cones[i], alpha, opt);
            it = unique.emplace(key, std::move(sub)).first;
        }
        rep.per_vertex.emplace_back(static_cast<int>(i), it->second);
    }

    // the union of the per-cone sets
    double m = 0.0, radius = 0.0;
    std::optional<Estimate> mu_p, mu_m;
    std::set<std::vector<long long>> seen;
    for (const auto& [vid, sub] : rep.per_vertex) {
        for (double b : sub.angles) rep.angles.push_back(b);
        if (space == Space::energy)
            m = std::max(m, energy_halfwidth(sub.angles));
        else
            radius = std::max(radius, *sub.essential_core.disk_radius);
        if (sub.mu_plus && (!mu_p || sub.mu_plus->value > mu_p->value))
            mu_p = sub.mu_plus;
        if (sub.mu_minus && (!mu_m || sub.mu_minus->value > mu_m->value))
            mu_m = sub.mu_minus;
    }
    if (space == Space::energy) {
        rep.essential_core.kind = curves::RegionSet::Kind::interval;
        rep.essential_core.intervals.push_back({-m, m});
        if (mu_p && mu_p->value > m)
            rep.lambda_star_intervals.push_back({m, mu_p->value});
        if (mu_m && mu_m->value > m)
            rep.lambda_star_intervals.push_back({-mu_m->value, -m});
    } else {
        rep.essential_core.kind = curves::RegionSet::Kind::curve_union;
        for (const auto& [vid, sub] : rep.per_vertex) {
            const auto key = congruence_key(cones[vid]);
            if (!seen.insert(key).second) continue;
            for (const auto& c : sub.essential_core.curves)
                rep.essential_core.curves.push_back(c);
        }
        rep.essential_core.disk_radius = radius;
        rep.essential_core.intervals.push_back({-radius, radius});
        if (mu_p && mu_p->value > radius)
            rep.lambda_star_intervals.push_back({radius, mu_p->value});
        if (mu_m && mu_m->value > radius)
            rep.lambda_star_intervals.push_back({-mu_m->value, -radius});
    }
    rep.mu_plus = mu_p;
    rep.mu_minus = mu_m;

    std::set<std::string> caveats;
    for (const auto& [vid, sub] : rep.per_vertex)
        for (const auto& c : sub.caveats) caveats.insert(c);
    caveats.insert(
        "localization onto the bounded polyhedron may in principle carry extra "
        "isolated eigenvalues outside the tangent-cone union; none are computed "
        "here");
    rep.caveats.assign(caveats.begin(), caveats.end());
    return rep;
}

std::complex<double> plasmonic_map(std::complex<double> value, MapDirection dir) {
    const std::complex<double> one(1.0, 0.0);
    if (dir == MapDirection::lambda_to_eps) {
        const std::complex<double> den = 2.0 * value - one;
        if (std::abs(den) < 1e-14)
            throw PoleInput("lambda = 1/2 maps to infinite permittivity");
        return (one + 2.0 * value) / den;
    }
    const std::complex<double> den = 2.0 * (value - one);
    if (std::abs(den) < 2e-14)
        throw PoleInput("eps = 1 maps to infinite spectral parameter");
    return (value + one) / den;
}

} // namespace npspec::spectra
