#include <algorithm>
#include <cmath>
#include <complex>

#include <doctest.h>

#include "npspec/geometry.hpp"
#include "npspec/spectra.hpp"
#include "support/fixtures.hpp"
#include "support/test_rng.hpp"

using namespace npspec;
using namespace npspec_test;
using Complex = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;

spectra::SweepOptions light_options() {
    spectra::SweepOptions opt;
    opt.mesh.panels = 8;
    opt.mesh.order = 8;
    opt.mesh.grading = 3;
    opt.xi_max = 4.0;
    opt.xi_steps = 9;
    return opt;
}

spectra::SweepOptions tiny_options() {
    spectra::SweepOptions opt;
    opt.mesh.panels = 6;
    opt.mesh.order = 6;
    opt.mesh.grading = 2;
    opt.xi_max = 3.0;
    opt.xi_steps = 8;
    return opt;
}

bool has_caveat(const spectra::SpectrumReport& rep, const std::string& frag) {
    for (const auto& c : rep.caveats)
        if (c.find(frag) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("plasmonic map") {
    using spectra::MapDirection;
    CHECK(spectra::plasmonic_map({0.0, 0.0}, MapDirection::lambda_to_eps) ==
          Complex(-1.0, 0.0));
    CHECK(spectra::plasmonic_map({0.25, 0.0}, MapDirection::lambda_to_eps).real() ==
          doctest::Approx(-3.0));
    CHECK_THROWS_AS(spectra::plasmonic_map({0.5, 0.0}, MapDirection::lambda_to_eps),
                    PoleInput);
    CHECK_THROWS_AS(spectra::plasmonic_map({1.0, 0.0}, MapDirection::eps_to_lambda),
                    PoleInput);

    for (int i = 0; i < 300; ++i) {
        const Complex lam(npspec_test::uniform(-2, 2), npspec_test::uniform(-2, 2));
        if (std::abs(lam - Complex(0.5, 0.0)) < 1e-3) continue;
        const Complex eps = spectra::plasmonic_map(lam, MapDirection::lambda_to_eps);
        const Complex back = spectra::plasmonic_map(eps, MapDirection::eps_to_lambda);
        CHECK(std::abs(back - lam) < 1e-12 * (1.0 + std::abs(lam)));
        // negative permittivity half-plane corresponds to |lambda| < 1/2
        CHECK((eps.real() < 0) == (std::abs(lam) < 0.5));
    }
}

TEST_CASE("octant energy report") {
    const auto cone = geom::cone_from_edges(octant_edges());
    const auto rep = spectra::cone_energy_spectrum(cone);

    CHECK(rep.space == spectra::Space::energy);
    REQUIRE(rep.essential_core.kind == curves::RegionSet::Kind::interval);
    CHECK(rep.essential_core.intervals[0][0] == -0.25); // exact from the angles
    CHECK(rep.essential_core.intervals[0][1] == 0.25);

    REQUIRE(rep.mu_plus.has_value());
    CHECK(std::abs(rep.mu_plus->value - 0.34726) < 0.010);
    CHECK(rep.mu_plus->uncertainty < 1e-2);
    CHECK(rep.mu_plus->value < 0.5);
    CHECK(rep.mu_plus->value > 0.25);

    REQUIRE(rep.lambda_star_intervals.size() == 1);
    CHECK(rep.lambda_star_intervals[0][0] == 0.25);
    CHECK(rep.lambda_star_intervals[0][1] == doctest::Approx(rep.mu_plus->value));

    CHECK(!rep.mu_minus.has_value());
    CHECK(has_caveat(rep, "convex"));
    CHECK(has_caveat(rep, "mu_minus not detected"));

    // branch samples stay real, inside (-1/2, 1/2), above the threshold
    for (const auto& b : rep.branches)
        for (const auto& [xi, lam] : b.samples) {
            CHECK(std::abs(lam) < 0.5);
            CHECK(std::abs(lam) > 0.25);
        }
}

TEST_CASE("square pyramid energy interval") {
    const auto cone = geom::cone_from_edges(pyramid_edges());
    spectra::SweepOptions opt = light_options();
    const auto rep = spectra::cone_energy_spectrum(cone, opt);
    // m = |1 - (2pi/3)/pi| / 2 = 1/6, exactly
    CHECK(rep.essential_core.intervals[0][0] == doctest::Approx(-1.0 / 6).epsilon(1e-15));
    CHECK(rep.essential_core.intervals[0][1] == doctest::Approx(1.0 / 6).epsilon(1e-15));
}

TEST_CASE("octant sweep: branch decays from its xi = 0 maximum") {
    const auto cone = geom::cone_from_edges(octant_edges());
    spectra::SweepOptions opt = light_options();
    opt.threshold_mode = spectra::ThresholdMode::energy_limit;
    const auto branches = spectra::sweep_branches(cone, 0.9, opt);

    REQUIRE(!branches.empty());
    // locate the branch that starts at xi = 0
    const spectra::EigenBranch* main = nullptr;
    for (const auto& b : branches)
        if (!b.samples.empty() && b.samples.front().first == 0.0)
            main = &b;
    REQUIRE(main != nullptr);
    CHECK(std::abs(main->samples.front().second - 0.34726) < 0.010);

    // convexity: the maximum over the whole sweep is attained at xi = 0
    double global_max = -1.0;
    for (const auto& b : branches)
        for (const auto& [xi, lam] : b.samples) global_max = std::max(global_max, lam);
    CHECK(global_max == doctest::Approx(main->samples.front().second));

    // continuity cap along each branch
    for (const auto& b : branches)
        for (std::size_t k = 0; k + 1 < b.samples.size(); ++k) {
            const double dxi = b.samples[k + 1].first - b.samples[k].first;
            const double dlam =
                std::abs(b.samples[k + 1].second - b.samples[k].second);
            CHECK(dlam <= opt.slope_cap * dxi + 1e-9);
        }

    // the branch dies into the continuous region before xi_max
    CHECK(main->terminated_mid_sweep);
    CHECK(main->samples.back().second > 0.25);
}

TEST_CASE("two-brick touching cone: weighted works, energy refuses") {
    const auto cones = geom::tangent_cones(two_brick());
    const auto& touch = cones[two_brick_touch_vertex()];

    CHECK_THROWS_AS(spectra::cone_energy_spectrum(touch, tiny_options()),
                    NotLipschitz);

    const auto rep = spectra::cone_weighted_spectrum(touch, 0.5, tiny_options());
    CHECK(rep.space == spectra::Space::weighted);
    CHECK(rep.alpha == 0.5);
    REQUIRE(rep.essential_core.kind == curves::RegionSet::Kind::curve_union);
    // flat corners contribute no curve
    CHECK(rep.essential_core.curves.size() == 4);
    REQUIRE(rep.essential_core.disk_radius.has_value());
    const double expected_radius =
        std::max(curves::sigma_max(0.5, pi / 2), curves::sigma_max(0.5, 3 * pi / 2));
    CHECK(*rep.essential_core.disk_radius == doctest::Approx(expected_radius));
    CHECK(has_caveat(rep, "complex"));
}

TEST_CASE("cube energy equals the octant report, at any scale") {
    spectra::SweepOptions opt = light_options();
    const auto cube_rep =
        spectra::polyhedron_essential_spectrum(cube(), spectra::Space::energy, 0.0, opt);
    const auto octant_rep =
        spectra::cone_energy_spectrum(geom::cone_from_edges(octant_edges()), opt);

    REQUIRE(cube_rep.per_vertex.size() == 8);
    CHECK(cube_rep.essential_core.intervals[0][0] == -0.25);
    CHECK(cube_rep.essential_core.intervals[0][1] == 0.25);
    REQUIRE(cube_rep.mu_plus.has_value());
    REQUIRE(octant_rep.mu_plus.has_value());
    CHECK(cube_rep.mu_plus->value ==
          doctest::Approx(octant_rep.mu_plus->value).epsilon(1e-12));
    CHECK(std::abs(cube_rep.mu_plus->value - 0.34726) < 0.010);

    // congruent cones are computed once: all per-vertex reports coincide
    for (const auto& [vid, sub] : cube_rep.per_vertex) {
        REQUIRE(sub.mu_plus.has_value());
        CHECK(sub.mu_plus->value == cube_rep.per_vertex[0].second.mu_plus->value);
    }

    // scale invariance: tangent cones depend only on directions
    const auto scaled =
        spectra::polyhedron_essential_spectrum(cube(3.7), spectra::Space::energy, 0.0, opt);
    CHECK(scaled.mu_plus->value == cube_rep.mu_plus->value);
    CHECK(has_caveat(cube_rep, "localization"));
}

TEST_CASE("union monotonicity: an absorbed extra vertex changes nothing") {
    spectra::SweepOptions opt = light_options();
    auto split = cube();
    // place a vertex in the middle of the edge (0,0,0)-(1,0,0)
    split.vertices.push_back(geom::Vec3(0.5, 0, 0)); // index 8
    split.faces[0] = {0, 3, 2, 1, 8};                // bottom (0,3,2,1)
    split.faces[2] = {0, 8, 1, 5, 4};                // front (0,1,5,4)
    const auto base =
        spectra::polyhedron_essential_spectrum(cube(), spectra::Space::energy, 0.0, opt);
    const auto more =
        spectra::polyhedron_essential_spectrum(split, spectra::Space::energy, 0.0, opt);
    CHECK(more.per_vertex.size() == 9);
    CHECK(more.essential_core.intervals[0][0] == base.essential_core.intervals[0][0]);
    CHECK(more.essential_core.intervals[0][1] == base.essential_core.intervals[0][1]);
    REQUIRE(more.mu_plus.has_value());
    CHECK(more.mu_plus->value == doctest::Approx(base.mu_plus->value).epsilon(1e-12));
    CHECK(more.lambda_star_intervals == base.lambda_star_intervals);
}

TEST_CASE("two-brick polyhedron: energy refused, weighted unions all cones") {
    const auto poly = two_brick();
    CHECK_THROWS_AS(spectra::polyhedron_essential_spectrum(
                        poly, spectra::Space::energy, 0.0, tiny_options()),
                    NotLipschitz);

    const auto rep = spectra::polyhedron_essential_spectrum(
        poly, spectra::Space::weighted, 0.5, tiny_options());
    CHECK(rep.per_vertex.size() == 16);
    REQUIRE(rep.essential_core.disk_radius.has_value());
    CHECK(*rep.essential_core.disk_radius ==
          doctest::Approx(curves::sigma_max(0.5, 3 * pi / 2)));
    CHECK(has_caveat(rep, "complex"));
}
