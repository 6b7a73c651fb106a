#include <doctest.h>

#include <cmath>
#include <random>

#include "davinci/errors.hpp"
#include "davinci/form_find.hpp"
#include "davinci/periodic_pattern.hpp"

using namespace davinci;

namespace {

FormFindProblem pattern01_problem(double thickness, double deep, double shallow,
                                  int rings = 2) {
    const PeriodicPattern* p = find_pattern("pattern-01");
    REQUIRE(p != nullptr);
    FormFindConfig config;
    config.max_iterations = 800;
    config.residual_tol = 1e-9;
    return build_problem(patch(*p, rings), thickness, deep, shallow, config);
}

// Two rods crossing once at right angles; only one junction.
FormFindProblem single_junction_toy(double delta) {
    PatternPatch patch;
    auto add_vertex = [&](double x, double y, int end_rod, int through_rod) {
        PatchVertex v;
        v.xy = {x, y};
        v.end_of_rod = end_rod;
        v.interior_of_rod = through_rod;
        patch.vertices.push_back(v);
        return static_cast<int>(patch.vertices.size()) - 1;
    };
    // Rod 0 runs along x and ends at the junction; rod 1 runs along y
    // and passes through it.
    int j = add_vertex(0, 0, 0, 1);
    int a1 = add_vertex(-1, 0, -1, 0);
    int a2 = add_vertex(-2, 0, -1, 0);
    int a3 = add_vertex(-3, 0, 1, -1);
    int b0 = add_vertex(0, -1, 1, -1);
    int b2 = add_vertex(0, 1, -1, -1);
    int b3 = add_vertex(0, 2, -1, -1);
    PatchRod rod0;
    rod0.vertices = {j, a1, a2, a3};
    rod0.notch_t = {0, 1, 2, 3};
    PatchRod rod1;
    rod1.vertices = {b0, j, b2, b3};
    rod1.notch_t = {0, 1, 2, 3};
    patch.rods = {rod0, rod1};
    FormFindConfig config;
    config.anchor_boundary = false;  // closed-form check without gauge pins
    config.max_iterations = 400;
    config.residual_tol = 1e-12;
    return build_problem(patch, 10.0, (10.0 - delta) / 2.0, (10.0 - delta) / 2.0, config);
}

}  // namespace

TEST_CASE("build_problem separation arithmetic and depth errors") {
    FormFindProblem p = pattern01_problem(10.0, 4.0, 2.0);
    for (const JunctionConstraint& c : p.constraints)
        CHECK(c.separation == doctest::Approx(4.0));

    FormFindProblem flush = pattern01_problem(10.0, 5.0, 5.0);
    for (const JunctionConstraint& c : flush.constraints)
        CHECK(c.separation == doctest::Approx(0.0));

    const PeriodicPattern* pat = find_pattern("pattern-01");
    PatternPatch fragment = patch(*pat, 1);
    CHECK_THROWS_AS(build_problem(fragment, 10.0, 2.0, 4.0, {}), Error);   // deep < shallow
    CHECK_THROWS_AS(build_problem(fragment, 10.0, 8.0, 4.0, {}), Error);   // negative delta
    CHECK_THROWS_AS(build_problem(fragment, 10.0, 4.0, -1.0, {}), Error);  // negative depth
}

TEST_CASE("flat start residuals") {
    FormFindProblem flush = pattern01_problem(10.0, 5.0, 5.0);
    ResidualBreakdown flat = residual(flush, flush.initial_poses);
    CHECK(flat.total == doctest::Approx(0.0).epsilon(1e-12));

    FormFindProblem lifted = pattern01_problem(10.0, 4.0, 2.0);
    ResidualBreakdown start = residual(lifted, lifted.initial_poses);
    for (double v : start.per_constraint) CHECK(v == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(start.total == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("delta = 0 keeps the flat layout") {
    FormFindProblem flush = pattern01_problem(10.0, 5.0, 5.0);
    Solution sol = solve(flush);
    CHECK(sol.converged);
    CHECK(sol.residual <= 1e-9);
    CHECK(sol.elevation <= 1e-9);
}

TEST_CASE("single junction toy matches the analytic offset") {
    double delta = 0.8;
    FormFindProblem toy = single_junction_toy(delta);
    Solution sol = solve(toy);
    CHECK(sol.converged);
    CHECK(sol.residual <= 1e-9);
    // Analytic optimum: the notch points align laterally and sit delta
    // apart along the joint normal.
    const JunctionConstraint& c = toy.constraints[0];
    Eigen::Vector3d pa = sol.poses[c.rod_a].notch_point(c.notch_a);
    Eigen::Vector3d pb = sol.poses[c.rod_b].notch_point(c.notch_b);
    Eigen::Vector3d n = c.orientation * sol.poses[c.rod_a].direction.cross(
                            sol.poses[c.rod_b].direction);
    n.normalize();
    CHECK(std::abs(n.dot(pb - pa) - delta) <= 1e-9);
    CHECK(((pb - pa) - n.dot(pb - pa) * n).norm() <= 1e-9);
}

TEST_CASE("pattern-01 dome rises and converges") {
    FormFindProblem p = pattern01_problem(10.0, 4.0, 2.0);
    Solution sol = solve(p);
    CHECK(sol.converged);
    CHECK(sol.residual <= 1e-6 * 10.0);
    CHECK(sol.elevation > 0.0);

    ElevationProfile profile = elevation_profile(p, sol);
    CHECK(profile.inner_mean > profile.outer_mean);

    // Accepted iterations never increase the residual.
    for (size_t i = 1; i < sol.residual_history.size(); ++i)
        CHECK(sol.residual_history[i] <= sol.residual_history[i - 1] + 1e-12);

    // Rod rigidity: notch spacing is preserved exactly by construction.
    for (size_t r = 0; r < sol.poses.size(); ++r) {
        const RodPose& pose = sol.poses[r];
        CHECK(pose.direction.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                double want = pose.notch_t[j] - pose.notch_t[i];
                double got = (pose.notch_point(j) - pose.notch_point(i)).norm();
                CHECK(got == doctest::Approx(want).epsilon(1e-12));
            }
    }
}

TEST_CASE("elevation grows with delta") {
    FormFindProblem small = pattern01_problem(10.0, 4.0, 3.0);  // delta 3
    FormFindProblem large = pattern01_problem(10.0, 3.0, 2.0);  // delta 5
    Solution ssmall = solve(small);
    Solution slarge = solve(large);
    REQUIRE(ssmall.converged);
    REQUIRE(slarge.converged);
    ElevationProfile psmall = elevation_profile(small, ssmall);
    ElevationProfile plarge = elevation_profile(large, slarge);
    CHECK(plarge.inner_mean > psmall.inner_mean);
    CHECK(slarge.elevation > ssmall.elevation);
}

TEST_CASE("gauge invariance of the residual before anchoring") {
    FormFindProblem toy = single_junction_toy(0.5);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Solution sol = solve(toy);
    double base = residual(toy, sol.poses).total;
    for (int trial = 0; trial < 8; ++trial) {
        double angle = dist(rng) * 3.0;
        Eigen::Vector3d shift{dist(rng) * 5, dist(rng) * 5, 0.0};
        Eigen::AngleAxisd rot(angle, Eigen::Vector3d::UnitZ());
        std::vector<RodPose> moved = sol.poses;
        for (RodPose& pose : moved) {
            pose.anchor = rot * pose.anchor + shift;
            pose.direction = rot * pose.direction;
        }
        CHECK(residual(toy, moved).total == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("gradient check against central differences") {
    FormFindProblem p = pattern01_problem(10.0, 4.0, 2.0);
    GradientCheck at_start = gradient_check(p, p.initial_poses, 1e-6);
    CHECK(at_start.checked > 0);
    CHECK(at_start.max_rel_error <= 1e-5);

    Solution sol = solve(p);
    GradientCheck at_end = gradient_check(p, sol.poses, 1e-6);
    CHECK(at_end.max_rel_error <= 1e-5);
}

TEST_CASE("near-parallel junctions are reported degenerate") {
    FormFindProblem toy = single_junction_toy(0.5);
    std::vector<RodPose> poses = toy.initial_poses;
    poses[1].direction = poses[0].direction;  // force the degenerate corner
    CHECK_THROWS_AS(residual(toy, poses), Error);
    GradientCheck gc = gradient_check(toy, poses, 1e-6);
    CHECK(gc.skipped > 0);
}

TEST_CASE("solve requires at least one constraint") {
    FormFindProblem empty;
    empty.initial_poses.push_back({});
    CHECK_THROWS_AS(solve(empty), Error);
    GradientCheck gc = gradient_check(empty, empty.initial_poses, 1e-6);
    CHECK(gc.max_rel_error == 0.0);
}
