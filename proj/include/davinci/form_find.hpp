#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "davinci/periodic_pattern.hpp"

namespace davinci {

// Pose of one rigid straight rod: world anchor, unit direction, and the
// fixed arclengths of its four notches. Notch k sits at
// anchor + notch_t[k] * direction.
struct RodPose {
    Eigen::Vector3d anchor = Eigen::Vector3d::Zero();
    Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
    std::array<double, 4> notch_t{0, 1, 2, 3};

    Eigen::Vector3d notch_point(int k) const { return anchor + notch_t[k] * direction; }
};

// Lap joint between a Boundary notch of rod_a and an Interior notch of
// rod_b: the two notch points must coincide laterally and sit exactly
// `separation` apart along the joint normal, boundary side down.
struct JunctionConstraint {
    int rod_a = -1;
    int notch_a = -1;  // 0 or 3
    int rod_b = -1;
    int notch_b = -1;  // 1 or 2
    double separation = 0.0;
    double orientation = 1.0;  // sign fixing the joint normal, frozen at build
};

struct FormFindConfig {
    int max_iterations = 500;
    double residual_tol = 1e-9;   // RMS constraint violation target
    double step_tol = 1e-14;      // minimum accepted step norm
    bool anchor_boundary = true;  // pin outer-ring boundary notch heights to 0
    double parallel_guard = 1e-4; // abort when rod directions are closer than this
    unsigned seed = 0;
    int random_restarts = 0;
};

struct FormFindProblem {
    std::vector<RodPose> initial_poses;
    std::vector<JunctionConstraint> constraints;
    std::vector<std::pair<int, int>> anchors;  // (rod, notch) with height pinned to 0
    FormFindConfig config;

    // Planar layout positions used for elevation profiles.
    std::vector<Eigen::Vector2d> planar_interior_notches;
    Eigen::Vector2d planar_centroid = Eigen::Vector2d::Zero();
};

struct ResidualBreakdown {
    double total = 0.0;                  // RMS over constraints
    std::vector<double> per_constraint;  // violation norms
};

struct Solution {
    std::vector<RodPose> poses;
    double residual = 0.0;   // RMS constraint violation
    double elevation = 0.0;  // max interior notch height above the ground plane
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_history;  // objective RMS per accepted iterate, non-increasing
};

// Builds the flat-start problem from a pattern patch. delta =
// thickness - depth_boundary - depth_interior applies to every
// junction. Throws InvalidDepths on inconsistent depths.
FormFindProblem build_problem(const PatternPatch& patch, double thickness,
                              double depth_boundary, double depth_interior,
                              const FormFindConfig& config = {});

ResidualBreakdown residual(const FormFindProblem& p, const std::vector<RodPose>& poses);

// Damped least-squares from the flat start; deterministic given the
// config. Accepted iterations never increase the residual.
Solution solve(const FormFindProblem& p);

struct GradientCheck {
    double max_rel_error = 0.0;
    int checked = 0;
    int skipped = 0;  // coordinates touching near-parallel junctions
};

// Central-difference check of the analytic objective gradient over a
// seeded random sample of coordinates.
GradientCheck gradient_check(const FormFindProblem& p, const std::vector<RodPose>& poses,
                             double h);

struct ElevationProfile {
    std::vector<std::pair<double, double>> samples;  // (planar radius, height), sorted
    double inner_mean = 0.0;   // mean height of the inner-radius half
    double outer_mean = 0.0;   // mean height of the outer-radius half
    double max_height = 0.0;
};

ElevationProfile elevation_profile(const FormFindProblem& p, const Solution& s);

}  // namespace davinci
